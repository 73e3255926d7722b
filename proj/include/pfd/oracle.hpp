#pragma once

// Reference solvers used to check the distributed run.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pfd/model.hpp"
#include "pfd/runtime.hpp"
#include "pfd/swarm.hpp"

namespace pfd {

struct CentralizedResult {
  AnytimeTrace trace;                       // round/envelopes/scalars are 0
  std::vector<std::vector<double>> fitness;  // per iteration, per particle
  std::vector<double> best_values;          // global-best components by ordinal
};

/// The same GCPSO with all K assignments in one place: fitness is the global
/// cost of each particle in constraint-list order, and every agent component
/// moves through apply_best_info() with the same keyed draws as the
/// distributed run. Only the transport differs.
CentralizedResult centralized_gcpso(const Problem& problem, const SwarmParams& params, int iterations,
                                    const RunOptions& options = {});

struct GridSpec {
  std::size_t points_per_dim = 11;
  std::uint64_t cap = 10'000'000;
};

struct GridResult {
  Assignment assignment;
  std::vector<double> values;  // by ordinal
  double cost = 0.0;
};

/// Evenly spaced grid per domain (endpoints exact), enumerated with agent
/// ordinal 0 most significant. Returns the first minimizer in that order.
/// Throws Error if points_per_dim < 2 or the grid exceeds the cap.
GridResult grid_search(const Problem& problem, const GridSpec& grid);

}  // namespace pfd
