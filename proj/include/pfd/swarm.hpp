#pragma once

// Per-agent particle components and the GCPSO bookkeeping around them.
//
// Each agent owns component i of all K particles. The root turns the summed
// fitness of iteration t into a BestInfo verdict; every agent applies that
// verdict with apply_best_info(), which is the only place positions move.
// The distributed runtime and the centralized oracle both go through it.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "pfd/kernels.hpp"
#include "pfd/model.hpp"
#include "pfd/update_rules.hpp"

namespace pfd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct SwarmParams {
  std::size_t particles = 2000;
  double w = 0.9;
  double c1 = 0.9;
  double c2 = 0.1;
  int max_sc = 15;
  int max_fc = 5;
  bool clamp_velocity = false;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Root verdict for iteration t. Carries fitness scalars and flags only; no
/// agent ever sees another agent's position components.
struct BestInfo {
  int iteration = 0;
  std::vector<std::uint8_t> improved;  // personal best of particle k replaced at t
  std::vector<double> pbest_fitness;
  std::size_t gbest_index = 0;
  double gbest_fitness = kInfinity;
  bool gbest_changed = false;

  /// Scalars on the wire: K flags, K fitness values, index, fitness, changed.
  std::size_t payload_scalars() const noexcept { return improved.size() + pbest_fitness.size() + 3; }
};

struct AgentSwarmState {
  std::vector<double> position;  // components awaiting (or just given) a verdict
  std::vector<double> velocity;
  std::vector<double> pbest_component;
  double gbest_component = 0.0;
  std::size_t gbest_index = 0;
  double rho = 1.0;
  int s_c = 0;
  int f_c = 0;
  // Verdict of the previous iteration, for the success counter.
  int last_iteration = -1;
  std::size_t last_gbest_index = 0;
  double last_gbest_fitness = kInfinity;
};

/// Zero velocities and uniform positions on the domain, drawn from the
/// (seed, agent, k, 0, init_position) blocks.
std::pair<std::vector<double>, std::vector<double>> init_components(std::size_t particles,
                                                                     const ContinuousDomain& domain,
                                                                     std::uint64_t seed, AgentIndex agent,
                                                                     const kernels::KernelTable& kt);

AgentSwarmState make_agent_state(std::vector<double> positions, std::vector<double> velocities);

/// Step-size controller: 1 at t = 0, doubled after more than max_sc
/// consecutive successes, halved after more than max_fc consecutive failures.
constexpr double rho_update(double rho, int s_c, int f_c, int max_sc, int max_fc, int t) noexcept {
  if (t == 0) return 1.0;
  if (s_c > max_sc) return 2.0 * rho;
  if (f_c > max_fc) return 0.5 * rho;
  return rho;
}

/// Success: the previous global-best particle beat the previous global best.
/// Failure: the global best did not change.
std::pair<int, int> counters_update(int s_c, int f_c, const BestInfo& best, std::size_t prev_gbest_index,
                                    double prev_gbest_fitness);

/// Folds iteration-t fitness into the personal and global bests. Strict "<"
/// throughout; the incumbent keeps ties and the lowest index wins among equal
/// improvers.
BestInfo root_update(std::span<const double> fitness, std::span<const double> pbest_fitness, double gbest_fitness,
                     std::size_t gbest_index, int t);

/// Applies verdict `best` to one agent's components: refreshes the personal
/// and global best components, updates s_c/f_c and rho, then moves every
/// particle (the global best by velocity_gbest, the rest by
/// velocity_standard) and clamps into the domain.
void apply_best_info(AgentSwarmState& state, const BestInfo& best, const ContinuousDomain& domain,
                     const SwarmParams& params, AgentIndex agent, const kernels::KernelTable& kt);

}  // namespace pfd
