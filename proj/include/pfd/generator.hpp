#pragma once

// Seeded random F-DCOP instances in the three experimental topologies.

#include <cstdint>
#include <string>
#include <string_view>

#include "pfd/model.hpp"

namespace pfd {

enum class Topology { erdos_renyi, scale_free, random_tree };

/// Short name used in file names and on the command line: er, sf, tree.
std::string_view short_name(Topology t) noexcept;
/// Accepts short names and the long forms erdos_renyi, scale_free, random_tree.
Topology parse_topology(std::string_view name);

struct GenSpec {
  Topology topology = Topology::erdos_renyi;
  double edge_probability = 0.2;  // erdos_renyi
  std::uint32_t attachment = 2;   // scale_free
  std::uint32_t agents = 10;
  double coeff_lo = -5.0;
  double coeff_hi = 5.0;
  ContinuousDomain domain{-50.0, 50.0};
  std::uint64_t seed = 0;

  /// Throws Error for infeasible parameters.
  void validate() const;
};

/// Connected problem with agents x1..xn. Deterministic in `spec`.
///
/// erdos_renyi: every pair (i < j) is drawn with probability p in row-major
///   order; the whole graph is redrawn until connected.
/// scale_free: a clique over the first m nodes, then each new node attaches
///   to m distinct existing nodes sampled without replacement, proportional
///   to degree (uniform while all degrees are zero). Edge count
///   m(m-1)/2 + m(n-m).
/// random_tree: decode of a uniform random Pruefer sequence.
///
/// Edges are sorted by (i, j) with i < j in generation index; the scope is
/// (x_{i+1}, x_{j+1}) and (a, b, c) are then drawn per edge in that order.
Problem generate(const GenSpec& spec);

}  // namespace pfd
