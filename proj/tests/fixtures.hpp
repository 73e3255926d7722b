#pragma once

#include <string>
#include <vector>

#include "pfd/generator.hpp"
#include "pfd/model.hpp"
#include "pfd/runtime.hpp"

namespace fixtures {

// Four agents on [-10, 10]: x1 is linked to x2, x3, x4 and x3 to x4.
inline pfd::Problem four_agents() {
  std::vector<pfd::AgentSpec> agents;
  for (const char* id : {"x1", "x2", "x3", "x4"}) agents.push_back({id, {-10.0, 10.0}});
  return pfd::Problem(agents, {{"x1", "x2", {1, 0, -1}},
                               {"x1", "x3", {1, 2, 0}},
                               {"x1", "x4", {2, 0, -2}},
                               {"x3", "x4", {1, 0, 3}}});
}

// P1 = (-1, 0, 2, 9.5), P2 = (3.5, 4.9, 1, 0), by ordinal then particle.
inline pfd::InitialPositions example_particles() { return {{-1.0, 3.5}, {0.0, 4.9}, {2.0, 1.0}, {9.5, 0.0}}; }

inline pfd::Problem path(int n) {
  std::vector<pfd::AgentSpec> agents;
  std::vector<pfd::ConstraintSpec> cons;
  for (int i = 1; i <= n; ++i) agents.push_back({"x" + std::to_string(i), {-5.0, 5.0}});
  for (int i = 1; i < n; ++i) cons.push_back({"x" + std::to_string(i), "x" + std::to_string(i + 1), {1, 1, 1}});
  return pfd::Problem(agents, cons);
}

inline pfd::Problem single() { return pfd::Problem({{"solo", {-1.0, 1.0}}}, {}); }

inline pfd::GenSpec mixed_spec(int k) {
  pfd::GenSpec g;
  g.topology = static_cast<pfd::Topology>(k % 3);
  g.agents = 5 + static_cast<std::uint32_t>(k % 11);
  g.edge_probability = 0.3;
  g.attachment = 2;
  g.seed = 1000 + static_cast<std::uint64_t>(k);
  return g;
}

}  // namespace fixtures
