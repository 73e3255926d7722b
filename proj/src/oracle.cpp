#include "pfd/oracle.hpp"

#include <string>

namespace pfd {

CentralizedResult centralized_gcpso(const Problem& problem, const SwarmParams& params, int iterations,
                                    const RunOptions& options) {
  params.validate();
  if (iterations < 1) throw Error("iterations must be at least 1");
  const auto& kt = options.kernels ? *options.kernels : kernels::active();
  const auto K = params.particles;
  const auto n = problem.size();

  std::vector<AgentSwarmState> agents;
  agents.reserve(n);
  for (AgentIndex i = 0; i < n; ++i) {
    if (options.initial_positions) {
      agents.push_back(make_agent_state(options.initial_positions->at(i), std::vector<double>(K, 0.0)));
    } else {
      auto [x, v] = init_components(K, problem.agent(i).domain, params.seed, i, kt);
      agents.push_back(make_agent_state(std::move(x), std::move(v)));
    }
  }

  CentralizedResult out;
  std::vector<double> pbest(K, kInfinity);
  double gbest = kInfinity;
  std::size_t gbest_index = 0;
  std::vector<double> edge(K);
  for (int t = 0; t < iterations; ++t) {
    std::vector<double> fitness(K, 0.0);
    for (const auto& c : problem.constraints()) {
      kernels::edge_costs(kt, c.cost, agents[c.first].position, agents[c.second].position, edge);
      kernels::accumulate(kt, fitness, edge);
    }
    const auto best = root_update(fitness, pbest, gbest, gbest_index, t);
    pbest = best.pbest_fitness;
    gbest = best.gbest_fitness;
    gbest_index = best.gbest_index;
    for (AgentIndex i = 0; i < n; ++i) apply_best_info(agents[i], best, problem.agent(i).domain, params, i, kt);
    out.trace.push_back({t + 1, 0, gbest, 0, 0});
    out.fitness.push_back(std::move(fitness));
  }
  for (const auto& a : agents) out.best_values.push_back(a.gbest_component);
  return out;
}

GridResult grid_search(const Problem& problem, const GridSpec& grid) {
  const auto p = grid.points_per_dim;
  if (p < 2) throw Error("grid needs at least 2 points per dimension");
  const auto n = problem.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > grid.cap / p) throw Error("grid of " + std::to_string(p) + "^" + std::to_string(n) +
                                          " points exceeds the cap of " + std::to_string(grid.cap));
    total *= p;
  }

  std::vector<std::vector<double>> axis(n);
  for (AgentIndex i = 0; i < n; ++i) {
    const auto& d = problem.agent(i).domain;
    const double step = d.width() / static_cast<double>(p - 1);
    for (std::size_t k = 0; k < p; ++k) axis[i].push_back(k + 1 == p ? d.upper : d.lower + static_cast<double>(k) * step);
  }

  std::vector<std::size_t> digit(n, 0);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = axis[i][0];
  GridResult best{{}, values, global_cost(problem, values)};
  for (std::uint64_t visited = 1; visited < total; ++visited) {
    // Odometer with the last ordinal fastest.
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < p) {
        values[i] = axis[i][digit[i]];
        break;
      }
      digit[i] = 0;
      values[i] = axis[i][0];
    }
    const double cost = global_cost(problem, values);
    if (cost < best.cost) {
      best.cost = cost;
      best.values = values;
    }
  }
  best.assignment = to_assignment(problem, best.values);
  return best;
}

}  // namespace pfd
