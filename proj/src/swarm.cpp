#include "pfd/swarm.hpp"

#include <cmath>
#include <string>

namespace pfd {

void SwarmParams::validate() const {
  if (particles < 1) throw Error("particle count must be at least 1");
  if (!(w >= 0.0) || !(c1 >= 0.0) || !(c2 >= 0.0) || !std::isfinite(w) || !std::isfinite(c1) || !std::isfinite(c2))
    throw Error("w, c1 and c2 must be finite and non-negative");
  if (max_sc < 1 || max_fc < 1) throw Error("max_sc and max_fc must be at least 1");
  if (particles > std::numeric_limits<std::uint32_t>::max()) throw Error("too many particles");
}

std::pair<std::vector<double>, std::vector<double>> init_components(std::size_t particles,
                                                                     const ContinuousDomain& domain,
                                                                     std::uint64_t seed, AgentIndex agent,
                                                                     const kernels::KernelTable& kt) {
  std::vector<double> positions(particles), spare(particles);
  kernels::unit_pairs(kt, {seed, agent, 0, rng::Purpose::init_position}, positions, spare);
  for (auto& x : positions) x = domain.lower + x * domain.width();
  return {std::move(positions), std::vector<double>(particles, 0.0)};
}

AgentSwarmState make_agent_state(std::vector<double> positions, std::vector<double> velocities) {
  AgentSwarmState s;
  s.pbest_component = positions;
  s.position = std::move(positions);
  s.velocity = std::move(velocities);
  return s;
}

std::pair<int, int> counters_update(int s_c, int f_c, const BestInfo& best, std::size_t prev_gbest_index,
                                    double prev_gbest_fitness) {
  const bool success = best.pbest_fitness.at(prev_gbest_index) < prev_gbest_fitness;
  return {success ? s_c + 1 : 0, best.gbest_changed ? 0 : f_c + 1};
}

BestInfo root_update(std::span<const double> fitness, std::span<const double> pbest_fitness, double gbest_fitness,
                     std::size_t gbest_index, int t) {
  BestInfo out;
  out.iteration = t;
  out.improved.assign(fitness.size(), 0);
  out.pbest_fitness.assign(pbest_fitness.begin(), pbest_fitness.end());
  out.gbest_index = gbest_index;
  out.gbest_fitness = gbest_fitness;
  for (std::size_t k = 0; k < fitness.size(); ++k) {
    if (fitness[k] < out.pbest_fitness[k]) {
      out.pbest_fitness[k] = fitness[k];
      out.improved[k] = 1;
    }
    if (fitness[k] < out.gbest_fitness) {
      out.gbest_fitness = fitness[k];
      out.gbest_index = k;
      out.gbest_changed = true;
    }
  }
  return out;
}

void apply_best_info(AgentSwarmState& s, const BestInfo& best, const ContinuousDomain& domain,
                     const SwarmParams& params, AgentIndex agent, const kernels::KernelTable& kt) {
  const auto K = s.position.size();
  for (std::size_t k = 0; k < K; ++k)
    if (best.improved[k]) s.pbest_component[k] = s.position[k];
  s.gbest_index = best.gbest_index;
  s.gbest_component = s.pbest_component[s.gbest_index];

  if (best.iteration == 0) {
    s.s_c = 0;
    s.f_c = 0;
  } else {
    std::tie(s.s_c, s.f_c) = counters_update(s.s_c, s.f_c, best, s.last_gbest_index, s.last_gbest_fitness);
  }
  s.rho = rho_update(s.rho, s.s_c, s.f_c, params.max_sc, params.max_fc, best.iteration);

  std::vector<double> r1(K), r2(K);
  kernels::unit_pairs(kt, {params.seed, agent, static_cast<std::uint32_t>(best.iteration), rng::Purpose::velocity},
                      r1, r2);

  const auto g = s.gbest_index;
  const double x_g = s.position[g];
  const double v_g = s.velocity[g];
  const double vmax = domain.width();

  kernels::StepParams step{params.w, params.c1, params.c2, s.gbest_component, domain.lower, domain.upper,
                           params.clamp_velocity, vmax};
  kernels::standard_step(kt, step, s.position, s.velocity, s.pbest_component, r1, r2);

  // The global-best particle is overwritten from its pre-step state.
  double v_new = velocity_gbest(v_g, x_g, s.gbest_component, params.w, s.rho, r2[g]);
  if (params.clamp_velocity) v_new = clamp_to(v_new, -vmax, vmax);
  s.velocity[g] = v_new;
  s.position[g] = position_update(x_g, v_new, domain.lower, domain.upper);

  s.last_iteration = best.iteration;
  s.last_gbest_index = best.gbest_index;
  s.last_gbest_fitness = best.gbest_fitness;
}

}  // namespace pfd
