#include "pfd/kernels.hpp"
#include "pfd/update_rules.hpp"

namespace pfd::kernels {

namespace {

void edge_costs_scalar(const QuadraticCost& cost, const double* xi, const double* xj, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = evaluate_edge(cost, xi[k], xj[k]);
}

void accumulate_scalar(double* acc, const double* in, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) acc[k] += in[k];
}

void unit_pairs_scalar(const DrawKey& key, std::uint32_t first, double* a, double* b, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const auto u = rng::swarm_units(key.seed, key.agent, first + static_cast<std::uint32_t>(k), key.iteration,
                                    key.purpose);
    a[k] = u.a;
    b[k] = u.b;
  }
}

void standard_step_scalar(const StepParams& p, double* x, double* v, const double* pbest, const double* r1,
                          const double* r2, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    double vk = velocity_standard(v[k], x[k], pbest[k], p.gbest, p.w, p.c1, p.c2, r1[k], r2[k]);
    if (p.clamp_velocity) vk = clamp_to(vk, -p.vmax, p.vmax);
    v[k] = vk;
    x[k] = position_update(x[k], vk, p.lower, p.upper);
  }
}

constexpr KernelTable kScalar{Isa::scalar, edge_costs_scalar, accumulate_scalar, unit_pairs_scalar,
                              standard_step_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace pfd::kernels
