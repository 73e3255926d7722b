// NEON variants (AArch64 only; Advanced SIMD is baseline there). The Philox
// draws stay scalar on this target.

#include "pfd/kernels.hpp"
#include "pfd/update_rules.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace pfd::kernels {

#if defined(__aarch64__)

namespace {

void edge_costs_neon(const QuadraticCost& cost, const double* xi, const double* xj, double* out, std::size_t n) {
  const float64x2_t a = vdupq_n_f64(cost.a);
  const float64x2_t b = vdupq_n_f64(cost.b);
  const float64x2_t c = vdupq_n_f64(cost.c);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t u = vld1q_f64(xi + k);
    const float64x2_t w = vld1q_f64(xj + k);
    const float64x2_t uu = vmulq_f64(vmulq_f64(a, u), u);
    const float64x2_t uw = vmulq_f64(vmulq_f64(b, u), w);
    const float64x2_t ww = vmulq_f64(vmulq_f64(c, w), w);
    vst1q_f64(out + k, vaddq_f64(vaddq_f64(uu, uw), ww));
  }
  for (; k < n; ++k) out[k] = evaluate_edge(cost, xi[k], xj[k]);
}

void accumulate_neon(double* acc, const double* in, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) vst1q_f64(acc + k, vaddq_f64(vld1q_f64(acc + k), vld1q_f64(in + k)));
  for (; k < n; ++k) acc[k] += in[k];
}

// Select form keeps the tie behaviour of clamp_to (vmaxq treats -0 < +0).
inline float64x2_t clamp_neon(float64x2_t x, float64x2_t lo, float64x2_t hi) {
  const float64x2_t above = vbslq_f64(vcgtq_f64(x, lo), x, lo);
  return vbslq_f64(vcltq_f64(above, hi), above, hi);
}

void standard_step_neon(const StepParams& p, double* x, double* v, const double* pbest, const double* r1,
                        const double* r2, std::size_t n) {
  const float64x2_t w = vdupq_n_f64(p.w);
  const float64x2_t c1 = vdupq_n_f64(p.c1);
  const float64x2_t c2 = vdupq_n_f64(p.c2);
  const float64x2_t g = vdupq_n_f64(p.gbest);
  const float64x2_t lo = vdupq_n_f64(p.lower);
  const float64x2_t hi = vdupq_n_f64(p.upper);
  const float64x2_t vlo = vdupq_n_f64(-p.vmax);
  const float64x2_t vhi = vdupq_n_f64(p.vmax);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t xk = vld1q_f64(x + k);
    const float64x2_t vk = vld1q_f64(v + k);
    const float64x2_t cognitive = vmulq_f64(vmulq_f64(vld1q_f64(r1 + k), c1), vsubq_f64(vld1q_f64(pbest + k), xk));
    const float64x2_t social = vmulq_f64(vmulq_f64(vld1q_f64(r2 + k), c2), vsubq_f64(g, xk));
    float64x2_t vn = vaddq_f64(vaddq_f64(vmulq_f64(w, vk), cognitive), social);
    if (p.clamp_velocity) vn = clamp_neon(vn, vlo, vhi);
    vst1q_f64(v + k, vn);
    vst1q_f64(x + k, clamp_neon(vaddq_f64(xk, vn), lo, hi));
  }
  for (; k < n; ++k) {
    double vk = velocity_standard(v[k], x[k], pbest[k], p.gbest, p.w, p.c1, p.c2, r1[k], r2[k]);
    if (p.clamp_velocity) vk = clamp_to(vk, -p.vmax, p.vmax);
    v[k] = vk;
    x[k] = position_update(x[k], vk, p.lower, p.upper);
  }
}

}  // namespace

const KernelTable* detail::neon_table() noexcept {
  static const KernelTable table{Isa::neon, edge_costs_neon, accumulate_neon, scalar_table().unit_pairs,
                                 standard_step_neon};
  return &table;
}

#else

const KernelTable* detail::neon_table() noexcept { return nullptr; }

#endif

}  // namespace pfd::kernels
