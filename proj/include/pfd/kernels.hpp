#pragma once

// Particle-wide inner loops. Each kernel exists as a scalar reference and,
// where the target supports it, an AVX2 or NEON variant. All variants use
// the same operation order without fused multiply-add, so their results are
// bit-identical to the scalar path; the equivalence tests assert exactly that.
//
// active() picks the widest variant the running CPU supports. Setting the
// environment variable PFD_KERNELS=scalar|avx2|neon forces a choice.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pfd/model.hpp"
#include "pfd/rng.hpp"

namespace pfd::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view name(Isa isa) noexcept;

/// Draw block address shared by a run of consecutive particles.
struct DrawKey {
  std::uint64_t seed = 0;
  std::uint32_t agent = 0;
  std::uint32_t iteration = 0;
  rng::Purpose purpose = rng::Purpose::velocity;
};

/// Coefficients of the non-best particle update for one agent.
struct StepParams {
  double w = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double gbest = 0.0;  // this agent's component of the global best
  double lower = 0.0;
  double upper = 0.0;
  bool clamp_velocity = false;
  double vmax = 0.0;  // used when clamp_velocity
};

struct KernelTable {
  Isa isa;
  /// out[k] = evaluate_edge(cost, xi[k], xj[k])
  void (*edge_costs)(const QuadraticCost& cost, const double* xi, const double* xj, double* out, std::size_t n);
  /// acc[k] += in[k]
  void (*accumulate)(double* acc, const double* in, std::size_t n);
  /// a[k], b[k] = unit pair of block {agent, first + k, iteration, purpose}
  void (*unit_pairs)(const DrawKey& key, std::uint32_t first, double* a, double* b, std::size_t n);
  /// v[k] = velocity_standard(...), optionally clamped to +-vmax;
  /// x[k] = position_update(x[k], v[k], lower, upper)
  void (*standard_step)(const StepParams& p, double* x, double* v, const double* pbest, const double* r1,
                        const double* r2, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
/// Variants compiled into this binary and supported by the running CPU.
std::vector<const KernelTable*> available();
const KernelTable* find(Isa isa);
const KernelTable& active();

// Span front-ends. Sizes must agree; checked in debug builds only.
inline void edge_costs(const KernelTable& t, const QuadraticCost& cost, std::span<const double> xi,
                       std::span<const double> xj, std::span<double> out) {
  t.edge_costs(cost, xi.data(), xj.data(), out.data(), out.size());
}
inline void accumulate(const KernelTable& t, std::span<double> acc, std::span<const double> in) {
  t.accumulate(acc.data(), in.data(), acc.size());
}
inline void unit_pairs(const KernelTable& t, const DrawKey& key, std::span<double> a, std::span<double> b) {
  t.unit_pairs(key, 0, a.data(), b.data(), a.size());
}
inline void standard_step(const KernelTable& t, const StepParams& p, std::span<double> x, std::span<double> v,
                          std::span<const double> pbest, std::span<const double> r1, std::span<const double> r2) {
  t.standard_step(p, x.data(), v.data(), pbest.data(), r1.data(), r2.data(), x.size());
}

namespace detail {
// Implemented per ISA; a null table means "not compiled for this target".
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;
bool avx2_supported() noexcept;
}  // namespace detail

}  // namespace pfd::kernels
