#pragma once

// Scalar GCPSO update formulas. These are the reference the vector kernels
// are tested against, so the association order of every expression is part
// of the contract.

namespace pfd {

/// max/min with the operand order of x86 maxpd/minpd: ties (including
/// signed zeros) return the bound.
constexpr double clamp_to(double x, double lo, double hi) noexcept {
  const double above = x > lo ? x : lo;
  return above < hi ? above : hi;
}

/// Velocity of every particle except the global best:
/// w*v + r1*c1*(pbest - x) + r2*c2*(gbest - x)
constexpr double velocity_standard(double v, double x, double pbest_c, double gbest_c, double w, double c1,
                                   double c2, double r1, double r2) noexcept {
  return (w * v + (r1 * c1) * (pbest_c - x)) + (r2 * c2) * (gbest_c - x);
}

/// Velocity of the global-best particle: moves to the best and perturbs by
/// up to rho. -x + gbest + w*v + rho*(1 - 2*r2)
constexpr double velocity_gbest(double v, double x, double gbest_c, double w, double rho, double r2) noexcept {
  return ((-x + gbest_c) + w * v) + rho * (1.0 - 2.0 * r2);
}

/// x + v clamped back into [lower, upper].
constexpr double position_update(double x, double v_new, double lower, double upper) noexcept {
  return clamp_to(x + v_new, lower, upper);
}

}  // namespace pfd
