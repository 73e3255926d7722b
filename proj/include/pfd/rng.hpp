#pragma once

// Counter-based random streams (Philox4x32-10, Salmon et al., SC'11).
//
// Every random value in the solver is a pure function of a 128-bit counter
// and a 64-bit key, so the distributed run and the centralized oracle can
// draw the same numbers without sharing a generator:
//
//   key     = {seed & 0xffffffff, seed >> 32}
//   counter = {agent ordinal, particle index, iteration, purpose}
//
// One block yields two 64-bit words, A = w1:w0 and B = w3:w2. A word becomes
// a unit double from its top 53 bits: (word >> 11) * 2^-53, in [0, 1).

#include <array>
#include <cstdint>
#include <limits>

namespace pfd::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

constexpr Counter philox4x32_10(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

constexpr Key key_from_seed(std::uint64_t seed) noexcept {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

/// Top 53 bits of hi:lo as a double in [0, 1). Exact: hi*2^21 + (lo>>11) < 2^53.
constexpr double unit_from_words(std::uint32_t lo, std::uint32_t hi) noexcept {
  return (static_cast<double>(hi) * 0x1p21 + static_cast<double>(lo >> 11)) * 0x1p-53;
}

constexpr std::uint64_t word_a(const Counter& block) noexcept {
  return (std::uint64_t{block[1]} << 32) | block[0];
}
constexpr std::uint64_t word_b(const Counter& block) noexcept {
  return (std::uint64_t{block[3]} << 32) | block[2];
}

/// Counter word 3 of a swarm draw.
enum class Purpose : std::uint32_t {
  init_position = 0,  // A -> initial position
  velocity = 1,       // A -> r1, B -> r2
};

/// Both unit draws of the block keyed by (seed, agent, particle, iteration, purpose).
struct UnitPair {
  double a;
  double b;
};

constexpr UnitPair swarm_units(std::uint64_t seed, std::uint32_t agent, std::uint32_t particle,
                               std::uint32_t iteration, Purpose purpose) noexcept {
  const auto block = philox4x32_10({agent, particle, iteration, static_cast<std::uint32_t>(purpose)},
                                   key_from_seed(seed));
  return {unit_from_words(block[0], block[1]), unit_from_words(block[2], block[3])};
}

/// Sequential 64-bit engine over one Philox stream, for the instance
/// generators. Block n of stream s uses counter {n_lo, n_hi, s, 0x47454e00}
/// and yields A then B. Satisfies UniformRandomBitGenerator, but callers
/// convert with the helpers below rather than std distributions, whose
/// output is not specified across standard libraries.
class PhiloxEngine {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint32_t kStreamTag = 0x47454e00;

  explicit PhiloxEngine(std::uint64_t seed, std::uint32_t stream = 0) noexcept
      : key_(key_from_seed(seed)), stream_(stream) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1).
  double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1p-53; }
  /// Uniform double in [lo, hi].
  double uniform(double lo, double hi) noexcept { return lo + unit() * (hi - lo); }
  /// Uniform integer in [0, bound) by 64x64 multiply-high. bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  Key key_;
  std::uint32_t stream_;
  std::uint64_t block_ = 0;
  std::uint64_t spare_ = 0;
  bool has_spare_ = false;
};

/// Seed of instance `k` in a batch generated from `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k) noexcept;

}  // namespace pfd::rng
