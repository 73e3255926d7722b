// AVX2 variants, compiled with per-function target attributes so the rest of
// the binary stays baseline x86-64. No FMA: results must match scalar.

#include "pfd/kernels.hpp"
#include "pfd/update_rules.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define PFD_HAVE_AVX2_KERNELS 1
#endif

namespace pfd::kernels {

#if PFD_HAVE_AVX2_KERNELS

namespace {

#define PFD_AVX2 __attribute__((target("avx2")))

PFD_AVX2 void edge_costs_avx2(const QuadraticCost& cost, const double* xi, const double* xj, double* out,
                              std::size_t n) {
  const __m256d a = _mm256_set1_pd(cost.a);
  const __m256d b = _mm256_set1_pd(cost.b);
  const __m256d c = _mm256_set1_pd(cost.c);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d u = _mm256_loadu_pd(xi + k);
    const __m256d w = _mm256_loadu_pd(xj + k);
    const __m256d uu = _mm256_mul_pd(_mm256_mul_pd(a, u), u);
    const __m256d uw = _mm256_mul_pd(_mm256_mul_pd(b, u), w);
    const __m256d ww = _mm256_mul_pd(_mm256_mul_pd(c, w), w);
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_add_pd(uu, uw), ww));
  }
  for (; k < n; ++k) out[k] = evaluate_edge(cost, xi[k], xj[k]);
}

PFD_AVX2 void accumulate_avx2(double* acc, const double* in, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4)
    _mm256_storeu_pd(acc + k, _mm256_add_pd(_mm256_loadu_pd(acc + k), _mm256_loadu_pd(in + k)));
  for (; k < n; ++k) acc[k] += in[k];
}

// u32 held in the low half of each 64-bit lane -> exact double.
PFD_AVX2 inline __m256d u32_to_pd(__m256i v) {
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v, magic)), _mm256_set1_pd(0x1p52));
}

PFD_AVX2 inline __m256d unit_from_lanes(__m256i lo, __m256i hi) {
  const __m256d d_hi = u32_to_pd(hi);
  const __m256d d_lo = u32_to_pd(_mm256_srli_epi64(lo, 11));
  return _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(d_hi, _mm256_set1_pd(0x1p21)), d_lo), _mm256_set1_pd(0x1p-53));
}

// Four Philox4x32-10 blocks at once; lane j handles particle first + k + j.
PFD_AVX2 void unit_pairs_avx2(const DrawKey& key, std::uint32_t first, double* a, double* b, std::size_t n) {
  const __m256i low32 = _mm256_set1_epi64x(0xffffffffLL);
  const __m256i m0 = _mm256_set1_epi64x(rng::kPhiloxM0);
  const __m256i m1 = _mm256_set1_epi64x(rng::kPhiloxM1);
  const auto seed_key = rng::key_from_seed(key.seed);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const auto base = static_cast<long long>(first + static_cast<std::uint32_t>(k));
    __m256i c0 = _mm256_set1_epi64x(key.agent);
    __m256i c1 = _mm256_and_si256(_mm256_add_epi64(_mm256_set1_epi64x(base), _mm256_setr_epi64x(0, 1, 2, 3)), low32);
    __m256i c2 = _mm256_set1_epi64x(key.iteration);
    __m256i c3 = _mm256_set1_epi64x(static_cast<std::uint32_t>(key.purpose));
    std::uint32_t k0 = seed_key[0], k1 = seed_key[1];
    for (int round = 0; round < 10; ++round) {
      const __m256i p0 = _mm256_mul_epu32(m0, c0);
      const __m256i p1 = _mm256_mul_epu32(m1, c2);
      const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p1, 32), c1), _mm256_set1_epi64x(k0));
      const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p0, 32), c3), _mm256_set1_epi64x(k1));
      c0 = n0;
      c1 = _mm256_and_si256(p1, low32);
      c2 = n2;
      c3 = _mm256_and_si256(p0, low32);
      k0 += rng::kPhiloxW0;
      k1 += rng::kPhiloxW1;
    }
    _mm256_storeu_pd(a + k, unit_from_lanes(c0, c1));
    _mm256_storeu_pd(b + k, unit_from_lanes(c2, c3));
  }
  for (; k < n; ++k) {
    const auto u = rng::swarm_units(key.seed, key.agent, first + static_cast<std::uint32_t>(k), key.iteration,
                                    key.purpose);
    a[k] = u.a;
    b[k] = u.b;
  }
}

PFD_AVX2 void standard_step_avx2(const StepParams& p, double* x, double* v, const double* pbest, const double* r1,
                                 const double* r2, std::size_t n) {
  const __m256d w = _mm256_set1_pd(p.w);
  const __m256d c1 = _mm256_set1_pd(p.c1);
  const __m256d c2 = _mm256_set1_pd(p.c2);
  const __m256d g = _mm256_set1_pd(p.gbest);
  const __m256d lo = _mm256_set1_pd(p.lower);
  const __m256d hi = _mm256_set1_pd(p.upper);
  const __m256d vlo = _mm256_set1_pd(-p.vmax);
  const __m256d vhi = _mm256_set1_pd(p.vmax);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d xk = _mm256_loadu_pd(x + k);
    const __m256d vk = _mm256_loadu_pd(v + k);
    const __m256d cognitive = _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(r1 + k), c1),
                                            _mm256_sub_pd(_mm256_loadu_pd(pbest + k), xk));
    const __m256d social = _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(r2 + k), c2), _mm256_sub_pd(g, xk));
    __m256d vn = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(w, vk), cognitive), social);
    if (p.clamp_velocity) vn = _mm256_min_pd(_mm256_max_pd(vn, vlo), vhi);
    _mm256_storeu_pd(v + k, vn);
    _mm256_storeu_pd(x + k, _mm256_min_pd(_mm256_max_pd(_mm256_add_pd(xk, vn), lo), hi));
  }
  for (; k < n; ++k) {
    double vk = velocity_standard(v[k], x[k], pbest[k], p.gbest, p.w, p.c1, p.c2, r1[k], r2[k]);
    if (p.clamp_velocity) vk = clamp_to(vk, -p.vmax, p.vmax);
    v[k] = vk;
    x[k] = position_update(x[k], vk, p.lower, p.upper);
  }
}

#undef PFD_AVX2

constexpr KernelTable kAvx2{Isa::avx2, edge_costs_avx2, accumulate_avx2, unit_pairs_avx2, standard_step_avx2};

}  // namespace

const KernelTable* detail::avx2_table() noexcept { return &kAvx2; }
bool detail::avx2_supported() noexcept { return __builtin_cpu_supports("avx2"); }

#else

const KernelTable* detail::avx2_table() noexcept { return nullptr; }
bool detail::avx2_supported() noexcept { return false; }

#endif

}  // namespace pfd::kernels
