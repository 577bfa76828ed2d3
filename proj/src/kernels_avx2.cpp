#include "meanbound/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace meanbound::kernels {
namespace {

// ---------------------------------------------------------------------------
// Vector exp/log, 4 doubles per lane. Cephes-style argument reduction;
// accuracy ~1-2 ulp on the ranges this project uses. exp saturates
// outside [-708, 708].
// ---------------------------------------------------------------------------

const __m256d kOne = _mm256_set1_pd(1.0);
const __m256d kHalf = _mm256_set1_pd(0.5);

inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

  x = _mm256_max_pd(_mm256_set1_pd(-708.0), _mm256_min_pd(_mm256_set1_pd(708.0), x));

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  // Taylor series for e^r on |r| <= ln2/2
  __m256d p = _mm256_set1_pd(2.08767569878680989792e-9);   // 1/12!
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.50521083854417187751e-8));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.75573192239858906526e-7));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.75573192239858906526e-6));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.48015873015873015873e-5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.98412698412698412698e-4));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.38888888888888888889e-3));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(8.33333333333333333333e-3));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(4.16666666666666666667e-2));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.66666666666666666667e-1));
  p = _mm256_fmadd_pd(p, r, kHalf);
  p = _mm256_fmadd_pd(p, r, kOne);
  p = _mm256_fmadd_pd(p, r, kOne);

  // scale by 2^n
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

// expm1(r) = r * P(r) with P = sum r^(k-1)/k!; valid for |r| <= 1
inline __m256d expm1_small_pd(__m256d r) {
  __m256d p = _mm256_set1_pd(1.56192069685862264622e-16);  // 1/18!
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.81145725434552076320e-15));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(4.77947733238738529744e-14));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(7.64716373181981647590e-13));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.14707455977297247139e-11));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.60590438368216145994e-10));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.08767569878680989792e-9));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.50521083854417187751e-8));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.75573192239858906526e-7));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.75573192239858906526e-6));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.48015873015873015873e-5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.98412698412698412698e-4));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.38888888888888888889e-3));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(8.33333333333333333333e-3));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(4.16666666666666666667e-2));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.66666666666666666667e-1));
  p = _mm256_fmadd_pd(p, r, kHalf);
  p = _mm256_fmadd_pd(p, r, kOne);
  return _mm256_mul_pd(r, p);
}

// rational approximation of (log(1+z) - z + z^2/2)/z^3 on [sqrt(2)/2 - 1, sqrt(2) - 1]
inline __m256d log_ratpoly(__m256d z) {
  __m256d p = _mm256_set1_pd(1.01875663804580931796e-4);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(4.97494994976747001425e-1));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(4.70579119878881725854e0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.44989225341610930846e1));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.79368678507819816313e1));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(7.70838733755885391666e0));
  __m256d q = _mm256_add_pd(z, _mm256_set1_pd(1.12873587189167450590e1));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(4.52279145837532221105e1));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(8.29875266912776603211e1));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(7.11544750618563894466e1));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.31251620126765340583e1));
  return _mm256_div_pd(p, q);
}

inline __m256d log_pd(__m256d x) {
  // rescale subnormals so the exponent-field extraction is valid
  const __m256d tiny = _mm256_set1_pd(2.2250738585072014e-308);
  const __m256d small_mask = _mm256_cmp_pd(x, tiny, _CMP_LT_OQ);
  x = _mm256_blendv_pd(x, _mm256_mul_pd(x, _mm256_set1_pd(0x1p54)), small_mask);
  const __m256d e_adj = _mm256_and_pd(small_mask, _mm256_set1_pd(54.0));

  const __m256i bits = _mm256_castpd_si256(x);
  __m256i e64 = _mm256_srli_epi64(bits, 52);
  // pack the four exponents into int32 lanes and widen to double
  const __m256i pack_idx = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
  const __m128i e32 = _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(e64, pack_idx));
  __m256d e = _mm256_cvtepi32_pd(e32);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));
  e = _mm256_sub_pd(e, e_adj);

  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));  // [1, 2)

  const __m256d sqrt2 = _mm256_set1_pd(1.41421356237309504880);
  const __m256d gt = _mm256_cmp_pd(m, sqrt2, _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, kHalf), gt);
  e = _mm256_add_pd(e, _mm256_and_pd(gt, kOne));

  const __m256d z = _mm256_sub_pd(m, kOne);
  const __m256d y = _mm256_mul_pd(z, z);
  __m256d r = _mm256_mul_pd(_mm256_mul_pd(z, y), log_ratpoly(z));
  r = _mm256_fnmadd_pd(kHalf, y, r);
  r = _mm256_add_pd(r, z);

  // ln2 split as 0.693359375 - 2.1219...e-4, small part first
  r = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), r);
  r = _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), r);
  return r;
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double k_min(const double* x, std::size_t n) {
  std::size_t i = 0;
  double m = x[0];
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
    const __m128d s = _mm_min_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    m = _mm_cvtsd_f64(_mm_min_sd(s, _mm_unpackhi_pd(s, s)));
  }
  for (; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double k_max(const double* x, std::size_t n) {
  std::size_t i = 0;
  double m = x[0];
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
    const __m128d s = _mm_max_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    m = _mm_cvtsd_f64(_mm_max_sd(s, _mm_unpackhi_pd(s, s)));
  }
  for (; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double k_sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

double k_sum_sq_dev(const double* x, std::size_t n, double mean) {
  const __m256d mu = _mm256_set1_pd(mean);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), mu);
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = x[i] - mean;
    s += d * d;
  }
  return s;
}

double k_sum_exp_scaled(const double* x, std::size_t n, double scale, double shift) {
  const __m256d sc = _mm256_set1_pd(scale);
  const __m256d sh = _mm256_set1_pd(shift);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_mul_pd(sc, _mm256_sub_pd(_mm256_loadu_pd(x + i), sh));
    acc = _mm256_add_pd(acc, exp_pd(r));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::exp(scale * (x[i] - shift));
  return s;
}

double k_sum_expm1_scaled(const double* x, std::size_t n, double scale, double shift) {
  const __m256d sc = _mm256_set1_pd(scale);
  const __m256d sh = _mm256_set1_pd(shift);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_mul_pd(sc, _mm256_sub_pd(_mm256_loadu_pd(x + i), sh));
    acc = _mm256_add_pd(acc, expm1_small_pd(r));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::expm1(scale * (x[i] - shift));
  return s;
}

void k_log_to(double* dst, const double* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(dst + i, log_pd(_mm256_loadu_pd(src + i)));
  for (; i < n; ++i) dst[i] = std::log(src[i]);
}

void k_exp_to(double* dst, const double* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(dst + i, exp_pd(_mm256_loadu_pd(src + i)));
  for (; i < n; ++i) dst[i] = std::exp(src[i]);
}

}  // namespace

const Ops* avx2_or_null() {
  if (!(__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))) return nullptr;
  static const Ops ops{k_min,          k_max,     k_sum,
                       k_sum_sq_dev,   k_sum_exp_scaled, k_sum_expm1_scaled,
                       k_log_to,       k_exp_to,  "avx2"};
  return &ops;
}

}  // namespace meanbound::kernels

#else

namespace meanbound::kernels {
const Ops* avx2_or_null() { return nullptr; }
}  // namespace meanbound::kernels

#endif
