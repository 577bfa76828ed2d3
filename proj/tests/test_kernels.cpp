#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <vector>

#include "meanbound/kernels.hpp"

using meanbound::kernels::Ops;

namespace {

std::int64_t ulp_distance(double a, double b) {
  std::int64_t ia, ib;
  std::memcpy(&ia, &a, 8);
  std::memcpy(&ib, &b, 8);
  if (ia < 0) ia = std::numeric_limits<std::int64_t>::min() - ia;
  if (ib < 0) ib = std::numeric_limits<std::int64_t>::min() - ib;
  return std::abs(ia - ib);
}

std::vector<double> random_values(std::mt19937_64& gen, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(gen);
  return v;
}

}  // namespace

TEST_CASE("scalar and simd lanes agree") {
  const Ops& ref = meanbound::kernels::scalar();
  const Ops* simd = meanbound::kernels::avx2_or_null();
  if (!simd) return;  // nothing to compare on this host

  std::mt19937_64 gen(20240817);
  // sizes straddling the vector width, including remainder-only lengths
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 16u, 33u, 67u, 256u}) {
    CAPTURE(n);
    const auto x = random_values(gen, n, -700.0, 700.0);

    CHECK(ref.reduce_min(x.data(), n) == simd->reduce_min(x.data(), n));
    CHECK(ref.reduce_max(x.data(), n) == simd->reduce_max(x.data(), n));

    const double s_ref = ref.reduce_sum(x.data(), n);
    const double s_simd = simd->reduce_sum(x.data(), n);
    CHECK(std::abs(s_ref - s_simd) <= 1e-12 * (1.0 + std::abs(s_ref)));

    const double mean = s_ref / static_cast<double>(n);
    const double v_ref = ref.sum_sq_dev(x.data(), n, mean);
    const double v_simd = simd->sum_sq_dev(x.data(), n, mean);
    CHECK(v_simd == doctest::Approx(v_ref).epsilon(1e-12));

    // shifted exponential sums as the means use them: arguments <= 0
    const double mx = ref.reduce_max(x.data(), n);
    const double e_ref = ref.sum_exp_scaled(x.data(), n, 0.01, mx);
    const double e_simd = simd->sum_exp_scaled(x.data(), n, 0.01, mx);
    CHECK(e_simd == doctest::Approx(e_ref).epsilon(1e-13));

    // centered expm1 sums cancel heavily, so compare against the size of the
    // individual arguments rather than the sum itself
    for (double t : {1e-6, 1e-3, 0.5, 0.999}) {
      const double scale = t / 1400.0;  // keeps |scale * (x - mean)| <= t
      const double m_ref = ref.sum_expm1_scaled(x.data(), n, scale, mean);
      const double m_simd = simd->sum_expm1_scaled(x.data(), n, scale, mean);
      CHECK(std::abs(m_ref - m_simd) <= 2e-16 * static_cast<double>(n) * t + 1e-300);
    }
  }
}

TEST_CASE("simd exp matches libm to a few ulp") {
  const Ops* simd = meanbound::kernels::avx2_or_null();
  if (!simd) return;
  std::mt19937_64 gen(7);
  for (double range : {1.0, 20.0, 700.0}) {
    const auto x = random_values(gen, 4096, -range, range);
    std::vector<double> out(x.size());
    simd->exp_to(out.data(), x.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      CAPTURE(x[i]);
      CHECK(ulp_distance(out[i], std::exp(x[i])) <= 4);
    }
  }
}

TEST_CASE("simd log matches libm to a few ulp") {
  const Ops* simd = meanbound::kernels::avx2_or_null();
  if (!simd) return;
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> mag(-300.0, 300.0);
  std::vector<double> x(4096);
  for (auto& v : x) v = std::pow(10.0, mag(gen));
  std::vector<double> out(x.size());
  simd->log_to(out.data(), x.data(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    CAPTURE(x[i]);
    CHECK(ulp_distance(out[i], std::log(x[i])) <= 4);
  }
}

TEST_CASE("simd log handles subnormals") {
  const Ops* simd = meanbound::kernels::avx2_or_null();
  if (!simd) return;
  const std::vector<double> x{5e-324, 1e-310, 2.2e-308, 1.0};
  std::vector<double> out(x.size());
  simd->log_to(out.data(), x.data(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(out[i] == doctest::Approx(std::log(x[i])).epsilon(1e-14));
}

TEST_CASE("active lane respects MEANBOUND_KERNEL override") {
  // dispatch is fixed at first use within a process; here we only check the
  // selected lane is one of the registered ones
  const Ops& a = meanbound::kernels::active();
  const bool known = std::string(a.name) == "scalar" || std::string(a.name) == "avx2";
  CHECK(known);
}
