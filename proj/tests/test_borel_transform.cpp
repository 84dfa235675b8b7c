#include "irgrowth/borel_transform.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "irgrowth/errors.hpp"
#include "test_support.hpp"

namespace irgrowth {
namespace {

using C = std::complex<double>;

// Coefficients of prod_{k <= k_max} (1 - z^{2^k} / 2^{k 2^k}) by explicit
// polynomial convolution. All values are dyadic and exact in binary64.
std::vector<double> convolved_product(int k_max) {
  std::vector<double> poly{1.0};
  for (int k = 1; k <= k_max; ++k) {
    const std::size_t n = std::size_t{1} << k;
    std::vector<double> next(poly.size() + n, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + n] -= std::ldexp(poly[i], -k * static_cast<int>(n));
    }
    poly = std::move(next);
  }
  return poly;
}

double as_double(const DyadicCoefficient& a) {
  return a.sign == 0 ? 0.0 : a.sign * std::ldexp(1.0, static_cast<int>(a.log2_abs));
}

// Truncated Borel series from the convolved product, summed in long double.
// Exact through m = 2^{k_max+1} - 2 and independent of CoefficientStream.
std::complex<long double> series_oracle(std::complex<long double> s, int k_max) {
  const auto poly = convolved_product(k_max);
  std::complex<long double> sum = 0.0L, power = 1.0L / s;
  long double factorial = 1.0L;
  for (std::size_t m = 0; m < poly.size(); ++m) {
    if (m > 0) factorial *= static_cast<long double>(m);
    sum += static_cast<long double>(poly[m]) * factorial * power;
    power /= s;
  }
  return sum;
}

TEST(TaylorCoefficient, Examples) {
  const CoefficientStream stream;
  EXPECT_EQ(stream.taylor(0).sign, 1);
  EXPECT_EQ(stream.taylor(0).log2_abs, 0);
  EXPECT_EQ(stream.taylor(2).sign, -1);
  EXPECT_EQ(stream.taylor(2).log2_abs, -2);
  EXPECT_EQ(stream.taylor(14).sign, -1);
  EXPECT_EQ(stream.taylor(14).log2_abs, -34);
  EXPECT_EQ(stream.taylor(3).sign, 0);
}

TEST(BorelCoefficient, Examples) {
  const CoefficientStream stream;
  EXPECT_NEAR(stream.borel(2).value(), -0.5, 1e-15);
  EXPECT_NEAR(stream.borel(6).value(), 0.703125, 1e-15);
  EXPECT_EQ(stream.borel(1).value(), 0.0);
  EXPECT_EQ(stream.borel(1).sign, 0);
}

TEST(TaylorCoefficient, MatchesConvolvedTruncatedProduct) {
  const CoefficientStream stream;
  const auto poly = convolved_product(4);
  for (std::uint64_t m = 0; m <= 30; ++m) EXPECT_EQ(as_double(stream.taylor(m)), poly[m]) << m;
  // Five factors reach m = 62; exponents stay within binary64.
  const auto poly5 = convolved_product(5);
  for (std::uint64_t m = 0; m <= 62; ++m) EXPECT_EQ(as_double(stream.taylor(m)), poly5[m]) << m;
}

TEST(TaylorCoefficient, BinaryDecompositionProperty) {
  const CoefficientStream stream;
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t m = rng() & CoefficientStream::kMaxIndex;
    const auto a = stream.taylor(m);
    if (m & 1u) {
      EXPECT_EQ(a.sign, 0);
      continue;
    }
    int bits = 0;
    std::int64_t exponent = 0;
    for (int k = 1; k < 64; ++k) {
      if ((m >> k) & 1u) {
        ++bits;
        exponent -= static_cast<std::int64_t>(k) * (std::int64_t{1} << k);
      }
    }
    EXPECT_EQ(a.sign, bits % 2 ? -1 : 1);
    EXPECT_EQ(a.log2_abs, exponent);
  }
}

TEST(BorelCoefficient, LogGammaMatchesExactFactorial) {
  const CoefficientStream stream;
  long double factorial = 1.0L;
  for (std::uint64_t m = 1; m <= 170; ++m) {
    factorial *= static_cast<long double>(m);
    const auto a = stream.taylor(m);
    if (a.sign == 0) continue;
    const double want = static_cast<double>(std::log(factorial) + a.log2_abs * std::log(2.0L));
    EXPECT_NEAR(stream.borel(m).log_abs, want, 1e-12 * std::max(1.0, std::abs(want))) << m;
  }
}

TEST(BorelEval, Examples) {
  const BorelEvaluator g;
  EXPECT_NEAR(g({1e6, 0}).real(), 9.999999999994999999e-7, 1e-12 * 1e-6);
  EXPECT_NEAR(g({4, 0}).real(), 0.24213886, 1e-7);
  EXPECT_NEAR(g({4, 0}).real(), 0.24213886327016976350, 1e-15);
  EXPECT_NEAR(g({-3, 0}).real(), -0.3147504, 1e-5);
  EXPECT_NEAR(g({-3, 0}).real(), -0.31475041385671443928, 2e-15);
  EXPECT_NEAR(g({2.5, 0}).real(), 0.36818893812864272651, 1e-14);
  EXPECT_EQ(g({-4, 0}), -g({4, 0}));
}

TEST(BorelEval, RefusesTheCriticalDisc) {
  const BorelEvaluator g;
  EXPECT_THROW(g({2.4, 0}), DomainError);
  EXPECT_THROW(g({0, 0}), DomainError);
  EXPECT_THROW(BorelEvaluator(2.0), std::invalid_argument);
  EXPECT_NO_THROW(g({0, 2.5}));
}

TEST(BorelEval, MatchesIndependentSeriesOracle) {
  const BorelEvaluator g;
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const C s = testing::in_annulus(rng, 3.0, 10.0);
    // k_max = 6 reaches m = 126; the omitted terms are below 1e-30 here.
    const auto want = series_oracle({s.real(), s.imag()}, 6);
    const C w(static_cast<double>(want.real()), static_cast<double>(want.imag()));
    EXPECT_LE(std::abs(g(s) - w), 1e-15 * std::max(std::abs(w), 1e-3)) << s;
  }
}

TEST(BorelEval, OddAndConjugationSymmetric) {
  const BorelEvaluator g;
  std::mt19937_64 rng(43);
  for (int i = 0; i < 2000; ++i) {
    const C s = testing::in_annulus(rng, 3.0, 100.0);
    const C a = g(s);
    EXPECT_LE(std::abs(g(-s) + a), 1e-12 * std::abs(a));
    EXPECT_EQ(g(std::conj(s)), std::conj(a));
  }
}

TEST(BorelEval, EnvelopeBoundsEveryTerm) {
  const CoefficientStream stream;
  for (double abs_s : {3.0, 4.0, 7.5}) {
    for (std::uint64_t m = 2; m <= 20000; m += 2) {
      const auto c = stream.borel(m);
      if (c.sign == 0) continue;
      const double log_term = c.log_abs - static_cast<double>(m + 1) * std::log(abs_s);
      EXPECT_LE(log_term, BorelEvaluator::log_envelope(m, abs_s) + 1e-12 * (1.0 + std::abs(log_term))) << m;
    }
  }
}

TEST(BorelEval, ReportsTailBelowFloor) {
  const BorelEvaluator g;
  for (C s : {C(3, 0), C(0, 3), C(-2.6, 0.1), C(50, -50)}) {
    const auto r = g.evaluate(s);
    EXPECT_LE(r.tail_bound, g.term_floor() * std::abs(r.value));
    EXPECT_GT(r.last_index, 0u);
  }
}

TEST(BorelEval, ExtendedPrecisionAgrees) {
  const BorelEvaluator g;
  std::mt19937_64 rng(44);
  for (int i = 0; i < 500; ++i) {
    const C s = testing::in_annulus(rng, 2.5, 8.0);
    const auto e = g.evaluate_extended({s.real(), s.imag()});
    const C narrowed(static_cast<double>(e.real()), static_cast<double>(e.imag()));
    EXPECT_LE(std::abs(narrowed - g(s)), 1e-14 * std::abs(narrowed)) << s;
  }
}

}  // namespace
}  // namespace irgrowth
