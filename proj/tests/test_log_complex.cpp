#include "irgrowth/log_complex.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "test_support.hpp"

namespace irgrowth {
namespace {

using testing::kEps;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

TEST(NormalizeAngle, StaysInHalfOpenInterval) {
  EXPECT_EQ(normalize_angle(kPi), kPi);
  EXPECT_EQ(normalize_angle(-kPi), kPi);
  EXPECT_EQ(normalize_angle(0.25), 0.25);
  EXPECT_NEAR(normalize_angle(3 * kPi), kPi, 4 * kEps);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double t = testing::uniform(rng, -1e6, 1e6);
    const double r = normalize_angle(t);
    EXPECT_GT(r, -kPi);
    EXPECT_LE(r, kPi);
  }
}

TEST(NormalizeAngle, LargeMultiplesReduceWithoutDrift) {
  // 2^20 * 2 pi + 1 must come back to 1 up to the rounding of the input.
  const double t = std::ldexp(kTwoPi, 20) + 1.0;
  EXPECT_NEAR(normalize_angle(t), 1.0, 1e-9);
}

TEST(UnitPhase, ExactAtQuarterTurns) {
  EXPECT_EQ(unit_phase(0.0), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(unit_phase(kPi / 2), std::complex<double>(0.0, 1.0));
  EXPECT_EQ(unit_phase(-kPi / 2), std::complex<double>(0.0, -1.0));
  EXPECT_EQ(unit_phase(kPi), std::complex<double>(-1.0, 0.0));
}

TEST(LcMul, Examples) {
  const LogComplex p = lc_mul({std::log(2.0), 0.0}, {std::log(3.0), kPi});
  EXPECT_NEAR(p.log_mag, std::log(6.0), 2 * kEps);
  EXPECT_EQ(p.arg, kPi);

  const LogComplex z = lc_mul(LogComplex::zero(), {5.0, 1.0});
  EXPECT_EQ(z.log_mag, kNegInf);
  EXPECT_EQ(z.arg, 0.0);

  const LogComplex m = lc_mul({0.0, kPi / 2}, {0.0, kPi / 2});
  EXPECT_EQ(m.log_mag, 0.0);
  EXPECT_EQ(m.arg, kPi);
}

TEST(LcAdd, Examples) {
  const LogComplex two = lc_add({std::log(3.0), 0.0}, {0.0, kPi});
  EXPECT_NEAR(two.log_mag, std::log(2.0), 2 * kEps);
  EXPECT_EQ(two.arg, 0.0);

  const LogComplex zero = lc_add(LogComplex::one(), {0.0, kPi});
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.arg, 0.0);
}

TEST(LcAdd, RescaledSumMatchesHighPrecisionOracle) {
  // 700 + log(1 + e^{-10}) to 22 digits (mpmath).
  const LogComplex s = lc_add({700.0, 0.0}, {690.0, 0.0});
  EXPECT_DOUBLE_EQ(s.log_mag, 700.0000453988992168646);
  EXPECT_EQ(s.arg, 0.0);
}

TEST(LcAdd, ZeroIsNeutral) {
  const LogComplex a{3.5, -1.25};
  EXPECT_EQ(lc_add(a, LogComplex::zero()), a);
  EXPECT_EQ(lc_add(LogComplex::zero(), a), a);
}

TEST(LcAdd, SymmetricBitForBit) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20000; ++i) {
    const LogComplex a = LogComplex::polar(testing::uniform(rng, -50, 50), testing::uniform(rng, -4, 4));
    // Half of the pairs share a magnitude, which exercises the tie-break.
    const double mb = i % 2 ? a.log_mag : testing::uniform(rng, -50, 50);
    const LogComplex b = LogComplex::polar(mb, testing::uniform(rng, -4, 4));
    const LogComplex ab = lc_add(a, b), ba = lc_add(b, a);
    EXPECT_EQ(ab.log_mag, ba.log_mag);
    EXPECT_EQ(ab.arg, ba.arg);
  }
}

TEST(LcAdd, MatchesOrdinaryAdditionOverWideRange) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20000; ++i) {
    auto draw = [&] {
      const double mag = std::pow(10.0, testing::uniform(rng, -300, 300));
      return std::polar(mag, testing::uniform(rng, -kPi, kPi));
    };
    const std::complex<double> x = draw(), y = draw();
    const std::complex<double> got =
        lc_add(LogComplex::from_complex(x), LogComplex::from_complex(y)).to_complex();
    const std::complex<double> want = x + y;
    if (!std::isfinite(std::abs(want))) continue;
    // Each operand carries the log-form round-trip error (4 + |log|z||) eps.
    const double lm = std::max(std::abs(std::log(std::abs(x))), std::abs(std::log(std::abs(y))));
    const double tol = (8.0 + 2.0 * lm) * testing::kEps;
    EXPECT_LE(std::abs(got - want), tol * (std::abs(x) + std::abs(y))) << x << " + " << y;
  }
}

TEST(LcMul, CommutativeAndAssociative) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 10000; ++i) {
    auto draw = [&] {
      return LogComplex::polar(testing::uniform(rng, -700, 700), testing::uniform(rng, -kPi, kPi));
    };
    const LogComplex a = draw(), b = draw(), c = draw();
    const LogComplex ab = lc_mul(a, b), ba = lc_mul(b, a);
    EXPECT_EQ(ab, ba);
    const LogComplex l = lc_mul(ab, c), r = lc_mul(a, lc_mul(b, c));
    const double scale = std::max({std::abs(a.log_mag), std::abs(b.log_mag), std::abs(c.log_mag), 1.0});
    EXPECT_LE(std::abs(l.log_mag - r.log_mag), 8 * kEps * 3 * scale);
    EXPECT_LE(std::abs(normalize_angle(l.arg - r.arg)), 8 * kEps * 3 * kPi);
  }
}

TEST(LogComplex, ArgumentNormalizedAndZeroConvention) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 5000; ++i) {
    const LogComplex v = LogComplex::polar(testing::uniform(rng, -10, 10), testing::uniform(rng, -100, 100));
    EXPECT_GT(v.arg, -kPi);
    EXPECT_LE(v.arg, kPi);
  }
  EXPECT_EQ(LogComplex::polar(kNegInf, 2.0).arg, 0.0);
  EXPECT_EQ(LogComplex::from_complex({0.0, 0.0}), LogComplex::zero());
}

// Round trip within 4 ulp of |z| for moduli near 1. Farther out, the log
// magnitude itself carries an ulp of |log|z|| eps, which exp turns into a
// relative error of that size; the bound scales accordingly.
TEST(LogComplex, RoundTripWithinFourUlpNearUnitModulus) {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 20000; ++i) {
    const std::complex<double> z = std::polar(std::exp(testing::uniform(rng, -1, 1)),
                                              testing::uniform(rng, -kPi, kPi));
    const std::complex<double> back = LogComplex::from_complex(z).to_complex();
    EXPECT_LE(std::abs(back - z), 4 * kEps * std::abs(z)) << z;
  }
}

TEST(LogComplex, RoundTripScalesWithLogMagnitude) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20000; ++i) {
    const double lm = testing::uniform(rng, -700, 700);
    const std::complex<double> z = std::polar(std::exp(lm), testing::uniform(rng, -kPi, kPi));
    const std::complex<double> back = LogComplex::from_complex(z).to_complex();
    EXPECT_LE(std::abs(back - z), (4 + std::abs(lm)) * kEps * std::abs(z)) << z;
  }
}

TEST(LogComplex, SubnormalAndHugeInputs) {
  const LogComplex tiny = LogComplex::from_complex({4.9e-324, 0.0});
  EXPECT_NEAR(tiny.log_mag, std::log(4.9406564584124654e-324), 1e-12);
  const LogComplex big = LogComplex::from_complex({1.5e308, 1.5e308});
  EXPECT_NEAR(big.log_mag, std::log(1.5e308) + 0.5 * std::log(2.0), 1e-12);
  EXPECT_NEAR(big.arg, kPi / 4, 1e-15);
}

TEST(LcConj, NegatesArgument) {
  EXPECT_EQ(lc_conj({1.0, 0.5}), (LogComplex{1.0, -0.5}));
  EXPECT_EQ(lc_conj({1.0, kPi}), (LogComplex{1.0, kPi}));
  EXPECT_EQ(lc_neg({2.0, 0.0}), (LogComplex{2.0, kPi}));
}

TEST(ToleranceTest, AbsoluteAndRelative) {
  const Tolerance t{1e-3, 1e-2};
  EXPECT_TRUE(t.close(1.0, 1.0105));
  EXPECT_FALSE(t.close(1.0, 1.02));
  EXPECT_TRUE(t.close(0.0, 9e-4));
  EXPECT_TRUE(t.close(std::complex<double>(100.0, 0.0), std::complex<double>(100.0, 1.0)));
  EXPECT_FALSE((Tolerance{0.0, 0.0}).close(1.0, std::nextafter(1.0, 2.0)));
}

TEST(CompensatedSum, Examples) {
  const std::vector<std::complex<double>> rescue{{1e16, 0}, {1, 0}, {-1e16, 0}};
  EXPECT_EQ(compensated_sum(rescue), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(compensated_sum(std::span<const std::complex<double>>{}), std::complex<double>());
}

TEST(CompensatedSum, MillionTenths) {
  // 10^6 * double(0.1) = 100000 + 5.551115123125783e-12 exactly, which rounds
  // to 100000.
  const std::vector<double> terms(1000000, 0.1);
  double naive = 0.0;
  for (double t : terms) naive += t;
  EXPECT_EQ(compensated_sum(terms), 100000.0);
  EXPECT_NE(naive, 100000.0);
  EXPECT_NEAR(compensated_sum(terms), 100000.0, 1e-6);
}

TEST(CompensatedSum, NeumaierHandlesLargeLaterTerm) {
  // Plain Kahan loses the ones here; Neumaier keeps them.
  const std::vector<double> terms{1.0, 1e100, 1.0, -1e100};
  EXPECT_EQ(compensated_sum(terms), 2.0);
}

TEST(CompensatedSum, ExactForRandomDyadicData) {
  // Integers below 2^40 sum exactly in any order; the compensated sum must
  // reproduce the integer total even when mixed with cancelling giants.
  std::mt19937_64 rng(18);
  std::vector<double> terms;
  std::int64_t exact = 0;
  for (int i = 0; i < 100000; ++i) {
    const std::int64_t v = static_cast<std::int64_t>(rng() >> 24) - (std::int64_t{1} << 39);
    exact += v;
    terms.push_back(static_cast<double>(v));
    if (i % 1000 == 0) {
      terms.push_back(1e30);
      terms.push_back(-1e30);
    }
  }
  EXPECT_EQ(compensated_sum(terms), static_cast<double>(exact));
}

}  // namespace
}  // namespace irgrowth
