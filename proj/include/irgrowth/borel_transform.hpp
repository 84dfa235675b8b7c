#pragma once

#include <complex>
#include <cstdint>

namespace irgrowth {

// a_m = sign * 2^{log2_abs}, exact. sign == 0 means a_m = 0 (log2_abs unused).
struct DyadicCoefficient {
  int sign = 0;
  std::int64_t log2_abs = 0;
};

// c_m = sign * e^{log_abs}. sign == 0 means c_m = 0.
struct SignedLog {
  int sign = 0;
  double log_abs = 0.0;

  double value() const;
};

// Taylor data of f(z) = prod_{k>=1} (1 - z^{2^k} / 2^{k 2^k}).
//
// Each power 2^k appears in exactly one factor, so z^m arises from a unique
// subset S of factors: the set bits of m. m is reachable iff bit 0 is clear,
// and then a_m = (-1)^{|S|} 2^{-sum_{k in S} k 2^k}.
class CoefficientStream {
 public:
  // Largest supported index; keeps sum k 2^k inside int64.
  static constexpr std::uint64_t kMaxIndex = (std::uint64_t{1} << 56) - 1;

  // Plain coefficient a_m of z^m.
  DyadicCoefficient taylor(std::uint64_t m) const;

  // c_m = m! a_m, the coefficient in f = sum c_m z^m / m!. The factorial is
  // applied as log-gamma.
  SignedLog borel(std::uint64_t m) const;
};

// g(s) = sum_m c_m / s^{m+1}.
//
// Stopping rule: |c_m| <= sqrt(2 pi m) (4/e)^m e^{1/(12 m)} for m >= 2, hence
// |term m| <= E_m = sqrt(2 pi m) (4/(e|s|))^m e^{1/(12 m)}. Summation stops
// once the geometric majorant of sum_{m' > m} E_{m'} drops below
// term_floor * |partial sum|. Odd m contribute nothing and are never used to
// decide termination.
class BorelEvaluator {
 public:
  static constexpr double kDefaultMinModulus = 2.5;
  static constexpr double kDefaultTermFloor = 1e-18;
  static constexpr int kMaxTerms = 100000;

  explicit BorelEvaluator(double min_modulus = kDefaultMinModulus,
                          double term_floor = kDefaultTermFloor);

  double min_modulus() const { return min_modulus_; }
  double term_floor() const { return term_floor_; }

  struct Result {
    std::complex<double> value;
    double tail_bound = 0.0;     // majorant of the omitted terms
    std::uint64_t last_index = 0;  // highest m summed
  };

  // Throws DomainError for |s| < min_modulus.
  Result evaluate(std::complex<double> s) const;
  std::complex<double> operator()(std::complex<double> s) const { return evaluate(s).value; }

  // Same series in x87 extended precision; used inside contour quadrature,
  // where the integrand is multiplied by e^{zs} factors up to ~e^{30}.
  std::complex<long double> evaluate_extended(std::complex<long double> s) const;

  // Envelope E_m above (m >= 2).
  static double envelope(std::uint64_t m, double abs_s);
  // log E_m, finite where E_m underflows.
  static double log_envelope(std::uint64_t m, double abs_s);

 private:
  template <typename R>
  std::complex<R> sum_series(std::complex<R> s, Result* info) const;

  CoefficientStream stream_;
  double min_modulus_;
  double term_floor_;
};

}  // namespace irgrowth
