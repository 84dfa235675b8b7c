#pragma once

// Complex values stored as (log modulus, argument). The products and Borel
// sums handled here span magnitudes around e^{±3000}, far outside binary64.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace irgrowth {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduces an angle to (-pi, pi]. Uses a two-part 2*pi so that large
// multiples (arguments scaled by 2^k) are reduced without drift.
double normalize_angle(double theta);

// e^{i theta} with exact values at 0, ±pi/2 and pi.
std::complex<double> unit_phase(double theta);

struct LogComplex {
  // -inf encodes an exact zero.
  double log_mag = -std::numeric_limits<double>::infinity();
  double arg = 0.0;

  static LogComplex zero() { return {}; }
  static LogComplex one() { return {0.0, 0.0}; }
  // Normalizes the argument; a -inf magnitude forces arg = 0.
  static LogComplex polar(double log_mag, double arg);
  static LogComplex from_complex(std::complex<double> z);

  bool is_zero() const {
    return log_mag == -std::numeric_limits<double>::infinity();
  }
  std::complex<double> to_complex() const;

  friend bool operator==(const LogComplex&, const LogComplex&) = default;
};

LogComplex lc_mul(const LogComplex& a, const LogComplex& b);
LogComplex lc_add(const LogComplex& a, const LogComplex& b);
LogComplex lc_neg(const LogComplex& a);
LogComplex lc_conj(const LogComplex& a);

// a ≈ b iff |a - b| <= abs_tol + rel_tol * max(|a|, |b|).
struct Tolerance {
  double abs_tol = 0.0;
  double rel_tol = 0.0;

  bool close(double a, double b) const;
  bool close(std::complex<double> a, std::complex<double> b) const;
};

// Neumaier's variant of Kahan summation. Terms are folded strictly in the
// order they are added.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + carry_; }

 private:
  T sum_{};
  T carry_{};
};

// Componentwise compensation.
template <typename R>
class CompensatedSum<std::complex<R>> {
 public:
  void add(std::complex<R> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<R> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<R> re_;
  CompensatedSum<R> im_;
};

std::complex<double> compensated_sum(std::span<const std::complex<double>> terms);
double compensated_sum(std::span<const double> terms);

}  // namespace irgrowth
