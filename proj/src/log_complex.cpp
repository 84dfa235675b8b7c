#include "irgrowth/log_complex.hpp"

#include <algorithm>
#include <cmath>

namespace irgrowth {

namespace {

// 2*pi split as hi + lo with hi exact in binary64.
constexpr double kTwoPiHi = 6.283185307179586232;
constexpr double kTwoPiLo = 2.4492935982947064e-16;

}  // namespace

double normalize_angle(double theta) {
  if (!std::isfinite(theta)) return theta;
  if (theta > -kPi && theta <= kPi) return theta;
  const double n = std::nearbyint(theta / kTwoPiHi);
  double r = std::fma(-n, kTwoPiHi, theta);
  r = std::fma(-n, kTwoPiLo, r);
  if (r <= -kPi) r += kTwoPiHi;
  if (r > kPi) r -= kTwoPiHi;
  return r;
}

std::complex<double> unit_phase(double theta) {
  if (theta == 0.0) return {1.0, 0.0};
  if (theta == kPi || theta == -kPi) return {-1.0, 0.0};
  if (theta == kPi / 2) return {0.0, 1.0};
  if (theta == -kPi / 2) return {0.0, -1.0};
  return {std::cos(theta), std::sin(theta)};
}

LogComplex LogComplex::polar(double log_mag, double arg) {
  if (log_mag == -std::numeric_limits<double>::infinity()) return zero();
  return {log_mag, normalize_angle(arg)};
}

LogComplex LogComplex::from_complex(std::complex<double> z) {
  if (z == std::complex<double>{}) return zero();
  const double m = std::abs(z);
  if (m == 0.0 || !std::isfinite(m)) {
    // Subnormal or overflowing hypot: rescale by a power of two first.
    int e = std::max(std::ilogb(z.real()), std::ilogb(z.imag()));
    const std::complex<double> w{std::ldexp(z.real(), -e),
                                 std::ldexp(z.imag(), -e)};
    return {std::log(std::abs(w)) + e * std::numbers::ln2, std::arg(w)};
  }
  return {std::log(m), normalize_angle(std::arg(z))};
}

std::complex<double> LogComplex::to_complex() const {
  if (is_zero()) return {};
  return std::exp(log_mag) * unit_phase(arg);
}

LogComplex lc_mul(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() || b.is_zero()) return LogComplex::zero();
  return LogComplex::polar(a.log_mag + b.log_mag, a.arg + b.arg);
}

LogComplex lc_add(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // Pick the dominant operand by a total order so that the result does not
  // depend on argument order.
  const bool a_first =
      a.log_mag > b.log_mag || (a.log_mag == b.log_mag && a.arg >= b.arg);
  const LogComplex& hi = a_first ? a : b;
  const LogComplex& lo = a_first ? b : a;

  const double rho = std::exp(lo.log_mag - hi.log_mag);
  const double delta = normalize_angle(lo.arg - hi.arg);
  const std::complex<double> w = rho * unit_phase(delta);
  const std::complex<double> s = 1.0 + w;
  if (s == std::complex<double>{}) return LogComplex::zero();

  double log_s;
  if (rho < 0.5) {
    log_s = 0.5 * std::log1p(2.0 * w.real() + rho * rho);
  } else {
    log_s = std::log(std::abs(s));
  }
  return LogComplex::polar(hi.log_mag + log_s, hi.arg + std::arg(s));
}

LogComplex lc_neg(const LogComplex& a) {
  if (a.is_zero()) return a;
  return LogComplex::polar(a.log_mag, a.arg + kPi);
}

LogComplex lc_conj(const LogComplex& a) {
  if (a.is_zero() || a.arg == kPi) return a;
  return {a.log_mag, -a.arg};
}

bool Tolerance::close(double a, double b) const {
  if (a == b) return true;
  return std::abs(a - b) <= abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

bool Tolerance::close(std::complex<double> a, std::complex<double> b) const {
  if (a == b) return true;
  return std::abs(a - b) <= abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

std::complex<double> compensated_sum(std::span<const std::complex<double>> terms) {
  CompensatedSum<std::complex<double>> acc;
  for (const auto& t : terms) acc.add(t);
  return acc.value();
}

double compensated_sum(std::span<const double> terms) {
  CompensatedSum<double> acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

}  // namespace irgrowth
