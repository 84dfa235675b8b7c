#include "irgrowth/borel_transform.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "irgrowth/errors.hpp"
#include "irgrowth/log_complex.hpp"

namespace irgrowth {

namespace {

constexpr std::size_t kLogFactorialTable = 4096;

// log m! for small m, in extended precision. lgamma may touch the global
// signgam, so it runs only in this one-time initialisation; larger m go
// through the reentrant lgammal_r.
const std::array<long double, kLogFactorialTable>& log_factorial_table() {
  static const auto table = [] {
    std::array<long double, kLogFactorialTable> t{};
    for (std::size_t m = 0; m < t.size(); ++m) {
      t[m] = std::lgamma(static_cast<long double>(m) + 1.0L);
    }
    return t;
  }();
  return table;
}

long double log_factorial(std::uint64_t m) {
  if (m < kLogFactorialTable) return log_factorial_table()[m];
  int sign = 0;
  return lgammal_r(static_cast<long double>(m) + 1.0L, &sign);
}

constexpr long double kLn2L = 0.693147180559945309417232121458176568L;

}  // namespace

double SignedLog::value() const {
  return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

DyadicCoefficient CoefficientStream::taylor(std::uint64_t m) const {
  if (m > kMaxIndex) throw std::out_of_range("coefficient index too large");
  if (m == 0) return {1, 0};
  if (m & 1u) return {0, 0};
  int sign = 1;
  std::int64_t log2_abs = 0;
  for (std::uint64_t bits = m; bits != 0; bits &= bits - 1) {
    const int k = std::countr_zero(bits);
    sign = -sign;
    log2_abs -= static_cast<std::int64_t>(k) << k;
  }
  return {sign, log2_abs};
}

SignedLog CoefficientStream::borel(std::uint64_t m) const {
  const DyadicCoefficient a = taylor(m);
  if (a.sign == 0) return {0, 0.0};
  return {a.sign,
          static_cast<double>(log_factorial(m) + static_cast<long double>(a.log2_abs) * kLn2L)};
}

BorelEvaluator::BorelEvaluator(double min_modulus, double term_floor)
    : min_modulus_(min_modulus), term_floor_(term_floor) {
  if (!(min_modulus > 2.0)) {
    throw std::invalid_argument("BorelEvaluator: min_modulus must exceed 2");
  }
  if (!(term_floor > 0.0 && term_floor < 1.0)) {
    throw std::invalid_argument("BorelEvaluator: term_floor must lie in (0, 1)");
  }
  log_factorial_table();
}

double BorelEvaluator::log_envelope(std::uint64_t m, double abs_s) {
  const double md = static_cast<double>(m);
  return 0.5 * std::log(2.0 * std::numbers::pi * md) +
         md * std::log(4.0 / (std::numbers::e * abs_s)) + 1.0 / (12.0 * md);
}

double BorelEvaluator::envelope(std::uint64_t m, double abs_s) {
  return std::exp(log_envelope(m, abs_s));
}

BorelEvaluator::Result BorelEvaluator::evaluate(std::complex<double> s) const {
  Result out;
  out.value = sum_series(s, &out);
  return out;
}

std::complex<long double> BorelEvaluator::evaluate_extended(std::complex<long double> s) const {
  return sum_series(s, nullptr);
}

template <typename R>
std::complex<R> BorelEvaluator::sum_series(std::complex<R> s, Result* info) const {
  const double abs_s = static_cast<double>(std::abs(s));
  if (!(abs_s >= min_modulus_)) {
    throw DomainError("Borel transform evaluated at |s| = " + std::to_string(abs_s) +
                      " inside the refused disc |s| < " + std::to_string(min_modulus_));
  }
  if (!std::isfinite(abs_s)) throw DomainError("Borel transform needs finite s");
  // g is odd with real coefficients; fold into the closed upper right
  // quadrant so both symmetries hold exactly.
  if (s.real() < 0 || (s.real() == 0 && s.imag() < 0)) return -sum_series(-s, info);
  if (s.imag() < 0) return std::conj(sum_series(std::conj(s), info));

  const std::complex<R> log_s = std::log(s);
  const double rho = 4.0 / (std::numbers::e * abs_s);

  CompensatedSum<std::complex<R>> acc;
  for (std::uint64_t m = 0; m < static_cast<std::uint64_t>(kMaxTerms); m += 2) {
    // c_m / s^{m+1}, formed in log space.
    const DyadicCoefficient a = stream_.taylor(m);
    const R log_c = static_cast<R>(log_factorial(m) +
                                   static_cast<long double>(a.log2_abs) * kLn2L);
    const R power = static_cast<R>(m + 1);
    const std::complex<R> term = std::exp(std::complex<R>(log_c, 0) - power * log_s);
    acc.add(a.sign < 0 ? -term : term);

    // Majorant of sum_{m' > m} E_{m'}: the ratios E_{m'+1}/E_{m'} are
    // bounded by rho * sqrt(1 + 1/(m+1)) for all m' >= m + 1.
    const std::uint64_t next = m + 1;
    const double ratio = rho * std::sqrt(1.0 + 1.0 / static_cast<double>(next));
    if (next >= 2 && ratio < 1.0) {
      const double tail = envelope(next, abs_s) / (1.0 - ratio);
      if (tail <= term_floor_ * static_cast<double>(std::abs(acc.value()))) {
        if (info) {
          info->tail_bound = tail;
          info->last_index = m;
        }
        return acc.value();
      }
    }
  }
  const auto v = acc.value();
  throw NonConvergence("Borel series did not reach its term floor", {},
                       {static_cast<double>(v.real()), static_cast<double>(v.imag())});
}

}  // namespace irgrowth
