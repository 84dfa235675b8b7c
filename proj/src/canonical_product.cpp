#include "irgrowth/canonical_product.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "irgrowth/errors.hpp"
#include "irgrowth/parallel.hpp"

namespace irgrowth {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Snapping radius, in units of eps, for recognising a lattice zero.
constexpr double kZeroSnap = 8.0;

// 1 - w^{2^k} for |w| given in log form, exact zero when w is (to rounding)
// a 2^k-th root of unity.
LogComplex dyadic_factor(const LogComplex& w, int k) {
  const double n = std::ldexp(1.0, k);
  // Distance of w from the nearest 2^k-th root of unity.
  const double turns = w.arg * n / kTwoPi;
  const double phase_off = std::abs(turns - std::nearbyint(turns)) * kTwoPi / n;
  if (std::abs(w.log_mag) <= kZeroSnap * kEps && phase_off <= kZeroSnap * kEps) {
    return LogComplex::zero();
  }
  const LogComplex power =
      LogComplex::polar(std::ldexp(w.log_mag, k), std::ldexp(w.arg, k));
  return lc_add(LogComplex::one(), lc_neg(power));
}

}  // namespace

ProductEvaluator::ProductEvaluator(ZeroLattice lattice, int tail_margin)
    : lattice_(lattice), tail_margin_(tail_margin) {
  if (tail_margin < 0) throw std::invalid_argument("tail_margin must be >= 0");
}

int ProductEvaluator::cutoff(std::complex<double> z) const {
  const double m = std::max(std::abs(z), 1.0);
  if (!std::isfinite(m)) throw DomainError("canonical product needs finite z");
  int e = 0;
  const double frac = std::frexp(m, &e);  // m = frac * 2^e
  const int ceil_log2 = frac == 0.5 ? e - 1 : e;
  return ceil_log2 + 2 + tail_margin_;
}

std::complex<double> ProductEvaluator::unrotate(std::complex<double> z) const {
  if (lattice_.rotation() == 0.0) return z;
  return z * unit_phase(-lattice_.rotation());
}

LogComplex ProductEvaluator::eval_base(std::complex<double> w, int k_cut) const {
  // f is even with real Taylor coefficients: fold into the closed upper
  // right quadrant so the symmetries hold exactly.
  if (w.real() < 0.0 || (w.real() == 0.0 && w.imag() < 0.0)) w = -w;
  if (w.imag() < 0.0) return lc_conj(eval_base(std::conj(w), k_cut));

  LogComplex acc = LogComplex::one();
  for (int k = 1; k <= k_cut; ++k) {
    const std::complex<double> scaled{std::ldexp(w.real(), -k), std::ldexp(w.imag(), -k)};
    const LogComplex factor = dyadic_factor(LogComplex::from_complex(scaled), k);
    if (factor.is_zero()) return LogComplex::zero();
    acc = lc_mul(acc, factor);
  }
  return acc;
}

LogComplex ProductEvaluator::eval_log(std::complex<double> z) const {
  return eval_base(unrotate(z), cutoff(z));
}

LogComplex ProductEvaluator::eval_log_truncated(std::complex<double> z, int k_cut) const {
  if (k_cut < 0) throw std::invalid_argument("k_cut must be >= 0");
  return eval_base(unrotate(z), k_cut);
}

LogComplex ProductEvaluator::eval_log_direct(std::complex<double> z, int k_cut) const {
  if (k_cut > lattice_.k_max()) {
    throw LatticeExhausted("k_cut " + std::to_string(k_cut) + " exceeds lattice k_max " +
                           std::to_string(lattice_.k_max()));
  }
  CompensatedSum<double> log_mag;
  CompensatedSum<double> arg;
  for (int k = 1; k <= k_cut; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    for (std::uint64_t j = 0; j < n; ++j) {
      const std::complex<double> a = lattice_.zero(k, j);
      // z/a = z conj(a) / 4^k with |a| = 2^k.
      const std::complex<double> za = z * std::conj(a);
      const std::complex<double> ratio{std::ldexp(za.real(), -2 * k),
                                       std::ldexp(za.imag(), -2 * k)};
      const std::complex<double> one_minus = 1.0 - ratio;
      if (std::abs(one_minus) <= kZeroSnap * kEps) return LogComplex::zero();
      const LogComplex term = LogComplex::from_complex(one_minus);
      log_mag.add(term.log_mag);
      arg.add(term.arg);
    }
  }
  return LogComplex::polar(log_mag.value(), arg.value());
}

GrowthProfile ProductEvaluator::growth_profile(double theta, double r_min, double r_max,
                                               int samples) const {
  return sample_profile("f", theta, geometric_radii(r_min, r_max, samples),
                        [this](std::complex<double> z) { return eval_log(z).log_mag; });
}

double ProductEvaluator::max_modulus(double r, int n_theta) const {
  if (!(r > 0.0)) throw std::invalid_argument("max_modulus needs r > 0");
  if (n_theta < 8) throw std::invalid_argument("max_modulus needs n_theta >= 8");
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n_theta; ++j) {
    const double theta = kMaxModulusPhase + kTwoPi * (static_cast<double>(j) / n_theta);
    best = std::max(best, eval_log(r * unit_phase(theta)).log_mag);
  }
  return best / r;
}

GrowthProfile ProductEvaluator::max_modulus_profile(const std::vector<double>& radii,
                                                    int n_theta) const {
  GrowthProfile p{"M_f", 0.0, radii, std::vector<double>(radii.size())};
  parallel_for(radii.size(), [&](std::size_t i) { p.values[i] = max_modulus(radii[i], n_theta); });
  p.validate();
  return p;
}

}  // namespace irgrowth
