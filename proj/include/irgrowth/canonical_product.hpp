#pragma once

#include <complex>

#include "irgrowth/log_complex.hpp"
#include "irgrowth/profile.hpp"
#include "irgrowth/zero_lattice.hpp"

namespace irgrowth {

// The genus-0 canonical product with the lattice zeros,
//   f(z) = prod_{k>=1} (1 - (z e^{-i rot} / 2^k)^{2^k}),
// evaluated in log form. Points within a few ulps of a lattice zero
// evaluate to an exact zero.
class ProductEvaluator {
 public:
  static constexpr int kDefaultTailMargin = 6;

  explicit ProductEvaluator(ZeroLattice lattice = ZeroLattice{},
                            int tail_margin = kDefaultTailMargin);

  const ZeroLattice& lattice() const { return lattice_; }
  int tail_margin() const { return tail_margin_; }

  // K(z) = ceil(log2 max(|z|, 1)) + 2 + tail_margin, so 2^K >= 4 max(|z|, 1).
  // Omitted factors satisfy |(z/2^k)^{2^k}| <= 2^{-2^k}.
  int cutoff(std::complex<double> z) const;

  LogComplex eval_log(std::complex<double> z) const;

  // Closed-form factors k = 1 .. k_cut only.
  LogComplex eval_log_truncated(std::complex<double> z, int k_cut) const;

  // prod over |a| <= 2^k_cut of (1 - z/a), zero by zero. Independent of the
  // closed form; used as its cross-check.
  LogComplex eval_log_direct(std::complex<double> z, int k_cut) const;

  // log|f(r e^{i theta})| / r on a geometric grid.
  GrowthProfile growth_profile(double theta, double r_min, double r_max,
                               int samples) const;

  // Angular grid offset. Without it every grid angle with a dyadic n_theta
  // is a 2^k-th root of unity, and at r = 2^k the whole grid sits on zeros.
  static constexpr double kMaxModulusPhase = 0.1;

  // max over the angles kMaxModulusPhase + 2 pi j / n_theta of
  // log|f(r e^{i theta})| / r. A lower bound for log M_f(r) / r. Grids whose
  // sizes divide one another are nested, so the value is monotone in n_theta
  // along such chains.
  double max_modulus(double r, int n_theta) const;

  // max_modulus at each radius, as a profile with function_id "M_f".
  GrowthProfile max_modulus_profile(const std::vector<double>& radii,
                                    int n_theta) const;

 private:
  // Unrotated product over k = 1 .. k_cut with symmetry folding.
  LogComplex eval_base(std::complex<double> w, int k_cut) const;
  std::complex<double> unrotate(std::complex<double> z) const;

  ZeroLattice lattice_;
  int tail_margin_;
};

}  // namespace irgrowth
