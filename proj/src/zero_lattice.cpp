#include "irgrowth/zero_lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "irgrowth/errors.hpp"
#include "irgrowth/log_complex.hpp"

namespace irgrowth {

std::complex<double> unit_root(std::uint64_t j, std::uint64_t n) {
  if (n == 0 || n > (std::uint64_t{1} << 62)) {
    throw std::invalid_argument("unit_root: n must lie in [1, 2^62]");
  }
  j %= n;
  // Angle = (pi/2) * (quadrant + rem/n) with rem in [0, n).
  const std::uint64_t scaled = j * 4;
  const auto quadrant = static_cast<int>(scaled / n);
  const auto rem = static_cast<std::uint64_t>(scaled % n);

  double c, s;
  if (rem == 0) {
    c = 1.0;
    s = 0.0;
  } else if (rem == n - rem) {
    c = s = std::numbers::sqrt2 / 2;
  } else if (rem < n - rem) {
    const double t = (kPi / 2) * (static_cast<double>(rem) / static_cast<double>(n));
    c = std::cos(t);
    s = std::sin(t);
  } else {
    const double t =
        (kPi / 2) * (static_cast<double>(n - rem) / static_cast<double>(n));
    c = std::sin(t);
    s = std::cos(t);
  }
  switch (quadrant) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

ZeroLattice::ZeroLattice(int k_max, double rotation)
    : k_max_(k_max), rotation_(rotation) {
  if (k_max < 1 || k_max > kMaxSupportedK) {
    throw std::invalid_argument("ZeroLattice: k_max must lie in [1, " +
                                std::to_string(kMaxSupportedK) + "]");
  }
  if (!std::isfinite(rotation)) {
    throw std::invalid_argument("ZeroLattice: rotation must be finite");
  }
}

double ZeroLattice::radius() const { return std::ldexp(1.0, k_max_); }

std::int64_t ZeroLattice::total_zeros() const {
  return (std::int64_t{1} << (k_max_ + 1)) - 2;
}

std::complex<double> ZeroLattice::zero(int k, std::uint64_t j) const {
  if (k < 1 || k > k_max_) throw LatticeExhausted("circle index outside lattice");
  std::complex<double> u = unit_root(j, std::uint64_t{1} << k);
  if (rotation_ != 0.0) u *= unit_phase(rotation_);
  return {std::ldexp(u.real(), k), std::ldexp(u.imag(), k)};
}

std::vector<std::complex<double>> ZeroLattice::circle(int k) const {
  if (k < 1 || k > k_max_) throw LatticeExhausted("circle index outside lattice");
  const std::uint64_t n = std::uint64_t{1} << k;
  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (std::uint64_t j = 0; j < n; ++j) out.push_back(zero(k, j));
  return out;
}

void ZeroLattice::check_radius(double r) const {
  if (!(r >= 0.0)) throw std::invalid_argument("radius must be non-negative");
  if (r > radius()) {
    throw LatticeExhausted("radius " + std::to_string(r) +
                           " exceeds lattice radius 2^" + std::to_string(k_max_));
  }
}

int ZeroLattice::circle_index(double r) {
  if (r < 2.0) return 0;
  int e = 0;
  std::frexp(r, &e);  // r = m * 2^e, m in [0.5, 1)
  return e - 1;
}

std::vector<std::complex<double>> ZeroLattice::zeros_up_to(double r) const {
  check_radius(r);
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(counting(r)));
  for (int k = 1; k <= circle_index(r); ++k) {
    const auto c = circle(k);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::int64_t ZeroLattice::counting(double r) const {
  check_radius(r);
  const int k = circle_index(r);
  return k == 0 ? 0 : (std::int64_t{1} << (k + 1)) - 2;
}

double ZeroLattice::normalized_count(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("normalized_count needs r > 0");
  return static_cast<double>(counting(r)) / r;
}

std::complex<double> ZeroLattice::reciprocal_sum(double r) const {
  check_radius(r);
  CompensatedSum<std::complex<double>> acc;
  const int kmax = circle_index(r);
  for (int k = 1; k <= kmax; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    for (std::uint64_t j = 0; j < n; ++j) {
      const auto a = zero(k, j);
      acc.add(1.0 / a);
    }
  }
  return acc.value();
}

LatticeReport verify_lattice(const ZeroLattice& lattice) {
  LatticeReport rep;
  rep.k_max = lattice.k_max();
  CompensatedSum<std::complex<double>> acc;
  for (int k = 1; k <= lattice.k_max(); ++k) {
    const double r = std::ldexp(1.0, k);
    rep.sup_normalized_count =
        std::max(rep.sup_normalized_count, lattice.normalized_count(r));
    const std::uint64_t n = std::uint64_t{1} << k;
    for (std::uint64_t j = 0; j < n; ++j) acc.add(1.0 / lattice.zero(k, j));
    rep.max_reciprocal_sum = std::max(rep.max_reciprocal_sum, std::abs(acc.value()));
  }
  rep.counting_bound_holds = rep.sup_normalized_count <= 2.0;
  rep.reciprocal_bound_holds = rep.max_reciprocal_sum <= 1e-10;
  return rep;
}

}  // namespace irgrowth
