#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace irgrowth {

// j-th of the n-th roots of unity. Quarter-turn points are
// exact and conjugate/antipodal roots are exact mirror images.
std::complex<double> unit_root(std::uint64_t j, std::uint64_t n);

// Zeros a_{kj} = 2^k * exp(2*pi*i*j/2^k + i*rotation) on the circles
// |z| = 2^k, k = 1 .. k_max, enumerated by k and then j.
class ZeroLattice {
 public:
  static constexpr int kDefaultKMax = 20;
  static constexpr int kMaxSupportedK = 60;

  explicit ZeroLattice(int k_max = kDefaultKMax, double rotation = 0.0);

  int k_max() const { return k_max_; }
  double rotation() const { return rotation_; }
  double radius() const;  // 2^k_max

  // 2^{k_max+1} - 2.
  std::int64_t total_zeros() const;

  std::complex<double> zero(int k, std::uint64_t j) const;
  std::vector<std::complex<double>> circle(int k) const;

  // All zeros with |a| <= r (ties included), ordered by (k, j).
  std::vector<std::complex<double>> zeros_up_to(double r) const;

  // n(r) = #{a : |a| <= r}, exact.
  std::int64_t counting(double r) const;
  double normalized_count(double r) const;

  // Sum of 1/a over |a| <= r with compensated accumulation.
  std::complex<double> reciprocal_sum(double r) const;

 private:
  void check_radius(double r) const;
  // Largest k with 2^k <= r, or 0 below the first circle.
  static int circle_index(double r);

  int k_max_;
  double rotation_;
};

struct LatticeReport {
  int k_max = 0;
  // sup over k <= k_max of n(2^k)/2^k
  double sup_normalized_count = 0.0;
  // max over r = 2^k of |sum_{|a|<=r} 1/a|
  double max_reciprocal_sum = 0.0;
  bool counting_bound_holds = false;    // sup <= 2
  bool reciprocal_bound_holds = false;  // max <= 1e-10
};

LatticeReport verify_lattice(const ZeroLattice& lattice);

}  // namespace irgrowth
