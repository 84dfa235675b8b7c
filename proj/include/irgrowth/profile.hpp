#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace irgrowth {

// Samples of log|h(r e^{i theta})| / r along a ray. -inf marks exact zeros.
struct GrowthProfile {
  std::string function_id;
  double theta = 0.0;
  std::vector<double> radii;   // strictly increasing, > 0
  std::vector<double> values;  // same length as radii

  // Throws std::invalid_argument if the invariants above fail.
  void validate() const;
};

// Geometric grid r_min .. r_max (both included). The exponent is stepped in
// log2 space, so dyadic endpoints with a dyadic step land on exact powers
// of two.
std::vector<double> geometric_radii(double r_min, double r_max, int samples);

// Samples an arbitrary log-modulus function along the ray at the radii.
GrowthProfile sample_profile(const std::string& function_id, double theta,
                             const std::vector<double>& radii,
                             const std::function<double(std::complex<double>)>& log_abs);

// r e^{i theta}, exact on the coordinate axes.
std::complex<double> ray_point(double r, double theta);

}  // namespace irgrowth
