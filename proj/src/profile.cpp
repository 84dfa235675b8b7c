#include "irgrowth/profile.hpp"

#include <cmath>
#include <stdexcept>

#include "irgrowth/log_complex.hpp"
#include "irgrowth/parallel.hpp"

namespace irgrowth {

void GrowthProfile::validate() const {
  if (radii.size() != values.size()) {
    throw std::invalid_argument("profile: radii and values differ in length");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw std::invalid_argument("profile: radius must be > 0");
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw std::invalid_argument("profile: radii must be strictly increasing");
    }
  }
}

std::vector<double> geometric_radii(double r_min, double r_max, int samples) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    throw std::invalid_argument("geometric_radii: need 0 < r_min < r_max");
  }
  if (samples < 2) throw std::invalid_argument("geometric_radii: samples >= 2");
  const double lo = std::log2(r_min);
  const double hi = std::log2(r_max);
  const double step = (hi - lo) / (samples - 1);
  std::vector<double> radii(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double e = lo + i * step;
    const double ip = std::floor(e);
    radii[static_cast<std::size_t>(i)] = std::ldexp(std::exp2(e - ip), static_cast<int>(ip));
  }
  radii.front() = r_min;
  radii.back() = r_max;
  return radii;
}

std::complex<double> ray_point(double r, double theta) { return r * unit_phase(theta); }

GrowthProfile sample_profile(const std::string& function_id, double theta,
                             const std::vector<double>& radii,
                             const std::function<double(std::complex<double>)>& log_abs) {
  GrowthProfile p{function_id, theta, radii, std::vector<double>(radii.size())};
  parallel_for(radii.size(), [&](std::size_t i) {
    p.values[i] = log_abs(ray_point(radii[i], theta)) / radii[i];
  });
  p.validate();
  return p;
}

}  // namespace irgrowth
