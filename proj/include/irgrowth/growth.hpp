#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "irgrowth/profile.hpp"

namespace irgrowth {

// Finite union of disjoint, sorted open-closed intervals in (0, inf).
// Overlapping or touching intervals are merged on insertion.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<std::pair<double, double>> intervals);

  void add(double lo, double hi);
  const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
  bool contains(double r) const;

  // Lebesgue measure of E ∩ (0, r).
  double measure_below(double r) const;

 private:
  std::vector<std::pair<double, double>> intervals_;
};

// lambda(E ∩ (0, r)) / r.
double relative_measure(const IntervalSet& e, double r);

struct WindowStats {
  int k = 0;          // window [2^k, 2^{k+1})
  double r_lo = 0.0;
  double r_hi = 0.0;
  double inf = 0.0;
  double q_low = 0.0;
  double q_high = 0.0;
  double sup = 0.0;
  std::size_t samples = 0;  // finite samples used

  double width() const { return q_high - q_low; }
  double midpoint() const { return 0.5 * (q_low + q_high); }
};

inline constexpr std::size_t kMinWindowSamples = 64;
inline constexpr std::size_t kMinWindows = 3;

// Per dyadic window: extremes and the q / (1 - q) quantiles of the finite
// profile values. Windows with fewer than min_samples finite values are
// skipped; fewer than kMinWindows qualifying windows throws
// InsufficientSamples.
std::vector<WindowStats> window_stats(const GrowthProfile& profile, double q,
                                      std::size_t min_samples = kMinWindowSamples);

enum class Verdict { regular, irregular, inconclusive };

std::string to_string(Verdict v);

struct ClassifyOptions {
  double q = 0.1;
  double gap_tol = 0.02;
  double drift_tol = 0.02;
  // Number of trailing windows judged; 0 means all qualifying windows.
  std::size_t trailing_windows = 4;
  std::size_t min_samples = kMinWindowSamples;
};

struct RegularityVerdict {
  std::string function_id;
  double theta = 0.0;
  Verdict verdict = Verdict::inconclusive;
  // regular: last window midpoint (the limit). Otherwise the smallest
  // trailing-window width.
  double limit_or_gap = 0.0;
  std::vector<int> windows;
  double q = 0.0;
  double gap_tol = 0.0;
  double drift_tol = 0.0;
};

// regular: every trailing window has width <= gap_tol and consecutive
// midpoints move by <= drift_tol. irregular: every trailing window has
// width >= 2 gap_tol. Anything else is inconclusive.
RegularityVerdict classify(const GrowthProfile& profile, const ClassifyOptions& opts = {});

struct TypeEstimate {
  double value = 0.0;   // max over theta of the top-window sup
  double theta = 0.0;   // direction attaining it
  double max_radius = 0.0;
};

// Finite-radius lower estimate of the type from profiles over >= 8 angles,
// each spanning >= 4 windows.
TypeEstimate type_estimate(std::span<const GrowthProfile> profiles,
                           std::size_t min_samples = kMinWindowSamples);

// Reference functions of known growth.
namespace controls {
// log|e^{2z}| = 2 Re z.
double log_abs_exp2z(std::complex<double> z);
// log|sin 2z|, stable for large |Im z|.
double log_abs_sin2z(std::complex<double> z);
}  // namespace controls

}  // namespace irgrowth
