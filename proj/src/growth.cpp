#include "irgrowth/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "irgrowth/errors.hpp"

namespace irgrowth {

IntervalSet::IntervalSet(std::initializer_list<std::pair<double, double>> intervals) {
  for (const auto& [lo, hi] : intervals) add(lo, hi);
}

void IntervalSet::add(double lo, double hi) {
  if (!(lo >= 0.0) || !(hi > lo)) {
    throw std::invalid_argument("IntervalSet: need 0 <= lo < hi");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(intervals_.size() + 1);
  bool placed = false;
  for (const auto& iv : intervals_) {
    if (iv.second < lo) {
      out.push_back(iv);
    } else if (hi < iv.first) {
      if (!placed) {
        out.emplace_back(lo, hi);
        placed = true;
      }
      out.push_back(iv);
    } else {
      lo = std::min(lo, iv.first);
      hi = std::max(hi, iv.second);
    }
  }
  if (!placed) out.emplace_back(lo, hi);
  intervals_ = std::move(out);
}

bool IntervalSet::contains(double r) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [r](const auto& iv) { return r > iv.first && r <= iv.second; });
}

double IntervalSet::measure_below(double r) const {
  double total = 0.0;
  for (const auto& [lo, hi] : intervals_) {
    if (lo >= r) break;
    total += std::min(hi, r) - lo;
  }
  return total;
}

double relative_measure(const IntervalSet& e, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("relative_measure needs r > 0");
  return e.measure_below(r) / r;
}

namespace {

// Linear-interpolation quantile of sorted data.
double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(i);
  if (i + 1 >= sorted.size()) return sorted.back();
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

int window_index(double r) {
  int e = 0;
  std::frexp(r, &e);
  return e - 1;
}

}  // namespace

std::vector<WindowStats> window_stats(const GrowthProfile& profile, double q,
                                      std::size_t min_samples) {
  profile.validate();
  if (!(q > 0.0 && q < 0.5)) throw std::invalid_argument("quantile fraction q must lie in (0, 0.5)");

  std::vector<WindowStats> out;
  std::size_t i = 0;
  const std::size_t n = profile.radii.size();
  while (i < n) {
    const int k = window_index(profile.radii[i]);
    std::vector<double> vals;
    while (i < n && window_index(profile.radii[i]) == k) {
      const double v = profile.values[i];
      if (std::isfinite(v)) vals.push_back(v);
      ++i;
    }
    if (vals.size() < min_samples) continue;
    std::sort(vals.begin(), vals.end());
    WindowStats w;
    w.k = k;
    w.r_lo = std::ldexp(1.0, k);
    w.r_hi = std::ldexp(1.0, k + 1);
    w.inf = vals.front();
    w.sup = vals.back();
    w.q_low = quantile(vals, q);
    w.q_high = quantile(vals, 1.0 - q);
    w.samples = vals.size();
    out.push_back(w);
  }
  if (out.size() < kMinWindows) {
    throw InsufficientSamples("profile '" + profile.function_id + "' spans " +
                              std::to_string(out.size()) + " dyadic windows with >= " +
                              std::to_string(min_samples) + " finite samples; need " +
                              std::to_string(kMinWindows));
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::regular: return "regular";
    case Verdict::irregular: return "irregular";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

RegularityVerdict classify(const GrowthProfile& profile, const ClassifyOptions& opts) {
  if (!(opts.gap_tol > 0.0) || !(opts.drift_tol >= 0.0)) {
    throw std::invalid_argument("classify: gap_tol must be > 0 and drift_tol >= 0");
  }
  const auto stats = window_stats(profile, opts.q, opts.min_samples);
  const std::size_t use = opts.trailing_windows == 0
                              ? stats.size()
                              : std::min(opts.trailing_windows, stats.size());
  const std::span<const WindowStats> tail(stats.data() + (stats.size() - use), use);

  RegularityVerdict out;
  out.function_id = profile.function_id;
  out.theta = profile.theta;
  out.q = opts.q;
  out.gap_tol = opts.gap_tol;
  out.drift_tol = opts.drift_tol;
  for (const auto& w : tail) out.windows.push_back(w.k);

  bool narrow = true;
  bool wide = true;
  double min_width = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const double width = tail[i].width();
    min_width = std::min(min_width, width);
    narrow = narrow && width <= opts.gap_tol;
    wide = wide && width >= 2.0 * opts.gap_tol;
    if (i > 0 && std::abs(tail[i].midpoint() - tail[i - 1].midpoint()) > opts.drift_tol) {
      narrow = false;
    }
  }
  if (narrow) {
    out.verdict = Verdict::regular;
    out.limit_or_gap = tail.back().midpoint();
  } else {
    out.verdict = wide ? Verdict::irregular : Verdict::inconclusive;
    out.limit_or_gap = min_width;
  }
  return out;
}

TypeEstimate type_estimate(std::span<const GrowthProfile> profiles, std::size_t min_samples) {
  if (profiles.size() < 8) throw std::invalid_argument("type_estimate needs >= 8 angles");
  TypeEstimate best{-std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (const auto& p : profiles) {
    const auto stats = window_stats(p, 0.1, min_samples);
    if (stats.size() < 4) {
      throw InsufficientSamples("type_estimate needs profiles spanning >= 4 windows");
    }
    if (stats.back().sup > best.value) best.value = stats.back().sup, best.theta = p.theta;
    best.max_radius = std::max(best.max_radius, p.radii.back());
  }
  return best;
}

namespace controls {

double log_abs_exp2z(std::complex<double> z) { return 2.0 * z.real(); }

double log_abs_sin2z(std::complex<double> z) {
  // |sin(x + iy)|^2 = sin^2 x + sinh^2 y.
  const double x = 2.0 * z.real();
  const double y = std::abs(2.0 * z.imag());
  const double sx = std::sin(x);
  if (y < 20.0) {
    const double m2 = sx * sx + std::sinh(y) * std::sinh(y);
    return m2 == 0.0 ? -std::numeric_limits<double>::infinity() : 0.5 * std::log(m2);
  }
  // log sinh y = y - log 2 + log1p(-e^{-2y})
  const double log_sinh = y - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * y));
  return log_sinh + 0.5 * std::log1p(sx * sx * std::exp(-2.0 * log_sinh));
}

}  // namespace controls

}  // namespace irgrowth
