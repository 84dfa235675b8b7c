#include "irgrowth/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "irgrowth/errors.hpp"
#include "irgrowth/canonical_product.hpp"

namespace irgrowth {

namespace {

using real_x = long double;
using complex_x = std::complex<long double>;

constexpr std::complex<double> kI{0.0, 1.0};
constexpr complex_x kIx{0.0L, 1.0L};
constexpr real_x kPiX = 3.141592653589793238462643383279502884L;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFloorUlps = 64.0;

// e^{i pi t}, exact at multiples of 1/2.
complex_x unit_phase_pi(real_x t) {
  t = std::remainder(t, 2.0L);  // [-1, 1]
  if (t == 0.0L) return {1.0L, 0.0L};
  if (t == 1.0L || t == -1.0L) return {-1.0L, 0.0L};
  if (t == 0.5L) return {0.0L, 1.0L};
  if (t == -0.5L) return {0.0L, -1.0L};
  return {std::cos(kPiX * t), std::sin(kPiX * t)};
}

// Segment geometry in extended precision. Angles are carried in units of pi
// so that the binary64 endpoints +-kPi map onto exact half turns and
// consecutive segments close up exactly.
struct Node {
  complex_x point;
  complex_x derivative;
};

Node segment_node(const PathSegment& seg, real_x tau) {
  return std::visit(
      [tau](const auto& s) -> Node {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          const real_x t0 = static_cast<real_x>(s.phase) / static_cast<real_x>(kPi);
          const complex_x rel =
              static_cast<real_x>(s.radius) * unit_phase_pi(t0 + 2.0L * s.turns * tau);
          const complex_x c{s.center.real(), s.center.imag()};
          return {c + rel, kIx * (2.0L * kPiX * s.turns) * rel};
        } else if constexpr (std::is_same_v<T, SpiralArc>) {
          const real_x t0 = static_cast<real_x>(s.angle_start) / static_cast<real_x>(kPi);
          const real_x t1 = static_cast<real_x>(s.angle_end) / static_cast<real_x>(kPi);
          const real_x dr = static_cast<real_x>(s.r_end) - static_cast<real_x>(s.r_start);
          const real_x r = static_cast<real_x>(s.r_start) + dr * tau;
          const complex_x e = unit_phase_pi(t0 + (t1 - t0) * tau);
          return {r * e, (dr + kIx * r * (kPiX * (t1 - t0))) * e};
        } else {
          const complex_x a{s.a.real(), s.a.imag()};
          const complex_x b{s.b.real(), s.b.imag()};
          return {a + (b - a) * tau, b - a};
        }
      },
      seg);
}

struct GaussRule {
  std::vector<real_x> nodes;    // on [-1, 1]
  std::vector<real_x> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_n.
GaussRule make_gauss_rule(int n) {
  GaussRule rule{std::vector<real_x>(n), std::vector<real_x>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    real_x x = std::cos(kPiX * (i + 0.75L) / (n + 0.5L));
    real_x dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      real_x p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const real_x p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0L;
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const real_x dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-20L) break;
    }
    const real_x w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0L;
  return rule;
}

const GaussRule& gauss_rule(int n) {
  static const std::array<GaussRule, 65> rules = [] {
    std::array<GaussRule, 65> r;
    for (int k = 1; k <= 64; ++k) r[k] = make_gauss_rule(k);
    return r;
  }();
  if (n < 1 || n > 64) throw std::invalid_argument("points_per_panel must lie in [1, 64]");
  return rules[n];
}

using ExtendedFunction = std::function<complex_x(complex_x)>;

struct Sums {
  CompensatedSum<complex_x> value;
  CompensatedSum<real_x> magnitude;
};

struct Integrand {
  const ExtendedFunction& g;
  const PathSegment& seg;
  complex_x z;
  complex_x shift;

  // w * g(s) e^{z(s - shift)} s'(tau); |.| feeds the roundoff floor.
  void accumulate(real_x tau, real_x w, Sums& sums) const {
    const Node nd = segment_node(seg, tau);
    const complex_x v = g(nd.point) * std::exp(z * (nd.point - shift)) * nd.derivative * w;
    sums.value.add(v);
    sums.magnitude.add(std::abs(v));
  }
};

std::complex<double> narrow(complex_x v) {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

void check_finite(complex_x v) {
  if (!std::isfinite(static_cast<double>(v.real())) ||
      !std::isfinite(static_cast<double>(v.imag()))) {
    throw DomainError("contour integrand overflowed; use a scaled integral");
  }
}

bool converged(complex_x prev, complex_x cur, real_x mag, double rel_tol) {
  const real_x err = std::abs(cur - prev);
  return err <= rel_tol * std::abs(cur) + kFloorUlps * kEps * mag;
}

struct SegmentResult {
  complex_x value;
  double error_estimate;
  std::size_t nodes;
};

SegmentResult integrate_periodic(const Integrand& f, const QuadratureSpec& spec) {
  // Trapezoid on [0, 1); each refinement adds the midpoints of the previous grid.
  std::size_t n = static_cast<std::size_t>(std::max(spec.initial_panels, 4));
  Sums sums;
  for (std::size_t j = 0; j < n; ++j) {
    f.accumulate(static_cast<real_x>(j) / static_cast<real_x>(n), 1.0L, sums);
  }
  complex_x prev = sums.value.value() / static_cast<real_x>(n);
  check_finite(prev);
  for (int level = 0; level < spec.max_refinements; ++level) {
    for (std::size_t j = 0; j < n; ++j) {
      f.accumulate((2.0L * static_cast<real_x>(j) + 1.0L) / (2.0L * static_cast<real_x>(n)),
                   1.0L, sums);
    }
    n *= 2;
    const complex_x cur = sums.value.value() / static_cast<real_x>(n);
    const real_x mag = sums.magnitude.value() / static_cast<real_x>(n);
    check_finite(cur);
    if (converged(prev, cur, mag, spec.target_rel_tol)) {
      return {cur, static_cast<double>(std::abs(cur - prev)), n};
    }
    if (level + 1 == spec.max_refinements) {
      throw NonConvergence("periodic trapezoid did not converge after " +
                               std::to_string(spec.max_refinements) + " refinements",
                           narrow(prev), narrow(cur));
    }
    prev = cur;
  }
  throw NonConvergence("periodic trapezoid needs at least one refinement", narrow(prev),
                       narrow(prev));
}

SegmentResult integrate_panels(const Integrand& f, const QuadratureSpec& spec) {
  const GaussRule& rule = gauss_rule(spec.points_per_panel);
  auto pass = [&](std::size_t panels, real_x& mag) {
    Sums sums;
    const real_x h = 1.0L / static_cast<real_x>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const real_x mid = (static_cast<real_x>(p) + 0.5L) * h;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        f.accumulate(mid + 0.5L * h * rule.nodes[q], 0.5L * h * rule.weights[q], sums);
      }
    }
    mag = sums.magnitude.value();
    return sums.value.value();
  };

  std::size_t panels = static_cast<std::size_t>(std::max(spec.initial_panels, 1));
  real_x mag = 0.0L;
  complex_x prev = pass(panels, mag);
  check_finite(prev);
  for (int level = 0; level < spec.max_refinements; ++level) {
    panels *= 2;
    const complex_x cur = pass(panels, mag);
    check_finite(cur);
    if (converged(prev, cur, mag, spec.target_rel_tol)) {
      return {cur, static_cast<double>(std::abs(cur - prev)), panels * rule.nodes.size()};
    }
    if (level + 1 == spec.max_refinements) {
      throw NonConvergence("Gauss panels did not converge after " +
                               std::to_string(spec.max_refinements) + " refinements",
                           narrow(prev), narrow(cur));
    }
    prev = cur;
  }
  throw NonConvergence("Gauss panels need at least one refinement", narrow(prev), narrow(prev));
}

IntegrationResult integrate_raw(const ExtendedFunction& g, const Contour& path,
                                std::complex<double> z, std::complex<double> shift,
                                const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("contour integral needs finite z");
  }
  const complex_x zx{z.real(), z.imag()};
  const complex_x shiftx{shift.real(), shift.imag()};
  IntegrationResult total{};
  CompensatedSum<complex_x> acc;
  for (const PathSegment& seg : path.segments()) {
    const Integrand f{g, seg, zx, shiftx};
    SegmentResult part;
    if (segment_is_full_circle(seg) && spec.rule == QuadratureSpec::Rule::trapezoid_periodic) {
      part = integrate_periodic(f, spec);
    } else {
      // Start with panels spanning at most ~8 units of exponent variation.
      QuadratureSpec local = spec;
      const double needed = std::ceil(std::abs(z) * segment_length(seg) / 8.0);
      local.initial_panels = static_cast<int>(
          std::min(65536.0, std::max<double>(spec.initial_panels, needed)));
      part = integrate_panels(f, local);
    }
    acc.add(part.value);
    total.error_estimate += part.error_estimate;
    total.nodes += part.nodes;
  }
  // 1/(2 pi i)
  total.extended = acc.value() / (2.0L * kPiX * kIx);
  total.value = narrow(total.extended);
  total.error_estimate /= kTwoPi;
  return total;
}

ExtendedFunction widen(const ComplexFunction& g) {
  return [&g](complex_x s) {
    const std::complex<double> v =
        g({static_cast<double>(s.real()), static_cast<double>(s.imag())});
    return complex_x{v.real(), v.imag()};
  };
}

ExtendedFunction widen(const BorelEvaluator& g) {
  return [&g](complex_x s) { return g.evaluate_extended(s); };
}

}  // namespace

std::complex<double> segment_point(const PathSegment& seg, double tau) {
  return narrow(segment_node(seg, tau).point);
}

std::complex<double> segment_derivative(const PathSegment& seg, double tau) {
  return narrow(segment_node(seg, tau).derivative);
}

double segment_min_modulus(const PathSegment& seg) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return std::abs(s.radius - std::abs(s.center));
        } else if constexpr (std::is_same_v<T, SpiralArc>) {
          return std::min(s.r_start, s.r_end);
        } else {
          const std::complex<double> d = s.b - s.a;
          const double len2 = std::norm(d);
          if (len2 == 0.0) return std::abs(s.a);
          const double t = std::clamp(-(std::conj(d) * s.a).real() / len2, 0.0, 1.0);
          return std::abs(s.a + d * t);
        }
      },
      seg);
}

double segment_length(const PathSegment& seg) {
  if (const auto* c = std::get_if<Circle>(&seg)) return kTwoPi * c->radius * std::abs(c->turns);
  if (const auto* l = std::get_if<LineSegment>(&seg)) return std::abs(l->b - l->a);
  constexpr int kSteps = 256;
  double total = 0.0;
  for (int i = 0; i < kSteps; ++i) {
    total += std::abs(segment_point(seg, (i + 1.0) / kSteps) - segment_point(seg, double(i) / kSteps));
  }
  return total;
}

bool segment_is_full_circle(const PathSegment& seg) {
  return std::holds_alternative<Circle>(seg);
}

Contour::Contour(std::vector<PathSegment> segments, bool closed)
    : segments_(std::move(segments)), closed_(closed) {
  if (segments_.empty()) throw std::invalid_argument("contour needs at least one segment");
}

double Contour::min_modulus() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& seg : segments_) m = std::min(m, segment_min_modulus(seg));
  return m;
}

int Contour::winding_number() const {
  // Sum of argument increments over a fine sampling of every segment.
  double total = 0.0;
  for (const auto& seg : segments_) {
    constexpr int kSteps = 4096;
    std::complex<double> prev = segment_point(seg, 0.0);
    for (int i = 1; i <= kSteps; ++i) {
      const std::complex<double> cur = segment_point(seg, static_cast<double>(i) / kSteps);
      total += std::arg(cur / prev);
      prev = cur;
    }
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

void Contour::validate(double min_modulus) const {
  if (this->min_modulus() < min_modulus) {
    throw DomainError("contour leaves the region |s| >= " + std::to_string(min_modulus));
  }
  if (!closed_) return;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& a = segments_[i];
    const auto& b = segments_[(i + 1) % segments_.size()];
    if (std::abs(segment_point(a, 1.0) - segment_point(b, 0.0)) > kEndpointTol) {
      throw DomainError("closed contour has a gap between consecutive segments");
    }
  }
  if (winding_number() != 1) {
    throw DomainError("closed contour must wind once counterclockwise about 0");
  }
}

Contour Contour::circle(double radius) {
  return Contour({Circle{{}, radius, 1, -kPi}}, true);
}

Contour Contour::gamma_arc() {
  return Contour({SpiralArc{4.0, 3.0, -kPi, kPi}}, false);
}

Contour Contour::interval_i() {
  return Contour({LineSegment{{-3.0, 0.0}, {-4.0, 0.0}}}, false);
}

Contour Contour::gamma_closed() {
  return Contour({SpiralArc{4.0, 3.0, -kPi, kPi}, LineSegment{{-3.0, 0.0}, {-4.0, 0.0}}}, true);
}

void QuadratureSpec::validate() const {
  if (!(target_rel_tol >= 1e-13)) throw std::invalid_argument("target_rel_tol must be >= 1e-13");
  if (initial_panels < 1) throw std::invalid_argument("initial_panels must be >= 1");
  if (max_refinements < 1) throw std::invalid_argument("max_refinements must be >= 1");
  if (points_per_panel < 1 || points_per_panel > 64) {
    throw std::invalid_argument("points_per_panel must lie in [1, 64]");
  }
  if (!(cancellation_cap > 0.0)) throw std::invalid_argument("cancellation_cap must be > 0");
}

IntegrationResult integrate(const ComplexFunction& g, const Contour& path,
                            std::complex<double> z, const QuadratureSpec& spec) {
  return integrate_raw(widen(g), path, z, {}, spec);
}

IntegrationResult integrate(const BorelEvaluator& g, const Contour& path,
                            std::complex<double> z, const QuadratureSpec& spec) {
  return integrate_raw(widen(g), path, z, {}, spec);
}

LogComplex ScaledIntegral::to_log(std::complex<double> z) const {
  const std::complex<double> e = z * shift;
  return lc_mul(LogComplex::from_complex(scaled.value), LogComplex::polar(e.real(), e.imag()));
}

ScaledIntegral integrate_scaled(const ComplexFunction& g, const Contour& path,
                                std::complex<double> z, std::complex<double> shift,
                                const QuadratureSpec& spec) {
  return {integrate_raw(widen(g), path, z, shift, spec), shift};
}

ScaledIntegral integrate_scaled(const BorelEvaluator& g, const Contour& path,
                                std::complex<double> z, std::complex<double> shift,
                                const QuadratureSpec& spec) {
  return {integrate_raw(widen(g), path, z, shift, spec), shift};
}

IntegrationResult borel_inversion(std::complex<double> z, double radius,
                                  const QuadratureSpec& spec, const BorelEvaluator& g) {
  if (!(radius >= 2.5 && radius <= 8.0)) {
    throw DomainError("Borel inversion radius must lie in [2.5, 8]");
  }
  const Contour path = Contour::circle(radius);
  path.validate(g.min_modulus());
  return integrate(g, path, z, spec);
}

IntegrationResult u_eval(std::complex<double> z, const QuadratureSpec& spec,
                         const BorelEvaluator& g) {
  const Contour path = Contour::interval_i();
  path.validate(g.min_modulus());
  return integrate(g, path, z, spec);
}

LogComplex u_eval_log(std::complex<double> z, const QuadratureSpec& spec,
                      const BorelEvaluator& g) {
  const Contour path = Contour::interval_i();
  path.validate(g.min_modulus());
  // Scale by the endpoint where |e^{zs}| is largest.
  const double anchor = z.real() >= 0.0 ? -3.0 : -4.0;
  const double decay = std::abs(z.real());
  if (decay <= kGradedThreshold) return integrate_scaled(g, path, z, anchor, spec).to_log(z);

  // |e^{z(s - anchor)}| = e^{-decay t} at distance t from the anchor. Pieces
  // double in length away from the anchor; the rest of I is dropped once
  // 0.0502 e^{-decay t} (which bounds it) falls e^{-60} below the sum.
  const double dir = anchor == -3.0 ? -1.0 : 1.0;
  LogComplex total = LogComplex::zero();
  double t0 = 0.0, step = 8.0 / decay;
  while (t0 < 1.0) {
    const double bound = std::log(kUDecayConstant) + (z * anchor).real() - decay * t0;
    if (!total.is_zero() && bound < total.log_mag - 60.0) break;
    const double t1 = std::min(1.0, t0 + step);
    // Each piece keeps the orientation of I, from -3 toward -4.
    const double near = anchor + dir * t0, far = anchor + dir * t1;
    const Contour piece({dir < 0.0 ? LineSegment{{near, 0.0}, {far, 0.0}}
                                   : LineSegment{{far, 0.0}, {near, 0.0}}},
                        false);
    total = lc_add(total, integrate_scaled(g, piece, z, anchor, spec).to_log(z));
    t0 = t1;
    step *= 2.0;
  }
  return total;
}

IntegrationResult F_eval(std::complex<double> z, const QuadratureSpec& spec,
                         const BorelEvaluator& g) {
  if (std::abs(z) > spec.cancellation_cap) {
    throw DomainError("|z| = " + std::to_string(std::abs(z)) +
                      " exceeds the cancellation cap " + std::to_string(spec.cancellation_cap) +
                      "; use F = f - u instead");
  }
  const Contour path = Contour::gamma_arc();
  path.validate(g.min_modulus());
  return integrate(g, path, z, spec);
}

double splitting_residual(const IntegrationResult& F, const IntegrationResult& u,
                          std::complex<double> f) {
  return static_cast<double>(std::abs(F.extended + u.extended - complex_x{f.real(), f.imag()}));
}

LogComplex F_via_identity(std::complex<double> z, const ProductEvaluator& f,
                          const QuadratureSpec& spec, const BorelEvaluator& g) {
  const LogComplex fz = f.eval_log(z);
  // |u(z)| <= 0.0502 e^{-3 Re z} for Re z >= 0. Skip u when that bound sits
  // far below the last bit of f.
  constexpr double kInvisible = 50.0;
  if (z.real() >= 0.0 && !fz.is_zero() &&
      std::log(kUDecayConstant) - 3.0 * z.real() < fz.log_mag - kInvisible) {
    return fz;
  }
  return lc_add(fz, lc_neg(u_eval_log(z, spec, g)));
}

}  // namespace irgrowth
