#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "irgrowth/borel_transform.hpp"
#include "irgrowth/log_complex.hpp"

namespace irgrowth {

// center + radius e^{i(phase + 2 pi turns tau)}, tau in [0, 1].
struct Circle {
  std::complex<double> center{};
  double radius = 1.0;
  int turns = 1;
  double phase = -kPi;
};

// (r_start + (r_end - r_start) tau) e^{i(angle_start + (angle_end - angle_start) tau)}.
struct SpiralArc {
  double r_start = 1.0;
  double r_end = 1.0;
  double angle_start = 0.0;
  double angle_end = 0.0;
};

// a + (b - a) tau.
struct LineSegment {
  std::complex<double> a{};
  std::complex<double> b{};
};

using PathSegment = std::variant<Circle, SpiralArc, LineSegment>;

std::complex<double> segment_point(const PathSegment& seg, double tau);
std::complex<double> segment_derivative(const PathSegment& seg, double tau);
// Smallest modulus attained on the segment.
double segment_min_modulus(const PathSegment& seg);
bool segment_is_full_circle(const PathSegment& seg);
double segment_length(const PathSegment& seg);

class Contour {
 public:
  static constexpr double kEndpointTol = 1e-12;

  Contour(std::vector<PathSegment> segments, bool closed);

  const std::vector<PathSegment>& segments() const { return segments_; }
  bool closed() const { return closed_; }

  double min_modulus() const;
  // Winding number about the origin, rounded to an integer (closed contours).
  int winding_number() const;

  // Throws DomainError if the path dips below min_modulus or, when closed,
  // if endpoints fail to meet or the winding number about 0 is not +1.
  void validate(double min_modulus) const;

  static Contour circle(double radius);
  // gamma(t) = (3.5 - t/2) e^{i pi t}, t in [-1, 1]: from -4 once
  // counterclockwise around the origin to -3.
  static Contour gamma_arc();
  // The segment [-4, -3] traversed from -3 to -4.
  static Contour interval_i();
  // gamma followed by I: closed, winding once counterclockwise.
  static Contour gamma_closed();

 private:
  std::vector<PathSegment> segments_;
  bool closed_;
};

struct QuadratureSpec {
  enum class Rule { trapezoid_periodic, gauss_panels };

  // Rule for full circles. Open segments always use Gauss panels.
  Rule rule = Rule::trapezoid_periodic;
  int points_per_panel = 16;
  // Starting node count (trapezoid) or panel count (Gauss).
  int initial_panels = 32;
  double target_rel_tol = 1e-12;
  int max_refinements = 10;
  // Largest |z| accepted by F_eval.
  double cancellation_cap = 40.0;

  void validate() const;
};

struct IntegrationResult {
  std::complex<double> value;
  // The same value before rounding to binary64. Sums of integrals that
  // cancel (F + u near Re z = -8) need these extra bits.
  std::complex<long double> extended;
  double error_estimate = 0.0;
  std::size_t nodes = 0;
};

using ComplexFunction = std::function<std::complex<double>(std::complex<double>)>;

// (1/(2 pi i)) int_path g(s) e^{z s} ds. Each segment is refined by doubling
// until |I_new - I_old| <= target_rel_tol |I_new| + roundoff floor, where the
// floor is 64 eps times int |g e^{zs}| |ds| / (2 pi) (the cancellation level
// binary64 cannot resolve). Throws NonConvergence with the last two values.
IntegrationResult integrate(const ComplexFunction& g, const Contour& path,
                            std::complex<double> z, const QuadratureSpec& spec);
// The integrand kernel runs in x87 extended precision; this overload also
// evaluates g in extended precision.
IntegrationResult integrate(const BorelEvaluator& g, const Contour& path,
                            std::complex<double> z, const QuadratureSpec& spec);

// Same integral returned as e^{z shift} * value: the exponential is evaluated
// as e^{z (s - shift)} so results far outside binary64 range stay finite.
struct ScaledIntegral {
  IntegrationResult scaled;
  std::complex<double> shift;
  LogComplex to_log(std::complex<double> z) const;
};
ScaledIntegral integrate_scaled(const ComplexFunction& g, const Contour& path,
                                std::complex<double> z, std::complex<double> shift,
                                const QuadratureSpec& spec);
ScaledIntegral integrate_scaled(const BorelEvaluator& g, const Contour& path,
                                std::complex<double> z, std::complex<double> shift,
                                const QuadratureSpec& spec);

// Borel inversion over |s| = radius, radius in [2.5, 8]. Equals f(z).
IntegrationResult borel_inversion(std::complex<double> z, double radius,
                                  const QuadratureSpec& spec = {},
                                  const BorelEvaluator& g = BorelEvaluator{});

// u(z) = (1/(2 pi i)) int_I g(s) e^{zs} ds, I from -3 to -4.
IntegrationResult u_eval(std::complex<double> z, const QuadratureSpec& spec = {},
                         const BorelEvaluator& g = BorelEvaluator{});

// u in log form, valid far beyond binary64 range of e^{zs}. For
// |Re z| > kGradedThreshold, I is split into pieces graded toward the
// endpoint where |e^{zs}| peaks, and pieces whose bound is below e^{-60}
// times the running sum are skipped.
inline constexpr double kGradedThreshold = 32.0;

LogComplex u_eval_log(std::complex<double> z, const QuadratureSpec& spec = {},
                      const BorelEvaluator& g = BorelEvaluator{});

// F(z) = (1/(2 pi i)) int_gamma g(s) e^{zs} ds. Refuses |z| above
// spec.cancellation_cap with DomainError.
IntegrationResult F_eval(std::complex<double> z, const QuadratureSpec& spec = {},
                         const BorelEvaluator& g = BorelEvaluator{});

// |F + u - f| with F and u summed before rounding to binary64.
double splitting_residual(const IntegrationResult& F, const IntegrationResult& u,
                          std::complex<double> f);

// Bound (1/2pi) max_I |g| |I| e^{-3x} = 0.0502 e^{-3x} on |u(x)|, x >= 0.
inline constexpr double kUDecayConstant = 0.0502;

class ProductEvaluator;

// F = f - u in log form, usable far beyond the cancellation cap. u is dropped
// only where its decay bound is below e^{-50} |f(z)|.
LogComplex F_via_identity(std::complex<double> z, const ProductEvaluator& f,
                          const QuadratureSpec& spec = {},
                          const BorelEvaluator& g = BorelEvaluator{});

}  // namespace irgrowth
