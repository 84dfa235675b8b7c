#include "app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <variant>

#include <nlohmann/json.hpp>

#include "app/output.hpp"
#include "app/svg.hpp"
#include "irgrowth/borel_transform.hpp"
#include "irgrowth/canonical_product.hpp"
#include "irgrowth/contour.hpp"
#include "irgrowth/errors.hpp"
#include "irgrowth/growth.hpp"
#include "irgrowth/parallel.hpp"
#include "irgrowth/profile.hpp"
#include "irgrowth/zero_lattice.hpp"

namespace irgrowth::app {

namespace {

namespace fs = std::filesystem;

using Field = std::variant<double, long long, std::string, std::vector<int>>;
using Record = std::vector<std::pair<std::string, Field>>;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// One stdout record: a JSON object line, or a CSV header plus one row.
void emit(const RunConfig& cfg, const Record& rec, std::ostream& out) {
  if (cfg.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, value] : rec) {
      std::visit(Overloaded{
                     [&](double d) {
                       if (std::isfinite(d)) j[key] = d + 0.0;  // drops the sign of zero
                       else j[key] = format_number(d);
                     },
                     [&](long long i) { j[key] = i; },
                     [&](const std::string& s) { j[key] = s; },
                     [&](const std::vector<int>& v) { j[key] = v; },
                 },
                 value);
    }
    out << j.dump() << '\n';
    return;
  }
  std::string header, row;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const auto& [key, value] = rec[i];
    const std::string sep = i ? "," : "";
    header += sep + key;
    std::string cell = std::visit(
        Overloaded{
            [](double d) { return format_number(d); },
            [](long long i) { return format_number(i); },
            [](const std::string& s) { return s; },
            [](const std::vector<int>& v) {
              std::string s;
              for (int k : v) s += (s.empty() ? "" : ";") + std::to_string(k);
              return s;
            },
        },
        value);
    row += sep + cell;
  }
  out << header << '\n' << row << '\n';
}

std::string fmt(double x) { return format_number(x); }

std::string short_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec || !fs::is_directory(cfg.out_dir)) {
    throw UsageError("cannot create output directory " + cfg.out_dir.string());
  }
  return cfg.out_dir;
}

ProductEvaluator make_product(const RunConfig& cfg) { return ProductEvaluator{ZeroLattice{cfg.k_max}}; }

std::vector<double> profile_radii(const RunConfig& cfg) {
  return geometric_radii(cfg.r_min, cfg.r_max, cfg.profile_samples());
}

GrowthProfile make_profile(const RunConfig& cfg, const std::string& id, double theta) {
  const ProductEvaluator f = make_product(cfg);
  const std::vector<double> radii = profile_radii(cfg);
  const QuadratureSpec spec = cfg.quadrature();
  const BorelEvaluator g;
  if (id == "f") return f.growth_profile(theta, cfg.r_min, cfg.r_max, cfg.profile_samples());
  if (id == "M_f") return f.max_modulus_profile(radii, cfg.n_theta);
  if (id == "F") {
    return sample_profile("F", theta, radii, [&](std::complex<double> z) {
      return F_via_identity(z, f, spec, g).log_mag;
    });
  }
  if (id == "u") {
    return sample_profile("u", theta, radii,
                          [&](std::complex<double> z) { return u_eval_log(z, spec, g).log_mag; });
  }
  if (id == "exp2z") return sample_profile("exp2z", theta, radii, controls::log_abs_exp2z);
  if (id == "sin2z") return sample_profile("sin2z", theta, radii, controls::log_abs_sin2z);
  throw UsageError("unknown function '" + id + "'");
}

void write_profile_rows(CsvWriter& csv, const GrowthProfile& p) {
  for (std::size_t i = 0; i < p.radii.size(); ++i) {
    csv.row({p.function_id, fmt(p.theta), fmt(p.radii[i]), fmt(p.values[i])});
  }
}

CsvWriter profile_csv(const fs::path& dir) {
  return CsvWriter(dir / "profile.csv", {"function_id", "theta", "r", "value"});
}

CsvWriter windows_csv(const fs::path& dir) {
  return CsvWriter(dir / "windows.csv",
                   {"function_id", "theta", "k", "r_lo", "r_hi", "inf", "q_low", "q_high", "sup"});
}

void write_window_rows(CsvWriter& csv, const std::string& id, double theta,
                       const std::vector<WindowStats>& stats) {
  for (const auto& w : stats) {
    csv.row({id, fmt(theta), std::to_string(w.k), fmt(w.r_lo), fmt(w.r_hi), fmt(w.inf),
             fmt(w.q_low), fmt(w.q_high), fmt(w.sup)});
  }
}

ClassifyOptions classify_options(const RunConfig& cfg) {
  ClassifyOptions o;
  o.q = cfg.q;
  o.gap_tol = cfg.gap_tol;
  o.drift_tol = cfg.drift_tol;
  return o;
}

Record verdict_record(const RegularityVerdict& v) {
  return {{"function_id", v.function_id}, {"theta", v.theta},
          {"verdict", to_string(v.verdict)}, {"limit_or_gap", v.limit_or_gap},
          {"windows", v.windows},         {"q", v.q},
          {"gap_tol", v.gap_tol},         {"drift_tol", v.drift_tol}};
}

std::string verdict_json(const RegularityVerdict& v) {
  RunConfig json_cfg;
  json_cfg.format = "json";
  std::ostringstream s;
  emit(json_cfg, verdict_record(v), s);
  return s.str();
}

// Lattice counting grid: eight log-spaced points per octave plus the
// 1.5 * 2^{k-1} starts of the bounded windows.
std::vector<double> counting_grid(int k_max) {
  std::vector<double> rs;
  for (int k = 1; k <= k_max; ++k) {
    for (int i = 0; i < 8; ++i) rs.push_back(std::ldexp(std::exp2(i / 8.0), k));
    rs.push_back(1.5 * std::ldexp(1.0, k - 1));
  }
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  std::erase_if(rs, [&](double r) { return r > std::ldexp(1.0, k_max); });
  return rs;
}

// r lies in [1.5 * 2^{k-1}, 2^k) for some k >= 1.
bool in_bounded_window(double r) {
  int e = 0;
  const double m = std::frexp(r, &e);  // r = m 2^e, m in [0.5, 1)
  return m >= 0.75;
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

Check check_counting(const ZeroLattice& lattice) {
  bool exact = true, increasing = true;
  double sup = 0.0;
  for (int k = 1; k <= lattice.k_max(); ++k) {
    const std::int64_t n = lattice.counting(std::ldexp(1.0, k));
    exact = exact && n == (std::int64_t{1} << (k + 1)) - 2;
    const double ratio = lattice.normalized_count(std::ldexp(1.0, k));
    if (k > 1) increasing = increasing && ratio > lattice.normalized_count(std::ldexp(1.0, k - 1));
    sup = std::max(sup, ratio);
  }
  const bool pass = exact && increasing && sup <= 2.0;
  return {"counting function n(2^k) = 2^{k+1} - 2", pass,
          "k = 1.." + std::to_string(lattice.k_max()) + ", sup n(2^k)/2^k = " + fmt(sup) +
              (exact ? "" : ", closed form mismatch") + (increasing ? "" : ", not increasing")};
}

Check check_bounded_windows(const ZeroLattice& lattice) {
  constexpr int kGrid = 10000;
  double worst = 0.0;
  for (int k = 2; k <= lattice.k_max(); ++k) {
    const double lo = 1.5 * std::ldexp(1.0, k - 1), hi = std::ldexp(1.0, k);
    for (int i = 0; i < kGrid; ++i) {
      const double r = lo + (hi - lo) * (static_cast<double>(i) / kGrid);
      worst = std::max(worst, lattice.normalized_count(r));
    }
  }
  return {"n(r)/r <= 4/3 on [1.5 * 2^{k-1}, 2^k)", worst <= 4.0 / 3.0,
          "k = 2.." + std::to_string(lattice.k_max()) + ", 10^4 points each, max = " + fmt(worst)};
}

Check check_reciprocal_sums(const ZeroLattice& lattice) {
  const int top = std::min(12, lattice.k_max());
  const int r_max = 1 << top;
  std::vector<double> mags(static_cast<std::size_t>(r_max - 1));
  parallel_for(mags.size(), [&](std::size_t i) {
    mags[i] = std::abs(lattice.reciprocal_sum(static_cast<double>(i + 2)));
  });
  const double worst = *std::max_element(mags.begin(), mags.end());
  return {"reciprocal sums vanish", worst <= 1e-12,
          "r = 2.." + std::to_string(r_max) + ", max |sum 1/a| = " + fmt(worst)};
}

Check check_product_oracle(const RunConfig& cfg, const ProductEvaluator& f) {
  const auto zs = random_points(cfg.seed + 4, 100, 1.0, 50.0);
  std::vector<double> errs(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) {
    const int k_cut = std::min(f.cutoff(zs[i]), f.lattice().k_max());
    const auto closed = f.eval_log_truncated(zs[i], k_cut).to_complex();
    const auto direct = f.eval_log_direct(zs[i], k_cut).to_complex();
    errs[i] = std::abs(closed - direct) / std::max(std::abs(closed), std::abs(direct));
  }, 1);
  const double worst = *std::max_element(errs.begin(), errs.end());
  return {"closed form agrees with the per-zero product", worst <= 1e-10,
          "100 points, 1 <= |z| <= 50, max relative difference " + fmt(worst)};
}

Check check_coefficients() {
  // prod_{k <= 4} (1 - z^{2^k} / 2^{k 2^k}) expanded by convolution.
  std::vector<double> poly{1.0};
  for (int k = 1; k <= 4; ++k) {
    const std::size_t n = std::size_t{1} << k;
    std::vector<double> next(poly.size() + n, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + n] -= std::ldexp(poly[i], -k * static_cast<int>(n));
    }
    poly = std::move(next);
  }
  const CoefficientStream stream;
  int mismatches = 0;
  for (std::uint64_t m = 0; m <= 30; ++m) {
    const auto a = stream.taylor(m);
    const double value = a.sign == 0 ? 0.0 : a.sign * std::ldexp(1.0, static_cast<int>(a.log2_abs));
    if (value != poly[m]) ++mismatches;
  }
  return {"Taylor coefficients match the convolved truncated product", mismatches == 0,
          "m = 0..30, " + std::to_string(mismatches) + " mismatches (exact comparison)"};
}

Check check_borel_inversion(const RunConfig& cfg, const ProductEvaluator& f, const fs::path& dir,
                            std::size_t count = 50) {
  const QuadratureSpec spec = cfg.quadrature();
  const BorelEvaluator g;
  const auto zs = random_points(cfg.seed + 5, count, 0.0, 4.0);
  struct Row {
    std::complex<double> direct, contour, r3, r5;
  };
  std::vector<Row> rows(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) {
    rows[i].direct = f.eval_log(zs[i]).to_complex();
    rows[i].contour = borel_inversion(zs[i], cfg.contour_radius, spec, g).value;
    rows[i].r3 = borel_inversion(zs[i], 3.0, spec, g).value;
    rows[i].r5 = borel_inversion(zs[i], 5.0, spec, g).value;
  }, 1);
  CsvWriter csv(dir / "borel_check.csv", {"z_re", "z_im", "direct_re", "direct_im", "contour_re",
                                          "contour_im", "abs_err", "rel_err"});
  double worst_scaled = 0.0, worst_rel = 0.0, worst_deform = 0.0;
  bool deform_ok = true;
  const Tolerance deform_tol{1e-8, 1e-8};
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const auto& r = rows[i];
    const double abs_err = std::abs(r.contour - r.direct);
    const double rel_err = abs_err / std::abs(r.direct);
    worst_scaled = std::max(worst_scaled, abs_err / (1.0 + std::abs(r.direct)));
    if (std::isfinite(rel_err)) worst_rel = std::max(worst_rel, rel_err);
    worst_deform = std::max(worst_deform, std::abs(r.r3 - r.r5) / (1.0 + std::abs(r.r5)));
    deform_ok = deform_ok && deform_tol.close(r.r3, r.r5);
    csv.row({fmt(zs[i].real()), fmt(zs[i].imag()), fmt(r.direct.real()), fmt(r.direct.imag()),
             fmt(r.contour.real()), fmt(r.contour.imag()), fmt(abs_err), fmt(rel_err)});
  }
  return {"Borel inversion reproduces f", worst_scaled <= 1e-7 && deform_ok,
          std::to_string(count) + " points, |z| <= 4, radius " + short_num(cfg.contour_radius) +
              ": max |err|/(1+|f|) = " + fmt(worst_scaled) + ", max relative error " +
              fmt(worst_rel) + "; radius 3 vs 5 max |diff|/(1+|f|) = " + fmt(worst_deform)};
}

Check check_splitting(const RunConfig& cfg, const ProductEvaluator& f, const fs::path& dir,
                      std::size_t count = 50) {
  const QuadratureSpec spec = cfg.quadrature();
  const BorelEvaluator g;
  const auto zs = random_points(cfg.seed + 6, count, 0.0, 8.0);
  struct Row {
    std::complex<double> f;
    IntegrationResult u, F;
  };
  std::vector<Row> rows(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) {
    rows[i].f = f.eval_log(zs[i]).to_complex();
    rows[i].u = u_eval(zs[i], spec, g);
    rows[i].F = F_eval(zs[i], spec, g);
  }, 1);
  CsvWriter csv(dir / "identity.csv",
                {"z_re", "z_im", "f_re", "f_im", "u_re", "u_im", "F_re", "F_im", "residual_abs"});
  double worst = 0.0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const auto& r = rows[i];
    const double residual = splitting_residual(r.F, r.u, r.f);
    worst = std::max(worst, residual / (1.0 + std::abs(r.f)));
    csv.row({fmt(zs[i].real()), fmt(zs[i].imag()), fmt(r.f.real()), fmt(r.f.imag()),
             fmt(r.u.value.real()), fmt(r.u.value.imag()), fmt(r.F.value.real()),
             fmt(r.F.value.imag()), fmt(residual)});
  }
  return {"splitting identity F + u = f", worst <= 1e-7,
          std::to_string(count) + " points, |z| <= 8, max residual/(1+|f|) = " + fmt(worst)};
}

// (1/(2 pi i)) int_{-3}^{-4} g(s) ds = (i / 2 pi) int_{-4}^{-3} g(s) ds by
// composite Simpson on the real line.
std::complex<double> u0_simpson_oracle(const BorelEvaluator& g, int intervals) {
  const double a = -4.0, b = -3.0, h = (b - a) / intervals;
  CompensatedSum<double> sum;
  for (int i = 0; i <= intervals; ++i) {
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum.add(w * g(a + i * h).real());
  }
  return {0.0, sum.value() * h / 3.0 / kTwoPi};
}

std::vector<Check> check_u_decay(const RunConfig& cfg, const fs::path& dir,
                                 std::vector<double>& xs, std::vector<double>& mags) {
  const QuadratureSpec spec = cfg.quadrature();
  const BorelEvaluator g;
  CsvWriter csv(dir / "u_decay.csv", {"x", "u_re", "u_im", "u_abs", "bound"});
  bool bounded = true;
  double worst_ratio = 0.0;
  std::complex<double> u0;
  for (int x = 0; x <= 10; ++x) {
    const auto u = u_eval(std::complex<double>(x, 0.0), spec, g).value;
    if (x == 0) u0 = u;
    const double bound = kUDecayConstant * std::exp(-3.0 * x);
    bounded = bounded && std::abs(u) <= bound * (1.0 + 1e-6);
    worst_ratio = std::max(worst_ratio, std::abs(u) / bound);
    xs.push_back(x);
    mags.push_back(std::abs(u));
    csv.row({std::to_string(x), fmt(u.real()), fmt(u.imag()), fmt(std::abs(u)), fmt(bound)});
  }
  const auto oracle = u0_simpson_oracle(g, 2000);
  const bool u0_ok = std::abs(std::abs(u0) - 0.0438) <= 1e-3 && std::abs(u0 - oracle) <= 1e-10;
  return {
      {"u decays like 0.0502 e^{-3x}", bounded,
       "x = 0..10, max |u(x)| / (0.0502 e^{-3x}) = " + fmt(worst_ratio)},
      {"u(0) matches the Simpson oracle", u0_ok,
       "u(0) = (" + fmt(u0.real()) + ", " + fmt(u0.imag()) + "), oracle (0, " +
           fmt(oracle.imag()) + ")" + ", |diff| = " + fmt(std::abs(u0 - oracle))},
  };
}

void maybe_counting_svg(const RunConfig& cfg, const ZeroLattice& lattice, const fs::path& dir) {
  if (!cfg.emit_svg) return;
  const auto rs = counting_grid(lattice.k_max());
  std::vector<double> ratios;
  for (double r : rs) ratios.push_back(lattice.normalized_count(r));
  SvgPlot plot("n(r)/r for the dyadic lattice", "r", "n(r)/r");
  plot.log_x().line("n(r)/r", rs, ratios, "#1f77b4").hline(2.0, "#d62728").hline(4.0 / 3.0, "#2ca02c");
  plot.write((dir / "counting.svg").string());
}

void maybe_profile_svg(const RunConfig& cfg, const GrowthProfile& p,
                       const std::vector<WindowStats>& stats, const fs::path& dir) {
  if (!cfg.emit_svg) return;
  std::vector<double> bx, blo, bhi;
  for (const auto& w : stats) {
    for (double r : {w.r_lo, w.r_hi}) {
      bx.push_back(r);
      blo.push_back(w.q_low);
      bhi.push_back(w.q_high);
    }
  }
  SvgPlot plot("log|" + p.function_id + "(r e^{i theta})| / r, theta = " + short_num(p.theta), "r",
               "value");
  plot.log_x().band("quantile band", bx, blo, bhi, "#ff7f0e").line(p.function_id, p.radii, p.values, "#1f77b4");
  plot.write((dir / ("profile_" + p.function_id + ".svg")).string());
}

void maybe_u_svg(const RunConfig& cfg, const std::vector<double>& xs, const std::vector<double>& mags,
                 const fs::path& dir) {
  if (!cfg.emit_svg) return;
  std::vector<double> bound;
  for (double x : xs) bound.push_back(kUDecayConstant * std::exp(-3.0 * x));
  SvgPlot plot("|u(x)| against 0.0502 e^{-3x}", "x", "|u(x)|");
  plot.log_y().line("|u(x)|", xs, mags, "#1f77b4").line("bound", xs, bound, "#d62728", true);
  plot.write((dir / "u_decay.svg").string());
}

}  // namespace

std::vector<std::complex<double>> random_points(std::uint64_t seed, std::size_t count,
                                                double r_lo, double r_hi) {
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<std::complex<double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = unit(), v = unit();
    const double r = std::sqrt(r_lo * r_lo + (r_hi * r_hi - r_lo * r_lo) * u);
    out.push_back(std::polar(r, kTwoPi * v - kPi));
  }
  return out;
}

const std::vector<std::string>& profile_functions() {
  static const std::vector<std::string> ids{"f", "F", "u", "M_f", "exp2z", "sin2z"};
  return ids;
}

int cmd_lattice(const RunConfig& cfg, std::ostream& out) {
  const fs::path dir = prepare_out_dir(cfg);
  const ZeroLattice lattice(cfg.k_max);
  const int k_export = std::min(cfg.k_max, cfg.zeros_k_max);
  CsvWriter zeros(dir / "zeros.csv", {"k", "j", "re", "im"});
  for (int k = 1; k <= k_export; ++k) {
    const auto circle = lattice.circle(k);
    for (std::size_t j = 0; j < circle.size(); ++j) {
      zeros.row({std::to_string(k), std::to_string(j), fmt(circle[j].real()), fmt(circle[j].imag())});
    }
  }
  CsvWriter counting(dir / "counting.csv", {"r", "n", "n_over_r", "bound_window"});
  double worst_flagged = 0.0;
  for (double r : counting_grid(cfg.k_max)) {
    const bool flagged = r >= 3.0 && in_bounded_window(r);
    const double ratio = lattice.normalized_count(r);
    if (flagged) worst_flagged = std::max(worst_flagged, ratio);
    counting.row({fmt(r), std::to_string(lattice.counting(r)), fmt(ratio), flagged ? "1" : "0"});
  }
  maybe_counting_svg(cfg, lattice, dir);
  emit(cfg,
       {{"zeros_rows", static_cast<long long>(zeros.rows())},
        {"counting_rows", static_cast<long long>(counting.rows())},
        {"max_flagged_n_over_r", worst_flagged},
        {"out_dir", dir.string()}},
       out);
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg, std::complex<double> z, std::ostream& out) {
  const auto v = make_product(cfg).eval_log(z);
  const auto c = v.to_complex();
  emit(cfg,
       {{"z_re", z.real()}, {"z_im", z.imag()}, {"log_mag", v.log_mag}, {"arg", v.arg},
        {"re", c.real()}, {"im", c.imag()}},
       out);
  return kExitOk;
}

int cmd_profile(const RunConfig& cfg, const std::string& function_id, std::ostream& out) {
  cfg.validate();
  const fs::path dir = prepare_out_dir(cfg);
  const GrowthProfile p = make_profile(cfg, function_id, cfg.theta);
  CsvWriter csv = profile_csv(dir);
  write_profile_rows(csv, p);
  if (cfg.emit_svg) maybe_profile_svg(cfg, p, {}, dir);
  emit(cfg,
       {{"function_id", p.function_id}, {"theta", p.theta},
        {"samples", static_cast<long long>(p.radii.size())}, {"file", (dir / "profile.csv").string()}},
       out);
  return kExitOk;
}

int cmd_borel_coeffs(const RunConfig& cfg, std::uint64_t m_max, std::ostream& out) {
  if (m_max > CoefficientStream::kMaxIndex) throw UsageError("m_max too large");
  const fs::path dir = prepare_out_dir(cfg);
  const CoefficientStream stream;
  CsvWriter csv(dir / "coeffs.csv", {"m", "sign", "log2_abs_a", "log_abs_c"});
  for (std::uint64_t m = 0; m <= m_max; ++m) {
    const auto a = stream.taylor(m);
    if (a.sign == 0) {
      if (m <= 64) csv.row({std::to_string(m), "0", "-inf", "-inf"});
      continue;
    }
    csv.row({std::to_string(m), std::to_string(a.sign), std::to_string(a.log2_abs),
             fmt(stream.borel(m).log_abs)});
  }
  emit(cfg, {{"rows", static_cast<long long>(csv.rows())}, {"file", csv.path().string()}}, out);
  return kExitOk;
}

int cmd_borel_eval(const RunConfig& cfg, std::complex<double> s, std::ostream& out) {
  const auto r = BorelEvaluator{}.evaluate(s);
  emit(cfg,
       {{"s_re", s.real()}, {"s_im", s.imag()}, {"g_re", r.value.real()}, {"g_im", r.value.imag()},
        {"tail_bound", r.tail_bound}, {"last_index", static_cast<long long>(r.last_index)}},
       out);
  return kExitOk;
}

int cmd_borel_invert(const RunConfig& cfg, std::complex<double> z, std::ostream& out) {
  const auto direct = make_product(cfg).eval_log(z).to_complex();
  const auto inv = borel_inversion(z, cfg.contour_radius, cfg.quadrature());
  emit(cfg,
       {{"z_re", z.real()}, {"z_im", z.imag()}, {"radius", cfg.contour_radius},
        {"contour_re", inv.value.real()}, {"contour_im", inv.value.imag()},
        {"direct_re", direct.real()}, {"direct_im", direct.imag()},
        {"abs_err", std::abs(inv.value - direct)}, {"error_estimate", inv.error_estimate},
        {"nodes", static_cast<long long>(inv.nodes)}},
       out);
  return kExitOk;
}

int cmd_contour_identity(const RunConfig& cfg, std::optional<std::complex<double>> z,
                         std::size_t count, std::ostream& out) {
  const ProductEvaluator f = make_product(cfg);
  if (z) {
    const QuadratureSpec spec = cfg.quadrature();
    const auto fv = f.eval_log(*z).to_complex();
    const auto u = u_eval(*z, spec);
    const auto F = F_eval(*z, spec);
    emit(cfg,
         {{"z_re", z->real()}, {"z_im", z->imag()}, {"f_re", fv.real()}, {"f_im", fv.imag()},
          {"u_re", u.value.real()}, {"u_im", u.value.imag()}, {"F_re", F.value.real()},
          {"F_im", F.value.imag()}, {"residual_abs", splitting_residual(F, u, fv)}},
         out);
    return kExitOk;
  }
  const fs::path dir = prepare_out_dir(cfg);
  const Check check = check_splitting(cfg, f, dir, count);
  emit(cfg, {{"check", check.name}, {"pass", check.pass ? 1LL : 0LL}, {"detail", check.detail}}, out);
  return check.pass ? kExitOk : kExitVerification;
}

int cmd_contour_invert(const RunConfig& cfg, std::optional<std::complex<double>> z,
                       std::size_t count, std::ostream& out) {
  if (z) return cmd_borel_invert(cfg, *z, out);
  const ProductEvaluator f = make_product(cfg);
  const fs::path dir = prepare_out_dir(cfg);
  const Check check = check_borel_inversion(cfg, f, dir, count);
  emit(cfg, {{"check", check.name}, {"pass", check.pass ? 1LL : 0LL}, {"detail", check.detail}}, out);
  return check.pass ? kExitOk : kExitVerification;
}

int cmd_diagnose(const RunConfig& cfg, const std::string& function_id, std::ostream& out) {
  cfg.validate();
  const fs::path dir = prepare_out_dir(cfg);
  const GrowthProfile p = make_profile(cfg, function_id, cfg.theta);
  const auto stats = window_stats(p, cfg.q);
  CsvWriter csv = windows_csv(dir);
  write_window_rows(csv, p.function_id, p.theta, stats);
  maybe_profile_svg(cfg, p, stats, dir);
  emit(cfg, verdict_record(classify(p, classify_options(cfg))), out);
  return kExitOk;
}

int cmd_reproduce(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const fs::path dir = prepare_out_dir(cfg);
  const ZeroLattice lattice(cfg.k_max);
  const ProductEvaluator f(lattice);
  std::vector<Check> checks;

  // Lattice.
  {
    std::ostringstream sink;
    cmd_lattice(cfg, sink);
  }
  checks.push_back(check_counting(lattice));
  checks.push_back(check_bounded_windows(lattice));
  checks.push_back(check_reciprocal_sums(lattice));
  {
    const auto report = verify_lattice(lattice);
    checks.push_back({"lattice report bounds", report.counting_bound_holds && report.reciprocal_bound_holds,
                      "sup n(2^k)/2^k = " + fmt(report.sup_normalized_count) +
                          ", max |sum 1/a| at r = 2^k: " + fmt(report.max_reciprocal_sum)});
  }

  // Product, coefficients, contour integrals.
  checks.push_back(check_product_oracle(cfg, f));
  checks.push_back(check_coefficients());
  {
    std::ostringstream sink;
    cmd_borel_coeffs(cfg, 256, sink);
  }
  checks.push_back(check_borel_inversion(cfg, f, dir));
  checks.push_back(check_splitting(cfg, f, dir));
  std::vector<double> u_xs, u_mags;
  for (auto& c : check_u_decay(cfg, dir, u_xs, u_mags)) checks.push_back(std::move(c));
  maybe_u_svg(cfg, u_xs, u_mags, dir);

  // Growth classification.
  const ClassifyOptions opts = classify_options(cfg);
  CsvWriter profiles = profile_csv(dir);
  CsvWriter windows = windows_csv(dir);
  std::vector<RegularityVerdict> verdicts;
  auto diagnose = [&](const std::string& id, double theta) {
    const GrowthProfile p = make_profile(cfg, id, theta);
    const auto stats = window_stats(p, cfg.q);
    write_profile_rows(profiles, p);
    write_window_rows(windows, p.function_id, p.theta, stats);
    if (id == "f") maybe_profile_svg(cfg, p, stats, dir);
    verdicts.push_back(classify(p, opts));
    return stats;
  };

  const auto f_stats = diagnose("f", cfg.theta);
  {
    const auto& v = verdicts.back();
    double min_width = std::numeric_limits<double>::infinity();
    for (const auto& w : f_stats) min_width = std::min(min_width, w.width());
    checks.push_back({"f has irregular growth along theta", v.verdict == Verdict::irregular,
                      "verdict " + to_string(v.verdict) + " over windows " +
                          std::to_string(f_stats.front().k) + ".." + std::to_string(f_stats.back().k) +
                          ", smallest trimmed gap " + fmt(min_width)});
    checks.push_back({"every window of f keeps a trimmed gap >= 2 gap_tol", min_width >= 2.0 * cfg.gap_tol,
                      "smallest q_high - q_low = " + fmt(min_width)});
  }
  diagnose("F", cfg.theta);
  {
    const auto& vF = verdicts.back();
    const auto& vf = verdicts[0];
    checks.push_back({"F = f - u has the verdict of f", vF.verdict == vf.verdict,
                      "F verdict " + to_string(vF.verdict) + ", f verdict " + to_string(vf.verdict)});
  }
  auto regular_with_limit_2 = [&](const std::string& id, double theta, const std::string& label) {
    diagnose(id, theta);
    const auto& v = verdicts.back();
    const bool ok = v.verdict == Verdict::regular && std::abs(v.limit_or_gap - 2.0) <= 0.01;
    checks.push_back({label, ok,
                      "verdict " + to_string(v.verdict) + ", limit " + fmt(v.limit_or_gap)});
  };
  regular_with_limit_2("exp2z", 0.0, "control e^{2z} is regular with limit 2");
  regular_with_limit_2("sin2z", kPi / 2, "control sin(2z) at theta = pi/2 is regular with limit 2");

  // Type.
  {
    const GrowthProfile m = f.max_modulus_profile(profile_radii(cfg), cfg.n_theta);
    const auto stats = window_stats(m, cfg.q);
    write_profile_rows(profiles, m);
    write_window_rows(windows, m.function_id, m.theta, stats);
    const auto low_radii = geometric_radii(1.0, cfg.r_min, 8 * 64 + 1);
    double sup = 0.0;
    for (double v : f.max_modulus_profile(low_radii, cfg.n_theta).values) sup = std::max(sup, v);
    for (double v : m.values) sup = std::max(sup, v);
    const double top_sup = stats.back().sup;
    double top_inf = std::numeric_limits<double>::infinity();
    const std::size_t tail = std::min<std::size_t>(2, stats.size());
    for (std::size_t i = stats.size() - tail; i < stats.size(); ++i) top_inf = std::min(top_inf, stats[i].inf);
    const double four_over_e = 4.0 / std::numbers::e;
    const double two_log_2 = 2.0 * std::numbers::ln2;
    checks.push_back({"log M(r)/r stays below the type bound 2", sup <= 2.0,
                      "sup over 1 <= r <= " + short_num(cfg.r_max) + " is " + fmt(sup)});
    checks.push_back({"top-window max of log M(r)/r is 4/e", std::abs(top_sup - four_over_e) <= 0.01,
                      "window " + std::to_string(stats.back().k) + " sup " + fmt(top_sup) +
                          ", 4/e = " + fmt(four_over_e)});
    checks.push_back({"top-window min of log M(r)/r is 2 log 2", std::abs(top_inf - two_log_2) <= 0.01,
                      "min over the last " + std::to_string(tail) + " windows " + fmt(top_inf) +
                          ", 2 log 2 = " + fmt(two_log_2)});

    std::vector<GrowthProfile> rays;
    for (int j = 0; j < 8; ++j) {
      rays.push_back(make_profile(cfg, "f", ProductEvaluator::kMaxModulusPhase + kTwoPi * j / 8.0));
    }
    const TypeEstimate est = type_estimate(rays);
    checks.push_back({"type estimate over 8 rays", est.value <= 2.0 && std::abs(est.value - four_over_e) <= 0.01,
                      "estimate " + fmt(est.value) + " at theta " + fmt(est.theta) + ", r <= " +
                          short_num(est.max_radius)});
  }

  // Verdict records.
  {
    std::ofstream vj(dir / "verdicts.jsonl", std::ios::binary | std::ios::trunc);
    for (const auto& v : verdicts) vj << verdict_json(v);
  }

  // Report.
  bool all_pass = true;
  std::ostringstream md;
  md << "# Reproduction report\n\n";
  md << "Configuration: k_max = " << cfg.k_max << ", theta = " << short_num(cfg.theta)
     << ", r in [" << short_num(cfg.r_min) << ", " << short_num(cfg.r_max) << "], "
     << cfg.samples_per_window << " samples per window, q = " << short_num(cfg.q)
     << ", gap_tol = " << short_num(cfg.gap_tol) << ", drift_tol = " << short_num(cfg.drift_tol)
     << ", quadrature tol = " << short_num(cfg.tol)
     << ", seed = " << cfg.seed << ".\n\n";
  md << "## Checks\n\n";
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    md << "- " << (c.pass ? "PASS" : "FAIL") << " " << c.name << ": " << c.detail << "\n";
  }
  md << "\n## Growth verdicts\n\n| function | theta | verdict | limit or gap |\n|---|---|---|---|\n";
  for (const auto& v : verdicts) {
    md << "| " << v.function_id << " | " << fmt(v.theta) << " | " << to_string(v.verdict) << " | "
       << fmt(v.limit_or_gap) << " |\n";
  }
  md << "\nThe verdict for f along theta = " << fmt(cfg.theta) << " is \"" << to_string(verdicts[0].verdict)
     << "\".\n";
  md << "\nOverall: " << (all_pass ? "PASS" : "FAIL") << "\n";
  {
    std::ofstream rep(dir / "report.md", std::ios::binary | std::ios::trunc);
    rep << md.str();
  }
  std::size_t passed = 0;
  for (const auto& c : checks) passed += c.pass;
  emit(cfg,
       {{"checks", static_cast<long long>(checks.size())}, {"passed", static_cast<long long>(passed)},
        {"f_verdict", to_string(verdicts[0].verdict)}, {"report", (dir / "report.md").string()}},
       out);
  return all_pass ? kExitOk : kExitVerification;
}

}  // namespace irgrowth::app
