#include "app/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "app/commands.hpp"
#include "app/config.hpp"
#include "app/output.hpp"
#include "irgrowth/errors.hpp"

namespace irgrowth::app {

namespace {

// Flags that map one-to-one onto config keys.
struct KeyFlag {
  const char* flag;
  const char* key;
  const char* type;
  const char* help;
};

constexpr KeyFlag kKeyFlags[] = {
    {"--out-dir", "out_dir", "PATH", "output directory"},
    {"--k-max", "k_max", "N", "largest lattice circle index"},
    {"--tol", "tol", "X", "quadrature relative tolerance"},
    {"--format", "format", "csv|json", "stdout record format: csv or json"},
    {"--theta", "theta", "X", "ray direction in radians"},
    {"--r-min", "r_min", "X", "smallest profile radius"},
    {"--r-max", "r_max", "X", "largest profile radius"},
    {"--samples-per-window", "samples_per_window", "N", "profile samples per dyadic window"},
    {"--q", "q", "X", "trimmed quantile fraction"},
    {"--gap-tol", "gap_tol", "X", "regularity width tolerance"},
    {"--drift-tol", "drift_tol", "X", "regularity drift tolerance"},
    {"--n-theta", "n_theta", "N", "angles for the maximum modulus"},
    {"--seed", "seed", "N", "seed for random test points"},
    {"--zeros-k-max", "zeros_k_max", "N", "circles exported to zeros.csv"},
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laplace transform of irregular growth: lattice, product, Borel transform, "
               "contour integrals and growth diagnostics"};
  app.name("irgrowth");
  app.require_subcommand(1);

  std::string config_path;
  bool svg = false;
  app.add_option("--config", config_path, "flat key = value config file")
      ->check(CLI::ExistingFile)
      ->type_name("PATH");
  app.add_flag("--svg", svg, "write SVG plots");
  std::vector<std::pair<const KeyFlag*, std::string>> flag_values;
  flag_values.reserve(std::size(kKeyFlags));
  std::vector<CLI::Option*> flag_options;
  for (const auto& kf : kKeyFlags) {
    flag_values.emplace_back(&kf, std::string{});
    flag_options.push_back(app.add_option(kf.flag, flag_values.back().second, kf.help)->type_name(kf.type));
  }

  std::string z_text, s_text, function_id = "f";
  std::optional<double> radius;
  std::uint64_t m_max = 256;
  std::size_t count = 50;

  auto* lattice = app.add_subcommand("lattice", "export zeros.csv and counting.csv");
  auto* eval = app.add_subcommand("eval", "evaluate f(z) in log form");
  eval->add_option("--z", z_text, "complex point, e.g. 1+0i")->required();
  auto* profile = app.add_subcommand("profile", "write profile.csv for one function");
  profile->add_option("--function", function_id, "f, F, u, M_f, exp2z or sin2z")
      ->check(CLI::IsMember(profile_functions()));

  auto* borel = app.add_subcommand("borel", "Taylor data and Borel transform");
  borel->add_option("--s", s_text, "evaluate g(s) (same as borel eval)");
  auto* borel_coeffs = borel->add_subcommand("coeffs", "write coeffs.csv");
  borel_coeffs->add_option("--m-max", m_max, "largest index");
  auto* borel_eval = borel->add_subcommand("eval", "evaluate g(s)");
  borel_eval->add_option("--s", s_text, "complex point with |s| >= 2.5")->required();
  auto* borel_invert = borel->add_subcommand("invert", "recover f(z) from g by a circle integral");
  borel_invert->add_option("--z", z_text, "complex point")->required();
  borel_invert->add_option("--radius", radius, "circle radius in [2.5, 8]");
  borel->require_subcommand(0, 1);

  auto* contour = app.add_subcommand("contour", "integrals over gamma, I and circles");
  auto* identity = contour->add_subcommand("identity", "check F + u = f");
  identity->add_option("--z", z_text, "single point; omit for a random batch into identity.csv");
  identity->add_option("--count", count, "batch size");
  auto* invert = contour->add_subcommand("invert", "check Borel inversion against f");
  invert->add_option("--z", z_text, "single point; omit for a random batch into borel_check.csv");
  invert->add_option("--count", count, "batch size");
  invert->add_option("--radius", radius, "circle radius in [2.5, 8]");
  contour->require_subcommand(1);

  auto* diagnose = app.add_subcommand("diagnose", "window statistics and growth verdict");
  diagnose->add_option("--function", function_id, "f, F, u, M_f, exp2z or sin2z")
      ->check(CLI::IsMember(profile_functions()));
  auto* reproduce = app.add_subcommand("reproduce", "run every check and write the report");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  for (auto* sub : {borel, contour}) {
    for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    for (std::size_t i = 0; i < flag_values.size(); ++i) {
      if (flag_options[i]->count() > 0) {
        apply_setting(cfg, flag_values[i].first->key, flag_values[i].second);
      }
    }
    if (svg) cfg.emit_svg = true;
    if (radius) apply_setting(cfg, "contour_radius", std::to_string(*radius));
    cfg.validate_basic();

    auto z = [&]() -> std::optional<std::complex<double>> {
      if (z_text.empty()) return std::nullopt;
      return parse_complex(z_text);
    };

    if (*lattice) return cmd_lattice(cfg, out);
    if (*eval) return cmd_eval(cfg, *z(), out);
    if (*profile) return cmd_profile(cfg, function_id, out);
    if (*borel) {
      if (*borel_coeffs) return cmd_borel_coeffs(cfg, m_max, out);
      if (*borel_invert) return cmd_borel_invert(cfg, *z(), out);
      if (*borel_eval || !s_text.empty()) return cmd_borel_eval(cfg, parse_complex(s_text), out);
      throw UsageError("borel: choose coeffs, eval or invert (or pass --s)");
    }
    if (*contour) {
      if (*identity) return cmd_contour_identity(cfg, z(), count, out);
      return cmd_contour_invert(cfg, z(), count, out);
    }
    if (*diagnose) return cmd_diagnose(cfg, function_id, out);
    if (*reproduce) return cmd_reproduce(cfg, out);
    throw UsageError("no subcommand");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InsufficientSamples& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LatticeExhausted& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NonConvergence& e) {
    err << "numeric failure: " << e.what() << " (last two refinements " << format_number(e.previous().real())
        << (e.previous().imag() < 0 ? "" : "+") << format_number(e.previous().imag()) << "i, "
        << format_number(e.last().real()) << (e.last().imag() < 0 ? "" : "+")
        << format_number(e.last().imag()) << "i)\n";
    return kExitNumeric;
  } catch (const DomainError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace irgrowth::app
