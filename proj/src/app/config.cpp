#include "app/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace irgrowth::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw UsageError("config key '" + key + "': expected true or false, got '" + v + "'");
}

}  // namespace

const std::map<std::string, std::string>& config_keys() {
  static const std::map<std::string, std::string> keys = {
      {"k_max", "largest lattice circle index"},
      {"theta", "ray direction in radians"},
      {"r_min", "smallest profile radius"},
      {"r_max", "largest profile radius"},
      {"samples_per_window", "profile samples per dyadic window"},
      {"contour_radius", "Borel inversion circle radius"},
      {"q", "trimmed quantile fraction"},
      {"gap_tol", "regularity width tolerance"},
      {"drift_tol", "regularity drift tolerance"},
      {"tol", "quadrature relative tolerance"},
      {"n_theta", "angles for maximum modulus"},
      {"seed", "seed for random test points"},
      {"zeros_k_max", "circles exported to zeros.csv"},
      {"out_dir", "output directory"},
      {"emit_svg", "write SVG plots"},
      {"format", "stdout record format (csv or json)"},
  };
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw) {
  std::string v = trim(raw);
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    v = v.substr(1, v.size() - 2);
  }
  if (key == "k_max") cfg.k_max = static_cast<int>(parse_int(key, v));
  else if (key == "theta") cfg.theta = parse_double(key, v);
  else if (key == "r_min") cfg.r_min = parse_double(key, v);
  else if (key == "r_max") cfg.r_max = parse_double(key, v);
  else if (key == "samples_per_window") cfg.samples_per_window = static_cast<int>(parse_int(key, v));
  else if (key == "contour_radius") cfg.contour_radius = parse_double(key, v);
  else if (key == "q") cfg.q = parse_double(key, v);
  else if (key == "gap_tol") cfg.gap_tol = parse_double(key, v);
  else if (key == "drift_tol") cfg.drift_tol = parse_double(key, v);
  else if (key == "tol") cfg.tol = parse_double(key, v);
  else if (key == "n_theta") cfg.n_theta = static_cast<int>(parse_int(key, v));
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, v));
  else if (key == "zeros_k_max") cfg.zeros_k_max = static_cast<int>(parse_int(key, v));
  else if (key == "out_dir") cfg.out_dir = v;
  else if (key == "emit_svg") cfg.emit_svg = parse_bool(key, v);
  else if (key == "format") {
    if (v != "csv" && v != "json") throw UsageError("format must be csv or json");
    cfg.format = v;
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;  // ignore table headers
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void RunConfig::validate_basic() const {
  auto fail = [](const std::string& msg) { throw UsageError(msg); };
  if (k_max < 1 || k_max > 30) fail("k_max must lie in [1, 30]");
  if (!(r_min > 0.0 && r_max > r_min)) fail("need 0 < r_min < r_max");
  if (samples_per_window < 64) fail("samples_per_window must be >= 64");
  if (!(q > 0.0 && q < 0.5)) fail("q must lie in (0, 0.5)");
  if (!(gap_tol > 0.0) || !(drift_tol >= 0.0)) fail("gap_tol must be > 0, drift_tol >= 0");
  if (!(tol >= 1e-13)) fail("tol must be >= 1e-13");
  if (!(contour_radius >= 2.5 && contour_radius <= 8.0)) fail("contour_radius must lie in [2.5, 8]");
  if (n_theta < 8) fail("n_theta must be >= 8");
  if (zeros_k_max < 1) fail("zeros_k_max must be >= 1");
}

void RunConfig::validate() const {
  validate_basic();
  auto fail = [](const std::string& msg) { throw UsageError(msg); };

  // Window statistics need at least three whole dyadic windows, all inside
  // the generated lattice.
  const double lattice_radius = std::ldexp(1.0, k_max);
  const int first = static_cast<int>(std::ceil(std::log2(r_min)));
  const int last = static_cast<int>(std::floor(std::log2(std::min(r_max, lattice_radius))));
  if (last - first < 3) {
    fail("window statistics need >= 3 whole dyadic windows inside [r_min, min(r_max, 2^k_max)] = [" +
         std::to_string(r_min) + ", " + std::to_string(std::min(r_max, lattice_radius)) +
         "]; raise k_max or widen the radius range");
  }
  if (r_max > lattice_radius) {
    fail("r_max = " + std::to_string(r_max) + " exceeds the lattice radius 2^" +
         std::to_string(k_max));
  }
}

QuadratureSpec RunConfig::quadrature() const {
  QuadratureSpec spec;
  spec.target_rel_tol = tol;
  return spec;
}

int RunConfig::profile_samples() const {
  const double octaves = std::log2(r_max / r_min);
  return static_cast<int>(std::lround(octaves * samples_per_window)) + 1;
}

}  // namespace irgrowth::app
