#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "irgrowth/contour.hpp"

namespace irgrowth::app {

// Bad flags, config keys or values, or module preconditions violated by the
// configuration. Maps to exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int k_max = 20;
  double theta = 0.0;
  double r_min = 256.0;
  double r_max = 16384.0;
  int samples_per_window = 256;
  double contour_radius = 4.0;
  double q = 0.1;
  double gap_tol = 0.02;
  double drift_tol = 0.02;
  double tol = 1e-12;  // quadrature target_rel_tol
  int n_theta = 64;
  std::uint64_t seed = 20250101;
  // Circles written to zeros.csv; the full default lattice has ~2e6 zeros.
  int zeros_k_max = 10;
  std::filesystem::path out_dir = "irgrowth-out";
  bool emit_svg = false;
  std::string format = "json";  // csv | json, for stdout records

  // Throws UsageError when a parameter is out of range.
  void validate_basic() const;
  // validate_basic plus the window-statistics preconditions of profile,
  // diagnose and reproduce.
  void validate() const;
  QuadratureSpec quadrature() const;
  // Profile samples between r_min and r_max on a geometric grid.
  int profile_samples() const;
};

// Keys accepted by set / config files, in a fixed order.
const std::map<std::string, std::string>& config_keys();

// Applies one key = value setting. Throws UsageError on unknown keys or
// unparsable values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat TOML-style file: `key = value` lines, `#` comments, optional quotes
// around strings.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

}  // namespace irgrowth::app
