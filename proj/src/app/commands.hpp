#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "app/config.hpp"

namespace irgrowth::app {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitVerification = 3;

// Deterministic points, uniform by area in the annulus r_lo <= |z| <= r_hi.
// The mapping from the mt19937_64 stream is explicit, so the points do not
// depend on the standard library's distributions.
std::vector<std::complex<double>> random_points(std::uint64_t seed, std::size_t count,
                                                double r_lo, double r_hi);

// Functions accepted by profile and diagnose.
const std::vector<std::string>& profile_functions();

int cmd_lattice(const RunConfig& cfg, std::ostream& out);
int cmd_eval(const RunConfig& cfg, std::complex<double> z, std::ostream& out);
int cmd_profile(const RunConfig& cfg, const std::string& function_id, std::ostream& out);
int cmd_borel_coeffs(const RunConfig& cfg, std::uint64_t m_max, std::ostream& out);
int cmd_borel_eval(const RunConfig& cfg, std::complex<double> s, std::ostream& out);
int cmd_borel_invert(const RunConfig& cfg, std::complex<double> z, std::ostream& out);
// With z: one record on stdout. Without: count random points with |z| <= 8,
// written to identity.csv.
int cmd_contour_identity(const RunConfig& cfg, std::optional<std::complex<double>> z,
                         std::size_t count, std::ostream& out);
// With z: one record. Without: count random points with |z| <= 4, written to
// borel_check.csv.
int cmd_contour_invert(const RunConfig& cfg, std::optional<std::complex<double>> z,
                       std::size_t count, std::ostream& out);
int cmd_diagnose(const RunConfig& cfg, const std::string& function_id, std::ostream& out);
int cmd_reproduce(const RunConfig& cfg, std::ostream& out);

}  // namespace irgrowth::app
