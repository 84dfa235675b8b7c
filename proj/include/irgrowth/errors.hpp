#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace irgrowth {

// A query reached beyond the largest generated lattice circle.
class LatticeExhausted : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Argument outside the region where an evaluator is defined or trustworthy.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Adaptive quadrature or series summation failed to reach its tolerance.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, std::complex<double> previous,
                 std::complex<double> last)
      : std::runtime_error(what), previous_(previous), last_(last) {}

  std::complex<double> previous() const { return previous_; }
  std::complex<double> last() const { return last_; }

 private:
  std::complex<double> previous_;
  std::complex<double> last_;
};

// Not enough usable samples to form dyadic-window statistics.
class InsufficientSamples : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace irgrowth
