#pragma once

#include <complex>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace irgrowth::app {

// 17 significant digits; non-finite values as inf, -inf, nan.
std::string format_number(double x);
std::string format_number(long long x);

// Writes a header line on construction and one line per row(). Values are
// comma-separated without quoting (no field contains a comma).
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  void row(const std::vector<std::string>& fields);
  std::size_t rows() const { return rows_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

// Parses "1+0i", "-3.5-2i", "4i", "2", "-i".
std::complex<double> parse_complex(const std::string& text);

}  // namespace irgrowth::app
