#pragma once

#include <string>
#include <vector>

namespace irgrowth::app {

// Minimal static line plot: polylines, shaded bands and axes with a handful
// of ticks. Non-finite points break a polyline.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);

  SvgPlot& log_x(bool on = true);
  SvgPlot& log_y(bool on = true);
  SvgPlot& line(std::string name, std::vector<double> xs, std::vector<double> ys,
                std::string color, bool dashed = false);
  SvgPlot& band(std::string name, std::vector<double> xs, std::vector<double> lo,
                std::vector<double> hi, std::string color);
  SvgPlot& hline(double y, std::string color);

  std::string render() const;
  void write(const std::string& path) const;

 private:
  struct Series {
    std::string name;
    std::vector<double> xs, ys, hi;
    std::string color;
    bool dashed = false;
    bool is_band = false;
  };

  std::string title_, x_label_, y_label_;
  bool log_x_ = false, log_y_ = false;
  std::vector<Series> series_;
  std::vector<std::pair<double, std::string>> hlines_;
};

}  // namespace irgrowth::app
