#include "app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "app/output.hpp"

namespace irgrowth::app {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 160, kTop = 40, kBottom = 50;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

SvgPlot& SvgPlot::log_x(bool on) {
  log_x_ = on;
  return *this;
}

SvgPlot& SvgPlot::log_y(bool on) {
  log_y_ = on;
  return *this;
}

SvgPlot& SvgPlot::line(std::string name, std::vector<double> xs, std::vector<double> ys,
                       std::string color, bool dashed) {
  if (xs.size() != ys.size()) throw std::invalid_argument("svg line: size mismatch");
  series_.push_back({std::move(name), std::move(xs), std::move(ys), {}, std::move(color), dashed, false});
  return *this;
}

SvgPlot& SvgPlot::band(std::string name, std::vector<double> xs, std::vector<double> lo,
                       std::vector<double> hi, std::string color) {
  if (xs.size() != lo.size() || xs.size() != hi.size()) {
    throw std::invalid_argument("svg band: size mismatch");
  }
  series_.push_back({std::move(name), std::move(xs), std::move(lo), std::move(hi), std::move(color), false, true});
  return *this;
}

SvgPlot& SvgPlot::hline(double y, std::string color) {
  hlines_.emplace_back(y, std::move(color));
  return *this;
}

std::string SvgPlot::render() const {
  auto tx = [&](double x) { return log_x_ ? std::log10(x) : x; };
  auto ty = [&](double y) { return log_y_ ? std::log10(y) : y; };
  auto usable = [](double v) { return std::isfinite(v); };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series_) {
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      const double x = tx(s.xs[i]), y = ty(s.ys[i]);
      if (!usable(x) || !usable(y)) continue;
      x0 = std::min(x0, x), x1 = std::max(x1, x);
      y0 = std::min(y0, y), y1 = std::max(y1, y);
      if (s.is_band && usable(ty(s.hi[i]))) y1 = std::max(y1, ty(s.hi[i]));
    }
  }
  for (const auto& [y, c] : hlines_) {
    if (usable(ty(y))) y0 = std::min(y0, ty(y)), y1 = std::max(y1, ty(y));
  }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad, y1 += pad;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (tx(x) - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (ty(y) - y0) / (y1 - y0)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title_
    << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0, fy = y0 + (y1 - y0) * i / 4.0;
    const double vx = log_x_ ? std::pow(10.0, fx) : fx, vy = log_y_ ? std::pow(10.0, fy) : fy;
    const double sx = kLeft + pw * i / 4.0, sy = kTop + ph * (1.0 - i / 4.0);
    o << "<text x=\"" << fmt(sx) << "\" y=\"" << fmt(kTop + ph + 16)
      << "\" text-anchor=\"middle\">" << tick_label(vx) << "</text>\n";
    o << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(sy + 4) << "\" text-anchor=\"end\">"
      << tick_label(vy) << "</text>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">"
    << x_label_ << "</text>\n";
  o << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" transform=\"rotate(-90 16 " << kTop + ph / 2
    << ")\" text-anchor=\"middle\">" << y_label_ << "</text>\n";

  for (const auto& [y, color] : hlines_) {
    if (!usable(ty(y))) continue;
    o << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + pw << "\" y1=\"" << fmt(py(y)) << "\" y2=\""
      << fmt(py(y)) << "\" stroke=\"" << color << "\" stroke-dasharray=\"2,3\"/>\n";
  }
  int legend = 0;
  for (const auto& s : series_) {
    if (s.is_band) {
      std::ostringstream pts;
      for (std::size_t i = 0; i < s.xs.size(); ++i) {
        if (usable(ty(s.hi[i])) && usable(tx(s.xs[i]))) pts << fmt(px(s.xs[i])) << ',' << fmt(py(s.hi[i])) << ' ';
      }
      for (std::size_t i = s.xs.size(); i-- > 0;) {
        if (usable(ty(s.ys[i])) && usable(tx(s.xs[i]))) pts << fmt(px(s.xs[i])) << ',' << fmt(py(s.ys[i])) << ' ';
      }
      o << "<polygon points=\"" << pts.str() << "\" fill=\"" << s.color
        << "\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
    } else {
      std::ostringstream pts;
      auto flush = [&] {
        if (!pts.str().empty()) {
          o << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.2\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
        }
        pts.str("");
      };
      for (std::size_t i = 0; i < s.xs.size(); ++i) {
        if (!usable(tx(s.xs[i])) || !usable(ty(s.ys[i]))) {
          flush();
          continue;
        }
        pts << fmt(px(s.xs[i])) << ',' << fmt(py(s.ys[i])) << ' ';
      }
      flush();
    }
    const double ly = kTop + 14 + 18 * legend++;
    o << "<rect x=\"" << kWidth - kRight + 12 << "\" y=\"" << ly - 9 << "\" width=\"14\" height=\"10\" fill=\""
      << s.color << "\"/>\n";
    o << "<text x=\"" << kWidth - kRight + 32 << "\" y=\"" << ly << "\">" << s.name << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void SvgPlot::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << render();
}

}  // namespace irgrowth::app
