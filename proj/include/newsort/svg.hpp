#pragma once

// Standalone SVG scatter plots with an optional fitted-curve overlay.
// Output is deterministic byte-for-byte for fixed inputs: coordinates are
// printed with fixed precision and nothing machine- or time-dependent is
// embedded.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace newsort {

struct PlotInput {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> curve_xs;  // optional fitted polyline, already sampled
  std::vector<double> curve_ys;
  std::string x_label;
  std::string y_label;
};

namespace detail {

inline std::string fixed2(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

inline std::string tick_label(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return std::string(buf);
}

// largest 1/2/5 * 10^k step not exceeding the raw spacing
inline double nice_step(double range, int target_ticks) {
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {5.0, 2.0, 1.0}) {
    if (mag * mult <= raw) return mag * mult;
  }
  return mag;
}

inline std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::string render_scatter_svg(const PlotInput& plot) {
  if (plot.xs.empty() || plot.xs.size() != plot.ys.size()) {
    throw std::invalid_argument("plot needs at least one (x, y) point");
  }

  constexpr double kWidth = 640, kHeight = 480;
  constexpr double kLeft = 72, kRight = 616, kTop = 24, kBottom = 428;

  auto range_of = [](const std::vector<double>& a, const std::vector<double>& b) {
    double lo = a[0], hi = a[0];
    for (double v : a) { lo = std::min(lo, v); hi = std::max(hi, v); }
    for (double v : b) { lo = std::min(lo, v); hi = std::max(hi, v); }
    if (lo == hi) { lo -= 1.0; hi += 1.0; }
    return std::pair<double, double>{lo, hi};
  };
  const auto x_range = range_of(plot.xs, plot.curve_xs.empty() ? plot.xs : plot.curve_xs);
  const auto y_range = range_of(plot.ys, plot.curve_ys.empty() ? plot.ys : plot.curve_ys);
  const double x_lo = x_range.first, x_hi = x_range.second;
  const double y_lo = y_range.first, y_hi = y_range.second;

  auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kRight - kLeft); };
  auto sy = [&](double y) { return kBottom - (y - y_lo) / (y_hi - y_lo) * (kBottom - kTop); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  // axes
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n";

  // ticks
  auto emit_ticks = [&](bool horizontal) {
    const double lo = horizontal ? x_lo : y_lo;
    const double hi = horizontal ? x_hi : y_hi;
    const double step = detail::nice_step(hi - lo, 5);
    double tick = std::ceil(lo / step) * step;
    for (; tick <= hi + step * 1e-9; tick += step) {
      if (std::abs(tick) < step * 1e-9) tick = 0.0;  // avoid "-0"
      if (horizontal) {
        const auto px = detail::fixed2(sx(tick));
        out << "<line x1=\"" << px << "\" y1=\"" << kBottom << "\" x2=\"" << px << "\" y2=\""
            << kBottom + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << kBottom + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << detail::tick_label(tick)
            << "</text>\n";
      } else {
        const auto py = detail::fixed2(sy(tick));
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft << "\" y2=\""
            << py << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << py
            << "\" font-size=\"11\" text-anchor=\"end\" dominant-baseline=\"middle\">"
            << detail::tick_label(tick) << "</text>\n";
      }
    }
  };
  emit_ticks(true);
  emit_ticks(false);

  // axis labels from the column names
  out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">" << detail::escape_xml(plot.x_label)
      << "</text>\n"
      << "<text x=\"16\" y=\"" << (kTop + kBottom) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (kTop + kBottom) / 2 << ")\">" << detail::escape_xml(plot.y_label) << "</text>\n";

  if (!plot.curve_xs.empty()) {
    out << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < plot.curve_xs.size(); ++i) {
      if (i) out << ' ';
      out << detail::fixed2(sx(plot.curve_xs[i])) << ',' << detail::fixed2(sy(plot.curve_ys[i]));
    }
    out << "\"/>\n";
  }

  for (std::size_t i = 0; i < plot.xs.size(); ++i) {
    out << "<circle cx=\"" << detail::fixed2(sx(plot.xs[i])) << "\" cy=\""
        << detail::fixed2(sy(plot.ys[i])) << "\" r=\"3\" fill=\"#2c3e50\"/>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace newsort
