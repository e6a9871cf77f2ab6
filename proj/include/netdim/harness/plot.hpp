#pragma once

// Minimal self-contained SVG charts: security curves (linear axes, polylines)
// and degree distributions (log-log scatter).

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netdim/graph_io.hpp"

namespace netdim {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

enum class PlotKind { security, degree };

namespace detail {

/// Input order 0, 1, 2 -> blue, green, red.
inline const char* series_color(std::size_t i) {
  static const char* kPalette[] = {"#1f4fd1", "#1d9a3a", "#d1261f", "#8a3ad1", "#d18a1f", "#333333"};
  return kPalette[i % 6];
}

inline std::string fmt(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, std::round(x * 100.0) / 100.0);
  return std::string(buf, res.ptr);
}

inline std::string xml_escape(std::string_view text) {
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

inline void write_svg_plot(const std::vector<Series>& series, PlotKind kind, const std::string& title,
                           std::ostream& os) {
  if (series.empty()) throw std::invalid_argument("nothing to plot");
  const bool log_axes = kind == PlotKind::degree;
  auto tx = [&](double v) { return log_axes ? std::log10(v) : v; };

  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_axes && (s.x[i] <= 0 || s.y[i] <= 0)) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, tx(s.y[i]));
      y1 = std::max(y1, tx(s.y[i]));
    }
  }
  if (!std::isfinite(x0)) throw std::invalid_argument("no plottable points");
  if (!log_axes) {
    x0 = std::min(x0, 0.0);
    y0 = std::min(y0, 0.0);
  }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;

  constexpr double W = 640, H = 480, L = 70, R = 20, T = 40, B = 60;
  auto px = [&](double v) { return L + (tx(v) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (tx(v) - y0) / (y1 - y0) * (H - T - B); };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
     << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << detail::xml_escape(title) << "</text>\n"
     << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";

  // Five ticks per axis, labelled in data units.
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0, fy = y0 + (y1 - y0) * i / 4.0;
    const double sx = L + (W - L - R) * i / 4.0, sy = H - B - (H - T - B) * i / 4.0;
    const double lx = log_axes ? std::pow(10.0, fx) : fx, ly = log_axes ? std::pow(10.0, fy) : fy;
    os << "<text x=\"" << sx << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << detail::fmt(lx)
       << "</text>\n"
       << "<text x=\"" << L - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">" << detail::fmt(ly)
       << "</text>\n";
  }
  const char* xlabel = kind == PlotKind::security ? "attacked top-degree nodes" : "degree (log)";
  const char* ylabel = kind == PlotKind::security ? "max infected" : "count (log)";
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\">" << xlabel
     << "</text>\n"
     << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (T + H - B) / 2 << ")\">" << ylabel << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = detail::series_color(k);
    if (kind == PlotKind::security) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        os << detail::fmt(px(s.x[i])) << ',' << detail::fmt(py(s.y[i])) << ' ';
      }
      os << "\"/>\n";
    } else {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (s.x[i] <= 0 || s.y[i] <= 0) continue;
        os << "<circle cx=\"" << detail::fmt(px(s.x[i])) << "\" cy=\"" << detail::fmt(py(s.y[i]))
           << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
      }
    }
    os << "<text x=\"" << W - R - 120 << "\" y=\"" << T + 16 * (k + 1) << "\" fill=\"" << color << "\">"
       << detail::xml_escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace netdim
