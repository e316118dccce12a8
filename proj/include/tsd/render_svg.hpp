#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsd/event_graph.hpp"
#include "tsd/location_graph.hpp"

namespace tsd {

struct RenderStyle {
  double width = 960;
  double height = 540;
  double margin_left = 90;
  double margin_right = 20;
  double margin_top = 20;
  double margin_bottom = 40;
  double font_size = 12;
  double px_per_time = 0;  // 0: fit the time span into the canvas width
  std::vector<std::string> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  void check() const {
    if (!(width > 0 && height > 0 && font_size > 0 && px_per_time >= 0)) {
      throw std::invalid_argument("style dimensions must be positive");
    }
    if (margin_left < 0 || margin_right < 0 || margin_top < 0 || margin_bottom < 0) {
      throw std::invalid_argument("style margins must be non-negative");
    }
    if (margin_left + margin_right >= width || margin_top + margin_bottom >= height) {
      throw std::invalid_argument("style margins leave no drawing area");
    }
    if (palette.empty()) throw std::invalid_argument("style palette is empty");
  }
};

inline RenderStyle style_from_json(const nlohmann::json& j) {
  RenderStyle s;
  auto num = [&](const char* key, double& out) {
    if (j.contains(key)) out = j.at(key).get<double>();
  };
  num("width", s.width);
  num("height", s.height);
  num("margin_left", s.margin_left);
  num("margin_right", s.margin_right);
  num("margin_top", s.margin_top);
  num("margin_bottom", s.margin_bottom);
  num("font_size", s.font_size);
  num("px_per_time", s.px_per_time);
  if (j.contains("palette")) s.palette = j.at("palette").get<std::vector<std::string>>();
  s.check();
  return s;
}

namespace detail {

inline std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Time-space diagram: x from event time, one horizontal gridline per level
/// with level Y at the top, one polyline per train (data-train = train id).
inline std::string render_svg(const EventGraph& g, const LocationOrder& y, const RenderStyle& style = {}) {
  style.check();
  require_order_for(g, y);
  Time t_min = std::numeric_limits<Time>::max(), t_max = std::numeric_limits<Time>::min();
  for (const auto& train : g.trains()) {
    for (const auto& e : train.events) {
      t_min = std::min(t_min, e.t);
      t_max = std::max(t_max, e.t);
    }
  }
  const bool has_events = t_min <= t_max;
  if (!has_events) t_min = t_max = 0;
  const double span = static_cast<double>(t_max - t_min);
  double width = style.width;
  double scale = 0;
  if (style.px_per_time > 0) {
    scale = style.px_per_time;
    width = style.margin_left + style.margin_right + span * scale;
    if (width <= style.margin_left + style.margin_right) width = style.margin_left + style.margin_right + 1;
  } else if (span > 0) {
    scale = (width - style.margin_left - style.margin_right) / span;
  }
  const double plot_w = width - style.margin_left - style.margin_right;
  const double plot_h = style.height - style.margin_top - style.margin_bottom;
  auto x_of = [&](Time t) {
    if (span == 0) return style.margin_left + plot_w / 2;
    return style.margin_left + static_cast<double>(t - t_min) * scale;
  };
  const std::size_t levels = y.size();
  auto y_of = [&](std::uint32_t level) {
    if (levels <= 1) return style.margin_top + plot_h / 2;
    return style.margin_top + static_cast<double>(levels - level) * plot_h / static_cast<double>(levels - 1);
  };
  const double x_axis_y = style.height - style.margin_bottom;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::fmt2(width) << "\" height=\""
     << detail::fmt2(style.height) << "\" viewBox=\"0 0 " << detail::fmt2(width) << ' ' << detail::fmt2(style.height)
     << "\" font-family=\"sans-serif\" font-size=\"" << detail::fmt2(style.font_size) << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << detail::fmt2(width) << "\" height=\"" << detail::fmt2(style.height)
     << "\" fill=\"white\"/>\n";
  os << "<g class=\"axes\" stroke=\"black\">\n";
  os << "<line x1=\"" << detail::fmt2(style.margin_left) << "\" y1=\"" << detail::fmt2(style.margin_top)
     << "\" x2=\"" << detail::fmt2(style.margin_left) << "\" y2=\"" << detail::fmt2(x_axis_y) << "\"/>\n";
  os << "<line x1=\"" << detail::fmt2(style.margin_left) << "\" y1=\"" << detail::fmt2(x_axis_y) << "\" x2=\""
     << detail::fmt2(width - style.margin_right) << "\" y2=\"" << detail::fmt2(x_axis_y) << "\"/>\n";
  os << "</g>\n";
  if (has_events) {
    os << "<g class=\"time-labels\" text-anchor=\"middle\">\n";
    os << "<text x=\"" << detail::fmt2(x_of(t_min)) << "\" y=\"" << detail::fmt2(x_axis_y + style.font_size * 1.5)
       << "\">" << t_min << "</text>\n";
    if (t_max != t_min) {
      os << "<text x=\"" << detail::fmt2(x_of(t_max)) << "\" y=\""
         << detail::fmt2(x_axis_y + style.font_size * 1.5) << "\">" << t_max << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "<g class=\"levels\">\n";
  for (auto loc : y.sequence()) {
    const double ly = y_of(y.level(loc));
    os << "<line x1=\"" << detail::fmt2(style.margin_left) << "\" y1=\"" << detail::fmt2(ly) << "\" x2=\""
       << detail::fmt2(width - style.margin_right) << "\" y2=\"" << detail::fmt2(ly)
       << "\" stroke=\"#dddddd\" data-level=\"" << y.level(loc) << "\"/>\n";
    os << "<text x=\"" << detail::fmt2(style.margin_left - 6) << "\" y=\""
       << detail::fmt2(ly + style.font_size / 3) << "\" text-anchor=\"end\">" << detail::xml_escape(g.name(loc))
       << "</text>\n";
  }
  os << "</g>\n";
  os << "<g class=\"trains\" fill=\"none\" stroke-width=\"2\">\n";
  for (const auto& train : g.trains()) {
    const auto idx = static_cast<std::size_t>(static_cast<std::uint64_t>(train.id) % style.palette.size());
    os << "<polyline data-train=\"" << train.id << "\" stroke=\"" << detail::xml_escape(style.palette[idx])
       << "\" points=\"";
    for (std::size_t i = 0; i < train.events.size(); ++i) {
      const auto& e = train.events[i];
      os << (i ? " " : "") << detail::fmt2(x_of(e.t)) << ',' << detail::fmt2(y_of(y.level(e.loc)));
    }
    os << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

/// Per-train point lists read back from the polylines of a rendered document.
inline std::vector<std::vector<std::pair<double, double>>> parse_svg_polylines(const std::string& svg) {
  std::vector<std::vector<std::pair<double, double>>> out;
  std::size_t at = 0;
  while ((at = svg.find("<polyline", at)) != std::string::npos) {
    const auto p = svg.find("points=\"", at);
    if (p == std::string::npos) break;
    const auto end = svg.find('"', p + 8);
    std::istringstream in(svg.substr(p + 8, end - p - 8));
    std::vector<std::pair<double, double>> pts;
    std::string tok;
    while (in >> tok) {
      const auto comma = tok.find(',');
      pts.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    }
    out.push_back(std::move(pts));
    at = end;
  }
  return out;
}

}  // namespace tsd
