#include "cliquescope/layout.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "cliquescope/errors.hpp"
#include "cliquescope/format.hpp"

namespace cliquescope {
namespace {

constexpr double kInitialTemperature = 0.1;
constexpr double kMinDistance = 0.01;
constexpr double kJitter = 1e-6;

constexpr double kCanvas = 800.0;
constexpr double kMargin = 20.0;
constexpr double kRadius = 4.0;
constexpr std::string_view kDefaultFill = "#1f77b4";

constexpr std::array<std::string_view, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string hex_color(double r, double g, double b) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(r)),
                static_cast<int>(std::lround(g)), static_cast<int>(std::lround(b)));
  return buf;
}

// Linear blend from dark purple to yellow.
std::string ramp(double t) {
  constexpr double lo[3] = {68, 1, 84};
  constexpr double hi[3] = {253, 231, 37};
  return hex_color(lo[0] + t * (hi[0] - lo[0]), lo[1] + t * (hi[1] - lo[1]),
                   lo[2] + t * (hi[2] - lo[2]));
}

std::string coord(double v) { return format_fixed(v, 3); }

std::string xml_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
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

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_rows(std::vector<std::pair<std::string, std::string>> rows) {
  std::sort(rows.begin(), rows.end());
  std::string out = "label,value\n";
  for (const auto& [label, value] : rows) out += csv_field(label) + "," + value + "\n";
  return out;
}

}  // namespace

LayoutCoordinates spring_layout(const WeightedGraph& g, std::uint64_t seed,
                                std::size_t iterations) {
  if (iterations == 0) throw InvalidArgument("spring layout needs at least one iteration");
  const std::size_t n = g.node_count();
  LayoutCoordinates pos(n);
  if (n == 0) return pos;
  if (n == 1) {
    pos[0] = {0.5, 0.5};
    return pos;
  }

  Lcg64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i].x = rng.uniform();
    pos[i].y = rng.uniform();
  }
  for (std::size_t i = 0; i < n; ++i) {
    pos[i].x += kJitter * static_cast<double>(i);
    pos[i].y += kJitter * static_cast<double>(i);
  }

  const double k = std::sqrt(1.0 / static_cast<double>(n));
  const auto edges = g.edges();
  double temperature = kInitialTemperature;
  const double cooling = kInitialTemperature / static_cast<double>(iterations + 1);
  std::vector<Point> disp(n);

  for (std::size_t iter = 0; iter < iterations; ++iter) {
    std::fill(disp.begin(), disp.end(), Point{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dx = pos[i].x - pos[j].x;
        const double dy = pos[i].y - pos[j].y;
        const double d = std::max(std::hypot(dx, dy), kMinDistance);
        const double f = k * k / d;
        disp[i].x += dx / d * f;
        disp[i].y += dy / d * f;
        disp[j].x -= dx / d * f;
        disp[j].y -= dy / d * f;
      }
    }
    for (const auto& e : edges) {
      const double dx = pos[e.a].x - pos[e.b].x;
      const double dy = pos[e.a].y - pos[e.b].y;
      const double d = std::max(std::hypot(dx, dy), kMinDistance);
      const double f = e.weight * d * d / k;
      disp[e.a].x -= dx / d * f;
      disp[e.a].y -= dy / d * f;
      disp[e.b].x += dx / d * f;
      disp[e.b].y += dy / d * f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double len = std::hypot(disp[i].x, disp[i].y);
      if (len > 0.0) {
        const double step = std::min(len, temperature);
        pos[i].x += disp[i].x / len * step;
        pos[i].y += disp[i].y / len * step;
      }
    }
    temperature -= cooling;
  }

  double min_x = pos[0].x, max_x = pos[0].x, min_y = pos[0].y, max_y = pos[0].y;
  for (const auto& p : pos) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span = std::max(max_x - min_x, max_y - min_y);
  for (auto& p : pos) {
    if (!(span > 0.0)) {
      p = {0.5, 0.5};
      continue;
    }
    p.x = std::clamp((p.x - min_x) / span + (1.0 - (max_x - min_x) / span) / 2.0, 0.0, 1.0);
    p.y = std::clamp((p.y - min_y) / span + (1.0 - (max_y - min_y) / span) / 2.0, 0.0, 1.0);
  }
  return pos;
}

std::string export_svg(const WeightedGraph& g, const LayoutCoordinates& coords,
                       const NodeColoring& colors) {
  const std::size_t n = g.node_count();
  if (coords.size() != n) throw InvalidArgument("layout does not cover the graph's nodes");

  std::vector<std::string> fill(n, std::string(kDefaultFill));
  if (const auto* p = std::get_if<Partition>(&colors); p && p->size() == n) {
    for (std::size_t i = 0; i < n; ++i)
      fill[i] = std::string(kPalette[p->assignment[i] % kPalette.size()]);
  } else if (const auto* s = std::get_if<ScoreVector>(&colors); s && s->size() == n && n > 0) {
    const auto [lo, hi] = std::minmax_element(s->values.begin(), s->values.end());
    for (std::size_t i = 0; i < n; ++i) {
      const double t = *hi > *lo ? (s->values[i] - *lo) / (*hi - *lo) : 0.5;
      fill[i] = ramp(s->direction == Direction::HigherIsCentral ? t : 1.0 - t);
    }
  }

  auto px = [](double v) { return kMargin + v * (kCanvas - 2.0 * kMargin); };
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kCanvas
      << "\" height=\"" << kCanvas << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
      << "<g stroke=\"#999999\" stroke-opacity=\"0.6\" stroke-width=\"0.5\">\n";
  for (const auto& e : g.edges()) {
    out << "<line x1=\"" << coord(px(coords[e.a].x)) << "\" y1=\"" << coord(px(coords[e.a].y))
        << "\" x2=\"" << coord(px(coords[e.b].x)) << "\" y2=\"" << coord(px(coords[e.b].y))
        << "\"/>\n";
  }
  out << "</g>\n<g stroke=\"#333333\" stroke-width=\"0.3\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    out << "<circle cx=\"" << coord(px(coords[i].x)) << "\" cy=\"" << coord(px(coords[i].y))
        << "\" r=\"" << kRadius << "\" fill=\"" << fill[i] << "\"><title>"
        << xml_escape(g.label(i)) << "</title></circle>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string export_csv(const Partition& p, const WeightedGraph& g) {
  if (p.size() != g.node_count()) throw InvalidArgument("partition does not cover the graph's nodes");
  std::vector<std::pair<std::string, std::string>> rows;
  rows.reserve(p.size());
  for (NodeId i = 0; i < p.size(); ++i) rows.emplace_back(g.label(i), std::to_string(p.assignment[i]));
  return csv_rows(std::move(rows));
}

std::string export_csv(const ScoreVector& scores) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    rows.emplace_back(scores.label(i), format_number(scores.values[i]));
  return csv_rows(std::move(rows));
}

std::map<std::string, double> parse_value_csv(std::string_view text) {
  std::map<std::string, double> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line != "label,value") throw ParseError(1, "expected header 'label,value'");
      continue;
    }
    if (line.empty()) continue;

    std::string label;
    std::size_t cursor = 0;
    if (line.front() == '"') {
      cursor = 1;
      while (true) {
        if (cursor >= line.size()) throw ParseError(line_no, "unterminated quoted label");
        if (line[cursor] == '"') {
          if (cursor + 1 < line.size() && line[cursor + 1] == '"') {
            label += '"';
            cursor += 2;
            continue;
          }
          ++cursor;
          break;
        }
        label += line[cursor++];
      }
      if (cursor >= line.size() || line[cursor] != ',')
        throw ParseError(line_no, "expected ',' after quoted label");
    } else {
      cursor = line.find(',');
      if (cursor == std::string_view::npos) throw ParseError(line_no, "expected 'label,value'");
      label = std::string(line.substr(0, cursor));
    }
    const auto value = line.substr(cursor + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size())
      throw ParseError(line_no, "malformed value '" + std::string(value) + "'");
    if (!out.emplace(label, v).second) throw ParseError(line_no, "duplicate label '" + label + "'");
  }
  return out;
}

}  // namespace cliquescope
