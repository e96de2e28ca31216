#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cliquescope/graph.hpp"
#include "cliquescope/scores.hpp"

namespace cliquescope {

// 64-bit LCG (Knuth's MMIX constants); doubles take the top 53 bits. Used
// for layout seeding so positions match across platforms.
class Lcg64 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * kMultiplier + kIncrement;
    return state_;
  }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct Point {
  double x;
  double y;

  friend bool operator==(const Point&, const Point&) = default;
};

// One position per node, every coordinate in [0, 1].
using LayoutCoordinates = std::vector<Point>;

inline constexpr std::size_t kDefaultLayoutIterations = 50;

// Fruchterman-Reingold: all-pairs repulsion k^2/d, attraction w*d^2/k along
// each edge of weight w, step capped by a temperature that cools linearly
// from 0.1. Starts from LCG positions plus a 1e-6 * index jitter, then
// rescales into the unit square keeping the aspect ratio. Iterations must be
// at least 1.
LayoutCoordinates spring_layout(const WeightedGraph& g, std::uint64_t seed,
                                std::size_t iterations = kDefaultLayoutIterations);

using NodeColoring = std::variant<std::monostate, Partition, ScoreVector>;

// Standalone SVG 1.1: one <line> per edge, then one <circle> per node.
// Partitions use a categorical palette, scores a two-color ramp, monostate
// a single default fill.
std::string export_svg(const WeightedGraph& g, const LayoutCoordinates& coords,
                       const NodeColoring& colors = {});

// `label,value` with a header, rows ascending by label (byte order).
std::string export_csv(const Partition& p, const WeightedGraph& g);
std::string export_csv(const ScoreVector& scores);

// Reads the export_csv layout back. Throws ParseError on malformed rows.
std::map<std::string, double> parse_value_csv(std::string_view text);

}  // namespace cliquescope
