#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <string>

#include "cliquescope/errors.hpp"
#include "cliquescope/layout.hpp"
#include "oracles.hpp"

using namespace cliquescope;

namespace {

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1))
    ++n;
  return n;
}

std::set<std::string> fills(const std::string& svg) {
  std::set<std::string> out;
  const std::string key = "r=\"4\" fill=\"";
  for (auto pos = svg.find(key); pos != std::string::npos; pos = svg.find(key, pos + 1))
    out.insert(svg.substr(pos + key.size(), 7));
  return out;
}

}  // namespace

TEST_CASE("spring_layout determinism and bounds") {
  const auto g = oracle::random_graph(30, 0.15, 3, true);
  const auto a = spring_layout(g, 42);
  const auto b = spring_layout(g, 42);
  CHECK(a == b);
  CHECK(a != spring_layout(g, 43));
  REQUIRE(a.size() == 30);
  for (const auto& p : a) {
    CHECK(std::isfinite(p.x));
    CHECK(std::isfinite(p.y));
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 1.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y <= 1.0);
  }
}

TEST_CASE("spring_layout degenerate inputs") {
  const auto single = spring_layout(WeightedGraph::from_edges({"x"}, {}), 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == Point{0.5, 0.5});

  const auto k2 = spring_layout(parse_edge_list("a,b"), 0);
  CHECK(std::hypot(k2[0].x - k2[1].x, k2[0].y - k2[1].y) > 1e-3);

  CHECK(spring_layout(WeightedGraph{}, 0).empty());
  CHECK_THROWS_AS(spring_layout(parse_edge_list("a,b"), 0, 0), InvalidArgument);
}

TEST_CASE("Lcg64 follows the documented recurrence") {
  Lcg64 rng(0);
  CHECK(rng.next() == 1442695040888963407ULL);
  CHECK(rng.next() == 1442695040888963407ULL * 6364136223846793005ULL + 1442695040888963407ULL);
  Lcg64 u(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("export_svg structure and coloring") {
  const auto g = parse_edge_list("a,b\nb,c");
  const auto coords = spring_layout(g, 1);

  const auto two = export_svg(g, coords, Partition::from_labels({0, 0, 1}));
  CHECK(count_of(two, "<circle") == 3);
  CHECK(count_of(two, "<line") == 2);
  CHECK(fills(two).size() == 2);
  CHECK(two.rfind("</svg>\n") == two.size() - 7);

  const auto plain = export_svg(g, coords);
  CHECK(fills(plain) == std::set<std::string>{"#1f77b4"});

  ScoreVector equal;
  equal.labels = g.shared_labels();
  equal.values = {3, 3, 3};
  CHECK(fills(export_svg(g, coords, equal)).size() == 1);

  equal.values = {1, 2, 3};
  CHECK(fills(export_svg(g, coords, equal)).size() == 3);

  CHECK_THROWS_AS(export_svg(g, LayoutCoordinates{}), InvalidArgument);
}

TEST_CASE("export_svg escapes labels") {
  const auto g = parse_edge_list("<a>,b&c");
  const auto svg = export_svg(g, spring_layout(g, 0));
  CHECK(svg.find("<title>&lt;a&gt;</title>") != std::string::npos);
  CHECK(svg.find("<title>b&amp;c</title>") != std::string::npos);
}

TEST_CASE("export_csv examples") {
  const auto g = parse_edge_list("b,a");
  CHECK(export_csv(Partition::from_labels({1, 0}), g) == "label,value\na,1\nb,0\n");
  CHECK(export_csv(Partition::from_labels({0, 1}), parse_edge_list("a,b")) ==
        "label,value\na,0\nb,1\n");
  CHECK(export_csv(Partition{}, WeightedGraph{}) == "label,value\n");

  ScoreVector s;
  s.labels = std::make_shared<const LabelList>(LabelList{"x", "y", "z"});
  s.values = {1.0 / 3.0, 523.0, 1234567.5};
  CHECK(export_csv(s) == "label,value\nx,0.333333\ny,523\nz,1.23457e+06\n");
}

TEST_CASE("parse_value_csv rejects malformed input") {
  CHECK_THROWS_AS(parse_value_csv("name,value\na,1\n"), ParseError);
  CHECK_THROWS_AS(parse_value_csv("label,value\na\n"), ParseError);
  CHECK_THROWS_AS(parse_value_csv("label,value\na,x\n"), ParseError);
  CHECK_THROWS_AS(parse_value_csv("label,value\na,1\na,2\n"), ParseError);
  CHECK(parse_value_csv("label,value\n\"a,b\",2\n").at("a,b") == 2.0);
}

TEST_CASE("property: CSV round trip") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 25;
    LabelList labels;
    std::vector<std::size_t> raw;
    for (std::size_t i = 0; i < n; ++i) {
      std::string label = "n" + std::to_string(rng() % 1000) + "_" + std::to_string(i);
      if (i % 5 == 0) label += ",\"q\"";
      labels.push_back(label);
      raw.push_back(rng() % 4);
    }
    const auto g = WeightedGraph::from_edges(labels, {});
    const auto p = Partition::from_labels(raw);
    const auto parsed = parse_value_csv(export_csv(p, g));
    REQUIRE(parsed.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(parsed.at(labels[i]) == static_cast<double>(p.assignment[i]));
  }
}
