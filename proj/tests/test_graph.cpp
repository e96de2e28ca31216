#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cliquescope/errors.hpp"
#include "cliquescope/graph.hpp"
#include "oracles.hpp"

using namespace cliquescope;

namespace {

// Edge set keyed by labels, independent of internal ids.
std::map<std::pair<std::string, std::string>, double> labeled_edges(const WeightedGraph& g) {
  std::map<std::pair<std::string, std::string>, double> out;
  for (const auto& e : g.edges()) {
    auto a = g.label(e.a);
    auto b = g.label(e.b);
    if (b < a) std::swap(a, b);
    out[{a, b}] = e.weight;
  }
  return out;
}

std::string edge_list_text(const WeightedGraph& g) {
  std::ostringstream out;
  for (const auto& e : g.edges()) out << g.label(e.a) << ',' << g.label(e.b) << ',' << e.weight << '\n';
  return out.str();
}

}  // namespace

TEST_CASE("parse_edge_list builds the undirected graph") {
  const auto g = parse_edge_list("a,b,2\nb,c,1");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.total_weight() == 3.0);
  CHECK(g.labels() == LabelList{"a", "b", "c"});
  CHECK(g.summary() == "nodes=3 edges=2 total_weight=3");
}

TEST_CASE("parse_edge_list deduplicates symmetric lines") {
  const auto g = parse_edge_list("a,b,1\nb,a,1");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.total_weight() == 1.0);
}

TEST_CASE("parse_edge_list trims fields, skips blank lines, defaults weight") {
  const auto g = parse_edge_list("  a , b \n\n b ,c, 2.5 \r\n");
  CHECK(g.edge_count() == 2);
  CHECK(g.edge_weight(*g.find("a"), *g.find("b")) == 1.0);
  CHECK(g.edge_weight(*g.find("b"), *g.find("c")) == 2.5);
}

TEST_CASE("parse_edge_list with whitespace delimiters") {
  const auto g = parse_edge_list("1 2 4\n2\t3   1\n", ParseOptions{' '});
  CHECK(g.node_count() == 3);
  CHECK(g.total_weight() == 5.0);
}

TEST_CASE("parse_edge_list errors carry line numbers") {
  auto line_of = [](std::string_view text) {
    try {
      parse_edge_list(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("a,a,1") == 1);
  CHECK(line_of("a,b,1\nb,c,-1") == 2);
  CHECK(line_of("a,b,1\nb,a,2") == 2);
  CHECK(line_of("a,b,1\n\nonlyone") == 3);
  CHECK(line_of("a,b,x") == 1);
  CHECK(line_of("a,b,1,2") == 1);
  CHECK(line_of("a,,1") == 1);
  CHECK(line_of("a,b,nan") == 1);
  CHECK(line_of("a,b,1.5abc") == 1);
  CHECK_THROWS_WITH_AS(parse_edge_list("x,x,1"), doctest::Contains("self-loop"), ParseError);
}

TEST_CASE("identical repeated lines are accepted") {
  const auto g = parse_edge_list("a,b,2\na,b,2\nb,a,2");
  CHECK(g.edge_count() == 1);
  CHECK(g.total_weight() == 2.0);
}

TEST_CASE("read_edge_list reports missing files as IoError") {
  CHECK_THROWS_AS(read_edge_list("/nonexistent/graph.csv"), IoError);
}

TEST_CASE("drop_zero_edges keeps nodes and positive edges") {
  const auto g = parse_edge_list("a,b,0\nb,c,2");
  const auto d = drop_zero_edges(g);
  CHECK(d.labels() == LabelList{"a", "b", "c"});
  CHECK(d.edge_count() == 1);
  CHECK(d.edge_weight(1, 2) == 2.0);
  CHECK(d.degree(0) == 0);

  const auto positive = parse_edge_list("a,b,1\nb,c,3");
  CHECK(drop_zero_edges(positive) == positive);

  const auto zeros = parse_edge_list("a,b,0\nb,c,0");
  const auto empty = drop_zero_edges(zeros);
  CHECK(empty.node_count() == 3);
  CHECK(empty.edge_count() == 0);
  CHECK(empty.fingerprint() == zeros.fingerprint());
}

TEST_CASE("weighted_degree") {
  const auto star = parse_edge_list("c,1\nc,2\nc,3\nc,4");
  CHECK(star.weighted_degree(*star.find("c")) == 4.0);

  const auto g = parse_edge_list("a,b,2\na,c,3\nd,e,0");
  CHECK(g.weighted_degree(*g.find("a")) == 5.0);
  CHECK(g.weighted_degree(*g.find("d")) == 0.0);

  const auto isolated = WeightedGraph::from_edges({"solo"}, {});
  CHECK(isolated.weighted_degree(0) == 0.0);
  CHECK_THROWS_AS(isolated.weighted_degree(1), InvalidArgument);
}

TEST_CASE("to_dense_adjacency") {
  const auto single = WeightedGraph::from_edges({"0", "1"}, {{0, 1, 2.0}});
  const auto m = to_dense_adjacency(single);
  CHECK(m(0, 0) == 0.0);
  CHECK(m(0, 1) == 2.0);
  CHECK(m(1, 0) == 2.0);
  CHECK(m(1, 1) == 0.0);

  const auto edgeless = WeightedGraph::from_edges({"a", "b", "c"}, {});
  const auto z = to_dense_adjacency(edgeless);
  CHECK(z.size() == 3);
  CHECK(std::all_of(z.data().begin(), z.data().end(), [](double x) { return x == 0.0; }));

  const auto tri = oracle::complete_graph(3);
  const auto t = to_dense_adjacency(tri);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(t(i, j) == (i == j ? 0.0 : 1.0));

  CHECK_THROWS_AS(to_dense_adjacency(tri, 2), InvalidArgument);
}

TEST_CASE("from_edges rejects invariant violations") {
  CHECK_THROWS_AS(WeightedGraph::from_edges({"a", "a"}, {}), InvalidArgument);
  CHECK_THROWS_AS(WeightedGraph::from_edges({"a", ""}, {}), InvalidArgument);
  CHECK_THROWS_AS(WeightedGraph::from_edges({"a", "b"}, {{0, 0, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(WeightedGraph::from_edges({"a", "b"}, {{0, 1, 1.0}, {1, 0, 1.0}}),
                  InvalidArgument);
  CHECK_THROWS_AS(WeightedGraph::from_edges({"a", "b"}, {{0, 2, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(WeightedGraph::from_edges({"a", "b"}, {{0, 1, -0.5}}), InvalidArgument);
}

TEST_CASE("connected_components") {
  const auto g = parse_edge_list("a,b\nc,d\nb,e");
  const auto comp = connected_components(g);
  CHECK(comp == std::vector<std::size_t>{0, 0, 1, 1, 0});
}

TEST_CASE("property: graph-core invariants on random graphs") {
  std::mt19937_64 rng(7);
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 15;
    const double p = (trial % 3 + 1) * 0.25;
    auto g = oracle::random_graph(n, p, 1000 + trial, true);
    // Sprinkle zero weights onto every third edge.
    auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); i += 3) edges[i].weight = 0.0;
    g = WeightedGraph::from_edges(g.labels(), edges);
    CAPTURE(trial);

    // Degree sum = 2 * total weight.
    double degree_sum = 0.0;
    for (NodeId i = 0; i < g.node_count(); ++i) degree_sum += g.weighted_degree(i);
    CHECK(degree_sum == doctest::Approx(2.0 * g.total_weight()).epsilon(1e-12));

    // Symmetry of stored adjacency.
    for (const auto& e : g.edges()) CHECK(g.edge_weight(e.b, e.a) == e.weight);

    // Dense round trip.
    const auto m = to_dense_adjacency(g);
    for (NodeId i = 0; i < n; ++i) {
      std::size_t nonzero_or_listed = 0;
      for (NodeId j = 0; j < n; ++j) {
        const auto w = g.edge_weight(i, j);
        CHECK(m(i, j) == w.value_or(0.0));
        if (w) ++nonzero_or_listed;
      }
      CHECK(nonzero_or_listed == g.degree(i));
    }

    // drop_zero_edges idempotent.
    const auto once = drop_zero_edges(g);
    CHECK(drop_zero_edges(once) == once);

    // Order-insensitive parsing: same labeled edge set, ids by first appearance.
    auto lines = edge_list_text(g);
    std::vector<std::string> rows;
    std::istringstream split(lines);
    for (std::string row; std::getline(split, row);) rows.push_back(row);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::string shuffled;
    for (const auto& r : rows) shuffled += r + "\n";
    const auto a = parse_edge_list(lines);
    const auto b = parse_edge_list(shuffled);
    CHECK(labeled_edges(a) == labeled_edges(b));
    std::vector<std::string> first_seen;
    for (const auto& r : rows) {
      for (const auto& field : {r.substr(0, r.find(',')),
                                r.substr(r.find(',') + 1, r.rfind(',') - r.find(',') - 1)}) {
        if (std::find(first_seen.begin(), first_seen.end(), field) == first_seen.end())
          first_seen.push_back(field);
      }
    }
    CHECK(b.labels() == first_seen);
  }
}
