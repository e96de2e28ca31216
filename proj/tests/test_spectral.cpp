#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cliquescope/errors.hpp"
#include "cliquescope/spectral.hpp"
#include "oracles.hpp"

using namespace cliquescope;

namespace {

// Determinant by Gaussian elimination with partial pivoting.
double determinant(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    if (a[pivot][c] == 0.0) return 0.0;
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

double max_residual(const Laplacian& l, const SpectralEmbedding& e) {
  const std::size_t n = l.matrix.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < e.dimension(); ++j)
    for (std::size_t i = 0; i < n; ++i) {
      double lv = 0.0;
      for (std::size_t t = 0; t < n; ++t) lv += l.matrix(i, t) * e.vectors(t, j);
      worst = std::max(worst, std::fabs(lv - e.eigenvalues[j] * e.vectors(i, j)));
    }
  return worst;
}

double max_gram_error(const SpectralEmbedding& e) {
  double worst = 0.0;
  for (std::size_t a = 0; a < e.dimension(); ++a)
    for (std::size_t b = 0; b < e.dimension(); ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < e.vectors.rows(); ++i) dot += e.vectors(i, a) * e.vectors(i, b);
      worst = std::max(worst, std::fabs(dot - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

RowMatrix rows_of(const std::vector<std::vector<double>>& rows) {
  RowMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

// Disjoint union of connected random graphs; returns the graph and its components.
std::pair<WeightedGraph, Partition> random_union(std::mt19937_64& rng, std::size_t parts) {
  LabelList labels;
  std::vector<Edge> edges;
  std::vector<std::size_t> truth;
  std::size_t base = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t n = 2 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back("p" + std::to_string(p) + "_" + std::to_string(i));
      truth.push_back(p);
    }
    // Random spanning tree keeps the part connected, extra edges add variety.
    for (std::size_t i = 1; i < n; ++i)
      edges.push_back({base + rng() % i, base + i, 0.5 + static_cast<double>(rng() % 5)});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng() % 3 != 0) continue;
        const bool present = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
          return e.a == base + i && e.b == base + j;
        });
        if (!present) edges.push_back({base + i, base + j, 1.0});
      }
    base += n;
  }
  return {WeightedGraph::from_edges(std::move(labels), std::move(edges)),
          Partition::from_labels(truth)};
}

}  // namespace

TEST_CASE("laplacian examples") {
  const auto l = laplacian(parse_edge_list("a,b"));
  CHECK(l.matrix(0, 0) == 1.0);
  CHECK(l.matrix(0, 1) == -1.0);
  CHECK(l.matrix(1, 0) == -1.0);
  CHECK(l.matrix(1, 1) == 1.0);

  const auto z = laplacian(WeightedGraph::from_edges({"a", "b", "c"}, {}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(z.matrix(i, j) == 0.0);

  CHECK_THROWS_AS(laplacian(oracle::complete_graph(5), 4), InvalidArgument);
}

TEST_CASE("path a-b-c has eigenvalues 0, 1, 3") {
  const auto l = laplacian(parse_edge_list("a,b\nb,c"));
  const auto e = smallest_eigenpairs(l, 3);
  const std::vector<double> expected{0.0, 1.0, 3.0};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::fabs(e.eigenvalues[i] - expected[i]) < 1e-9);
    // Oracle: each is a root of the characteristic polynomial.
    std::vector<std::vector<double>> shifted(3, std::vector<double>(3));
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) shifted[r][c] = l.matrix(r, c) - (r == c ? expected[i] : 0.0);
    CHECK(std::fabs(determinant(shifted)) < 1e-12);
  }
  CHECK(max_residual(l, e) < 1e-6);
  CHECK(max_gram_error(e) < 1e-6);
  // Constant eigenvector for 0, sign fixed positive.
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::fabs(e.vectors(i, 0) - 1.0 / std::sqrt(3.0)) < 1e-9);
}

TEST_CASE("K2 eigenvalues and component multiplicity") {
  const auto k2 = smallest_eigenpairs(laplacian(parse_edge_list("a,b")), 2);
  CHECK(std::fabs(k2.eigenvalues[0]) < 1e-9);
  CHECK(std::fabs(k2.eigenvalues[1] - 2.0) < 1e-9);

  const auto l = laplacian(oracle::clique_blocks({3, 3}));
  const auto e = smallest_eigenpairs(l, 6);
  std::size_t zeros = 0;
  for (const double v : e.eigenvalues) zeros += std::fabs(v) < 1e-9 ? 1 : 0;
  CHECK(zeros == 2);

  CHECK_THROWS_AS(smallest_eigenpairs(l, 0), InvalidArgument);
  CHECK_THROWS_AS(smallest_eigenpairs(l, 7), InvalidArgument);
}

TEST_CASE("symmetric_eigen honors the sweep cap") {
  const auto l = laplacian(oracle::random_graph(12, 0.5, 5));
  CHECK_THROWS_AS(symmetric_eigen(l.matrix, {1e-300, 1}), ConvergenceError);
}

TEST_CASE("square_svd reconstructs its input") {
  const auto a = rows_of({{2, 0, 1}, {0, 0, 0}, {1, 0, 3}});
  const auto svd = square_svd(a);
  RowMatrix s(3, 3);
  for (std::size_t i = 0; i < 3; ++i) s(i, i) = svd.singular_values[i];
  const auto back = svd.u * s * svd.v.transpose();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::fabs(back(i, j) - a(i, j)) < 1e-12);
  const auto utu = svd.u.transpose() * svd.u;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::fabs(utu(i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("kmeans examples") {
  const auto points = rows_of({{0, 0}, {5, 5}, {10, 0}});
  const auto r = kmeans(points, 3, 0);
  CHECK(r.partition.count == 3);

  const auto groups = rows_of({{0, 0}, {0.1, 0}, {0, 0.1}, {9, 9}, {9.1, 9}, {9, 9.1}});
  const auto truth = Partition::from_labels({0, 0, 0, 1, 1, 1});
  for (const std::uint64_t seed : {0, 1, 2, 3, 4, 5, 17})
    CHECK(same_partition(kmeans(groups, 2, seed).partition, truth));

  CHECK(kmeans(groups, 1, 0).partition == Partition::single_community(6));
  CHECK_THROWS_AS(kmeans(groups, 7, 0), InvalidArgument);
  CHECK_THROWS_AS(kmeans(groups, 0, 0), InvalidArgument);
}

TEST_CASE("property: kmeans objective is non-increasing") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    RowMatrix pts(40, 3);
    for (std::size_t i = 0; i < 40; ++i)
      for (std::size_t j = 0; j < 3; ++j) pts(i, j) = noise(rng) + static_cast<double>(i % 3) * 2.0;
    const auto r = kmeans(pts, 2 + trial % 4, static_cast<std::uint64_t>(trial));
    for (std::size_t i = 1; i < r.objective.size(); ++i)
      CHECK(r.objective[i] <= r.objective[i - 1] + 1e-12);
    CHECK(r.partition.count <= 2 + static_cast<std::size_t>(trial % 4));
  }
}

TEST_CASE("discretize examples") {
  SpectralEmbedding onehot;
  onehot.vectors = rows_of({{1, 0}, {0, 1}, {1, 0}, {0, 1}});
  onehot.eigenvalues = {0, 0};
  const auto r = discretize(onehot);
  CHECK(r.partition == Partition::from_labels({0, 1, 0, 1}));
  CHECK(r.iterations == 1);
  CHECK_FALSE(r.fell_back);

  SpectralEmbedding single;
  single.vectors = rows_of({{0.5}, {0.5}, {0.5}});
  single.eigenvalues = {0};
  CHECK(discretize_labels(single) == Partition::single_community(3));

  // Rank 1 embedding with k = 2 takes the kmeans path.
  SpectralEmbedding degenerate;
  degenerate.vectors = rows_of({{1, 2}, {2, 4}, {3, 6}});
  degenerate.eigenvalues = {0, 0};
  CHECK(discretize(degenerate).fell_back);
}

TEST_CASE("spectral_cluster examples") {
  const auto two = oracle::clique_blocks({3, 3});
  for (const auto mode : {LabelMode::KMeans, LabelMode::Discretize}) {
    CHECK(same_partition(spectral_cluster(two, 2, mode), Partition::from_labels({0, 0, 0, 1, 1, 1})));
    CHECK(same_partition(spectral_cluster(oracle::clique_blocks({4, 4, 4}), 3, mode),
                         Partition::from_labels({0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2})));
    CHECK(spectral_cluster(oracle::complete_graph(3), 1, mode) == Partition::single_community(3));
  }
}

TEST_CASE("write_embedding") {
  const auto g = parse_edge_list("a,b");
  const auto e = smallest_eigenpairs(laplacian(g), 1);
  std::ostringstream out;
  write_embedding(out, e, g);
  CHECK(out.str() == "a\t0.707107\nb\t0.707107\n");
}

TEST_CASE("property: spectral invariants on random disjoint unions") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t parts = 2 + trial % 3;
    const auto [g, truth] = random_union(rng, parts);
    CAPTURE(trial);
    const auto l = laplacian(g);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < g.node_count(); ++j) row += l.matrix(i, j);
      CHECK(std::fabs(row) < 1e-12);
      CHECK(l.matrix(i, i) >= 0.0);
    }
    const auto e = smallest_eigenpairs(l, parts);
    CHECK(max_residual(l, e) < 1e-6);
    CHECK(max_gram_error(e) < 1e-6);
    for (std::size_t j = 1; j < parts; ++j) CHECK(e.eigenvalues[j] >= e.eigenvalues[j - 1]);
    const auto full = smallest_eigenpairs(l, g.node_count());
    for (const double v : full.eigenvalues) CHECK(v >= -1e-9);

    CHECK(same_partition(kmeans_labels(e, parts, 0), truth));
    CHECK(same_partition(discretize_labels(e), truth));
  }
}
