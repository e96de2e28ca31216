#include "cliquescope/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "cliquescope/errors.hpp"
#include "cliquescope/format.hpp"

namespace cliquescope {
namespace {

constexpr std::size_t kDiscretizeMaxIter = 100;
constexpr double kRankTolerance = 1e-8;

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d += (a[j] - b[j]) * (a[j] - b[j]);
  return d;
}

double squared_norm(std::span<const double> a) {
  double d = 0.0;
  for (const double x : a) d += x * x;
  return d;
}

void check_k(std::size_t k, std::size_t n) {
  if (k == 0) throw InvalidArgument("cluster count k must be at least 1");
  if (k > n)
    throw InvalidArgument("cluster count k=" + std::to_string(k) + " exceeds node count " +
                          std::to_string(n));
}

// Initial rotation from k mutually far-apart row directions. Returns false
// when fewer than k independent directions exist.
bool initial_rotation(const RowMatrix& x, RowMatrix& rotation) {
  const std::size_t n = x.rows();
  const std::size_t k = x.cols();
  std::vector<double> norm(n);
  std::size_t first = 0;
  for (std::size_t i = 0; i < n; ++i) {
    norm[i] = std::sqrt(squared_norm(x.row(i)));
    if (norm[i] > norm[first]) first = i;
  }
  if (!(norm[first] > 0.0)) return false;

  rotation = RowMatrix(k, k);
  auto take = [&](std::size_t col, std::size_t row) {
    for (std::size_t j = 0; j < k; ++j) rotation(j, col) = x(row, j) / norm[row];
  };
  take(0, first);
  std::vector<double> overlap(n, 0.0);
  for (std::size_t col = 1; col < k; ++col) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(norm[i] > 0.0)) continue;
      double dot = 0.0;
      for (std::size_t j = 0; j < k; ++j) dot += x(i, j) / norm[i] * rotation(j, col - 1);
      overlap[i] += std::fabs(dot);
      if (pick == n || overlap[i] < overlap[pick]) pick = i;
    }
    take(col, pick);
  }
  const auto svd = square_svd(rotation);
  const auto [lo, hi] =
      std::minmax_element(svd.singular_values.begin(), svd.singular_values.end());
  return *lo > kRankTolerance * std::max(1.0, *hi);
}

std::vector<std::size_t> argmax_rows(const RowMatrix& m) {
  std::vector<std::size_t> labels(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < m.cols(); ++j) {
      if (m(i, j) > m(i, best)) best = j;
    }
    labels[i] = best;
  }
  return labels;
}

}  // namespace

Laplacian laplacian(const WeightedGraph& g, std::size_t dense_limit) {
  Laplacian l{to_dense_adjacency(g, dense_limit)};
  auto& m = l.matrix;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) m(i, j) = -m(i, j);
    m(i, i) = g.weighted_degree(i);
  }
  return l;
}

SpectralEmbedding smallest_eigenpairs(const Laplacian& l, std::size_t k,
                                      const JacobiOptions& options) {
  const std::size_t n = l.matrix.size();
  check_k(k, n);
  const auto eig = symmetric_eigen(l.matrix, options);
  SpectralEmbedding e;
  e.eigenvalues.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(k));
  e.vectors = RowMatrix(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) e.vectors(i, j) = eig.vectors(i, j);
  return e;
}

KMeansResult kmeans(const RowMatrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter, double tol) {
  const std::size_t n = points.rows();
  const std::size_t dim = points.cols();
  check_k(k, n);

  // Farthest-point seeding.
  std::vector<std::size_t> chosen;
  std::size_t first = 0;
  if (seed == 0) {
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double norm = squared_norm(points.row(i));
      if (norm > best) {
        best = norm;
        first = i;
      }
    }
  } else {
    first = static_cast<std::size_t>(seed % n);
  }
  chosen.push_back(first);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (chosen.size() < k) {
    const auto last = points.row(chosen.back());
    std::size_t pick = 0;
    double far = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(points.row(i), last));
      if (nearest[i] > far) {
        far = nearest[i];
        pick = i;
      }
    }
    chosen.push_back(pick);
  }

  RowMatrix centroids(k, dim);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < dim; ++j) centroids(c, j) = points(chosen[c], j);

  KMeansResult out;
  std::vector<std::size_t> labels(n, 0);
  std::vector<std::size_t> counts(k);
  while (true) {
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = squared_distance(points.row(i), centroids.row(0));
      for (std::size_t c = 1; c < k; ++c) {
        const double d = squared_distance(points.row(i), centroids.row(c));
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      labels[i] = best;
      objective += best_d;
    }
    out.objective.push_back(objective);
    if (out.iterations == max_iter) break;
    ++out.iterations;

    RowMatrix updated(k, dim);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[labels[i]];
      for (std::size_t j = 0; j < dim; ++j) updated(labels[i], j) += points(i, j);
    }
    double movement = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t j = 0; j < dim; ++j) {
        // An empty cluster keeps its centroid.
        updated(c, j) = counts[c] ? updated(c, j) / static_cast<double>(counts[c]) : centroids(c, j);
      }
      movement = std::max(movement, std::sqrt(squared_distance(updated.row(c), centroids.row(c))));
    }
    centroids = std::move(updated);
    if (movement < tol) break;
  }
  out.partition = Partition::from_labels(labels);
  return out;
}

Partition kmeans_labels(const SpectralEmbedding& e, std::size_t k, std::uint64_t seed) {
  return kmeans(e.vectors, k, seed).partition;
}

DiscretizeResult discretize(const SpectralEmbedding& e) {
  const RowMatrix& x = e.vectors;
  const std::size_t n = x.rows();
  const std::size_t k = x.cols();
  if (k == 0) throw InvalidArgument("embedding has no columns");
  check_k(k, n);

  DiscretizeResult out;
  RowMatrix rotation;
  if (!initial_rotation(x, rotation)) {
    out.partition = kmeans_labels(e, k, 0);
    out.fell_back = true;
    return out;
  }

  auto labels = argmax_rows(x * rotation);
  const RowMatrix xt = x.transpose();
  while (out.iterations < kDiscretizeMaxIter) {
    // X^T Y, Y the n x k indicator of the current labels.
    RowMatrix m(k, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) m(j, labels[i]) += xt(j, i);
    const auto svd = square_svd(m);
    rotation = svd.u * svd.v.transpose();
    ++out.iterations;

    auto next = argmax_rows(x * rotation);
    if (next == labels) break;
    labels = std::move(next);
  }
  out.partition = Partition::from_labels(labels);
  return out;
}

Partition discretize_labels(const SpectralEmbedding& e) { return discretize(e).partition; }

Partition spectral_cluster(const WeightedGraph& g, std::size_t k, LabelMode mode,
                           std::uint64_t seed, std::size_t dense_limit) {
  check_k(k, g.node_count());
  const auto embedding = smallest_eigenpairs(laplacian(g, dense_limit), k);
  return mode == LabelMode::KMeans ? kmeans_labels(embedding, k, seed)
                                   : discretize_labels(embedding);
}

void write_embedding(std::ostream& out, const SpectralEmbedding& e, const WeightedGraph& g) {
  for (std::size_t i = 0; i < e.vectors.rows(); ++i) {
    out << g.label(i);
    for (std::size_t j = 0; j < e.vectors.cols(); ++j) out << '\t' << format_number(e.vectors(i, j));
    out << '\n';
  }
}

}  // namespace cliquescope
