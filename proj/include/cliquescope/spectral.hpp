#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cliquescope/graph.hpp"
#include "cliquescope/linalg.hpp"
#include "cliquescope/scores.hpp"

namespace cliquescope {

// Unnormalized graph Laplacian L = D - W.
struct Laplacian {
  DenseMatrix matrix;
};

Laplacian laplacian(const WeightedGraph& g, std::size_t dense_limit = kDefaultDenseLimit);

struct SpectralEmbedding {
  // n x k; column j is the eigenvector of the j-th smallest eigenvalue.
  RowMatrix vectors;
  std::vector<double> eigenvalues;

  std::size_t dimension() const noexcept { return vectors.cols(); }
};

// Requires 1 <= k <= n.
SpectralEmbedding smallest_eigenpairs(const Laplacian& l, std::size_t k,
                                      const JacobiOptions& options = {});

struct KMeansResult {
  Partition partition;
  // Sum of squared distances after each assignment step.
  std::vector<double> objective;
  std::size_t iterations = 0;
};

// Lloyd's algorithm on the rows of `points` with farthest-point seeding.
// Seed 0 starts from the largest-norm row; any other seed starts from row
// seed mod n. Later centroids maximize distance to those already chosen,
// ties going to the smallest row index.
KMeansResult kmeans(const RowMatrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter = 300, double tol = 1e-9);

Partition kmeans_labels(const SpectralEmbedding& e, std::size_t k, std::uint64_t seed);

struct DiscretizeResult {
  Partition partition;
  // Rotation updates performed before the assignment stopped changing.
  std::size_t iterations = 0;
  // The embedding had rank < k; labels come from kmeans_labels(seed 0).
  bool fell_back = false;
};

// Alternates argmax assignment of X*R with an orthogonal Procrustes update
// of R, for at most 100 rounds.
DiscretizeResult discretize(const SpectralEmbedding& e);
Partition discretize_labels(const SpectralEmbedding& e);

enum class LabelMode { KMeans, Discretize };

Partition spectral_cluster(const WeightedGraph& g, std::size_t k, LabelMode mode,
                           std::uint64_t seed = 0,
                           std::size_t dense_limit = kDefaultDenseLimit);

// `label<TAB>v1<TAB>...<TAB>vk` per node.
void write_embedding(std::ostream& out, const SpectralEmbedding& e, const WeightedGraph& g);

}  // namespace cliquescope
