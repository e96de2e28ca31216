#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cliquescope/graph.hpp"
#include "cliquescope/scores.hpp"

namespace cliquescope {

// Neighbor count; weights ignored.
ScoreVector degree_centrality(const WeightedGraph& g);

// Number of maximal cliques containing each node.
ScoreVector clique_centrality(const WeightedGraph& g, bool pivoting = true);

// Sum of hop distances to every node reachable from i (lower is central).
// On a disconnected graph each node only sums over its own component; pair
// with component_sizes() to footnote it.
ScoreVector closeness_centrality(const WeightedGraph& g);

// Size of the connected component containing each node.
std::vector<std::size_t> component_sizes(const WeightedGraph& g);

// Brandes accumulation over hop-count BFS. Sums over unordered pairs {s, t}
// with s, t != i. Sources are split into fixed chunks that are reduced in
// chunk order, so the result does not depend on `threads`.
ScoreVector betweenness_centrality(const WeightedGraph& g, unsigned threads = 1);

struct KatzOptions {
  double alpha = 0.005;
  double beta = 1.0;
  double tol = 1e-9;
  std::size_t max_iter = 1000;
};

// Fixed point of x = alpha * A * x + beta * 1 on the unweighted adjacency,
// iterated from x = 0 until the max-norm change drops below tol. Throws
// ConvergenceError on divergence or when max_iter is exhausted.
ScoreVector katz_centrality(const WeightedGraph& g, const KatzOptions& options = {});

struct Ranking {
  std::shared_ptr<const LabelList> labels;
  // 1 = most central; ties share the mean of the positions they span.
  std::vector<double> ranks;
  std::string measure;

  std::size_t size() const noexcept { return ranks.size(); }
};

Ranking rank_scores(const ScoreVector& scores);

// Mean rank per node across `rankings` (lower is central). Throws
// InvalidArgument on an empty list or mismatched node sets.
ScoreVector average_rank(std::span<const Ranking> rankings);

struct ReportEntry {
  std::size_t rank;
  std::string label;
  double score;
};

// The k most central nodes, ties by ascending label. k == 0 throws.
std::vector<ReportEntry> top_k_report(const ScoreVector& scores, std::size_t k);

// Every node as `rank<TAB>label<TAB>score`, most central first.
void write_report(std::ostream& out, const ScoreVector& scores);

}  // namespace cliquescope
