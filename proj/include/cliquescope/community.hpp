#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cliquescope/graph.hpp"
#include "cliquescope/scores.hpp"

namespace cliquescope {

// Weighted graph with self-loops, used between Louvain levels. A collapsed
// community with internal undirected weight w carries self_loop = 2w, so
// weighted degrees and 2m survive aggregation unchanged.
class AggregateGraph {
 public:
  static AggregateGraph from_graph(const WeightedGraph& g);

  // One super-node per community; `community` must use dense ids < count.
  AggregateGraph collapse(std::span<const std::size_t> community, std::size_t count) const;

  std::size_t node_count() const noexcept { return self_loop_.size(); }
  // Neighbors other than i itself.
  std::span<const Neighbor> neighbors(NodeId i) const {
    return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  double self_loop(NodeId i) const { return self_loop_[i]; }
  // k_i, self-loop included.
  double degree(NodeId i) const { return degree_[i]; }
  // 2m = sum of all k_i.
  double twice_total_weight() const noexcept { return twice_total_weight_; }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> neighbors_;
  std::vector<double> self_loop_;
  std::vector<double> degree_;
  double twice_total_weight_ = 0.0;
};

// Q = (1/2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j). Throws
// InvalidArgument when the graph has no weight or the partition size is off.
double modularity(const WeightedGraph& g, const Partition& p);
double modularity(const AggregateGraph& g, std::span<const std::size_t> assignment);

// Sum of member degrees per community, kept in step with an assignment.
struct CommunityTotals {
  std::vector<double> total;

  static CommunityTotals compute(const AggregateGraph& g, std::span<const std::size_t> assignment,
                                 std::size_t community_count);
};

// Change in Q from moving `node` from its current community into `target`.
double modularity_gain(const AggregateGraph& g, std::span<const std::size_t> assignment,
                       const CommunityTotals& cache, NodeId node, std::size_t target);

struct LouvainOptions {
  double min_gain = 1e-7;
  std::size_t max_levels = 50;
};

struct LouvainResult {
  Partition partition;
  // Flattened onto the original nodes, one per level that merged something.
  std::vector<Partition> levels;
  std::vector<double> modularity_trajectory;
  double modularity = 0.0;
};

// Nodes are swept in ascending id order. A node moves only for a strictly
// positive gain; equal-gain targets resolve to the community holding the
// smallest node id.
LouvainResult louvain(const WeightedGraph& g, const LouvainOptions& options = {});

// `label<TAB>community_id` per node, in node order.
void write_partition(std::ostream& out, const Partition& p, const WeightedGraph& g);

// levels=<L> communities=<C> modularity=<Q>
std::string louvain_summary(const LouvainResult& result);

}  // namespace cliquescope
