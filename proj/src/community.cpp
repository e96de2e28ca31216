#include "cliquescope/community.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <set>

#include "cliquescope/errors.hpp"
#include "cliquescope/format.hpp"

namespace cliquescope {
namespace {

void require_weight(double twice_total) {
  if (!(twice_total > 0.0)) throw InvalidArgument("modularity is undefined for a graph with no edge weight");
}

// Weight from `node` into each community it touches, self-loop excluded.
class NeighborWeights {
 public:
  explicit NeighborWeights(std::size_t communities)
      : weight_(communities, 0.0), seen_(communities, 0) {}

  void gather(const AggregateGraph& g, std::span<const std::size_t> assignment, NodeId node) {
    for (const auto c : touched_) {
      weight_[c] = 0.0;
      seen_[c] = 0;
    }
    touched_.clear();
    for (const auto& nb : g.neighbors(node)) {
      const auto c = assignment[nb.node];
      if (!seen_[c]) {
        seen_[c] = 1;
        touched_.push_back(c);
      }
      weight_[c] += nb.weight;
    }
  }

  double operator[](std::size_t c) const { return weight_[c]; }
  const std::vector<std::size_t>& touched() const { return touched_; }

 private:
  std::vector<double> weight_;
  std::vector<unsigned char> seen_;
  std::vector<std::size_t> touched_;
};

struct LevelOutcome {
  std::vector<std::size_t> assignment;
  bool moved = false;
};

LevelOutcome local_moving(const AggregateGraph& g, double min_gain) {
  const std::size_t n = g.node_count();
  const double two_m = g.twice_total_weight();
  LevelOutcome out;
  out.assignment.resize(n);
  std::vector<double> total(n);
  std::vector<std::set<NodeId>> members(n);
  for (NodeId i = 0; i < n; ++i) {
    out.assignment[i] = i;
    total[i] = g.degree(i);
    members[i].insert(i);
  }

  NeighborWeights weights(n);
  while (true) {
    double sweep_gain = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      const std::size_t home = out.assignment[i];
      const double k = g.degree(i);
      weights.gather(g, out.assignment, i);

      total[home] -= k;
      members[home].erase(i);
      // Gain of inserting the isolated node into c, scaled by m.
      auto insert_gain = [&](std::size_t c) { return weights[c] - total[c] * k / two_m; };
      const double stay = insert_gain(home);

      std::size_t best = home;
      double best_gain = 0.0;
      NodeId best_min = 0;
      bool have = false;
      for (const auto c : weights.touched()) {
        if (c == home) continue;
        const double gain = insert_gain(c);
        const NodeId smallest = *members[c].begin();
        if (!have || gain > best_gain || (gain == best_gain && smallest < best_min)) {
          best = c;
          best_gain = gain;
          best_min = smallest;
          have = true;
        }
      }
      if (!have || !(best_gain > stay)) best = home;

      total[best] += k;
      members[best].insert(i);
      if (best != home) {
        out.assignment[i] = best;
        out.moved = true;
        sweep_gain += 2.0 * (best_gain - stay) / two_m;
      }
    }
    if (sweep_gain < min_gain) break;
  }
  return out;
}

}  // namespace

AggregateGraph AggregateGraph::from_graph(const WeightedGraph& g) {
  AggregateGraph a;
  const std::size_t n = g.node_count();
  a.offsets_.assign(n + 1, 0);
  a.self_loop_.assign(n, 0.0);
  a.degree_.assign(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    const auto list = g.neighbors(i);
    a.neighbors_.insert(a.neighbors_.end(), list.begin(), list.end());
    a.offsets_[i + 1] = a.neighbors_.size();
    a.degree_[i] = g.weighted_degree(i);
  }
  a.twice_total_weight_ = 2.0 * g.total_weight();
  return a;
}

AggregateGraph AggregateGraph::collapse(std::span<const std::size_t> community,
                                        std::size_t count) const {
  assert(community.size() == node_count());
  AggregateGraph a;
  a.self_loop_.assign(count, 0.0);
  a.degree_.assign(count, 0.0);
  std::vector<std::vector<Neighbor>> lists(count);
  for (NodeId i = 0; i < node_count(); ++i) {
    const auto ci = community[i];
    a.self_loop_[ci] += self_loop_[i];
    a.degree_[ci] += degree_[i];
    for (const auto& nb : neighbors(i)) {
      const auto cj = community[nb.node];
      if (ci == cj) {
        // Each internal edge is seen from both ends: 2w in total.
        a.self_loop_[ci] += nb.weight;
      } else {
        lists[ci].push_back({cj, nb.weight});
      }
    }
  }
  a.offsets_.assign(count + 1, 0);
  for (std::size_t c = 0; c < count; ++c) {
    auto& list = lists[c];
    std::sort(list.begin(), list.end(),
              [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
    for (const auto& nb : list) {
      if (!a.neighbors_.empty() && a.neighbors_.size() > a.offsets_[c] &&
          a.neighbors_.back().node == nb.node) {
        a.neighbors_.back().weight += nb.weight;
      } else {
        a.neighbors_.push_back(nb);
      }
    }
    a.offsets_[c + 1] = a.neighbors_.size();
  }
  a.twice_total_weight_ = twice_total_weight_;
  return a;
}

double modularity(const AggregateGraph& g, std::span<const std::size_t> assignment) {
  require_weight(g.twice_total_weight());
  if (assignment.size() != g.node_count())
    throw InvalidArgument("partition does not cover the graph's nodes");
  std::size_t count = 0;
  for (const auto c : assignment) count = std::max(count, c + 1);
  std::vector<double> inside(count, 0.0);
  std::vector<double> total(count, 0.0);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto c = assignment[i];
    total[c] += g.degree(i);
    inside[c] += g.self_loop(i);
    for (const auto& nb : g.neighbors(i)) {
      if (assignment[nb.node] == c) inside[c] += nb.weight;
    }
  }
  const double two_m = g.twice_total_weight();
  double q = 0.0;
  for (std::size_t c = 0; c < count; ++c) {
    q += inside[c] / two_m - (total[c] / two_m) * (total[c] / two_m);
  }
  return q;
}

double modularity(const WeightedGraph& g, const Partition& p) {
  require_weight(g.total_weight());
  if (p.size() != g.node_count()) throw InvalidArgument("partition does not cover the graph's nodes");
  return modularity(AggregateGraph::from_graph(g), p.assignment);
}

CommunityTotals CommunityTotals::compute(const AggregateGraph& g,
                                         std::span<const std::size_t> assignment,
                                         std::size_t community_count) {
  CommunityTotals t;
  t.total.assign(community_count, 0.0);
  for (NodeId i = 0; i < g.node_count(); ++i) t.total.at(assignment[i]) += g.degree(i);
  return t;
}

double modularity_gain(const AggregateGraph& g, std::span<const std::size_t> assignment,
                       const CommunityTotals& cache, NodeId node, std::size_t target) {
  require_weight(g.twice_total_weight());
  if (node >= g.node_count() || assignment.size() != g.node_count())
    throw InvalidArgument("node or assignment out of range");
  if (target >= cache.total.size() || assignment[node] >= cache.total.size())
    throw InvalidArgument("community id outside the cached totals");
  const std::size_t home = assignment[node];
  if (target == home) return 0.0;

  double to_home = 0.0;
  double to_target = 0.0;
  for (const auto& nb : g.neighbors(node)) {
    if (assignment[nb.node] == home) to_home += nb.weight;
    if (assignment[nb.node] == target) to_target += nb.weight;
  }
  const double two_m = g.twice_total_weight();
  const double k = g.degree(node);
  const double home_rest = cache.total[home] - k;
  const double gain_target = to_target - cache.total[target] * k / two_m;
  const double gain_home = to_home - home_rest * k / two_m;
  return 2.0 * (gain_target - gain_home) / two_m;
}

LouvainResult louvain(const WeightedGraph& g, const LouvainOptions& options) {
  require_weight(g.total_weight());
  LouvainResult result;
  std::vector<std::size_t> flat(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) flat[i] = i;

  AggregateGraph current = AggregateGraph::from_graph(g);
  while (result.levels.size() < options.max_levels) {
    const auto outcome = local_moving(current, options.min_gain);
    if (!outcome.moved) break;

    // Dense ids by first appearance, i.e. by smallest member.
    const Partition level = Partition::from_labels(outcome.assignment);
    for (auto& c : flat) c = level.assignment[c];
    Partition flattened;
    flattened.assignment = flat;
    flattened.count = level.count;

    result.modularity_trajectory.push_back(modularity(g, flattened));
    result.levels.push_back(flattened);
    current = current.collapse(level.assignment, level.count);
  }

  result.partition = result.levels.empty() ? Partition::singletons(g.node_count())
                                           : result.levels.back();
  result.modularity = modularity(g, result.partition);
  return result;
}

void write_partition(std::ostream& out, const Partition& p, const WeightedGraph& g) {
  for (NodeId i = 0; i < p.size(); ++i) out << g.label(i) << '\t' << p.assignment[i] << '\n';
}

std::string louvain_summary(const LouvainResult& result) {
  return "levels=" + std::to_string(result.levels.size()) +
         " communities=" + std::to_string(result.partition.count) +
         " modularity=" + format_fixed(result.modularity, 6);
}

}  // namespace cliquescope
