#include "cliquescope/centrality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include "cliquescope/cliques.hpp"
#include "cliquescope/errors.hpp"
#include "cliquescope/format.hpp"

namespace cliquescope {
namespace {

constexpr std::size_t kSourcesPerChunk = 64;
constexpr double kDivergenceBound = 1e150;

ScoreVector make_scores(const WeightedGraph& g, std::string measure, Direction direction) {
  ScoreVector s;
  s.labels = g.shared_labels();
  s.values.assign(g.node_count(), 0.0);
  s.measure = std::move(measure);
  s.direction = direction;
  return s;
}

// Hop distances from `source`; unreachable nodes stay at -1.
void bfs(const WeightedGraph& g, NodeId source, std::vector<long>& dist,
         std::vector<NodeId>& order) {
  std::fill(dist.begin(), dist.end(), -1);
  order.clear();
  dist[source] = 0;
  order.push_back(source);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeId v = order[head];
    for (const auto& nb : g.neighbors(v)) {
      if (dist[nb.node] < 0) {
        dist[nb.node] = dist[v] + 1;
        order.push_back(nb.node);
      }
    }
  }
}

// Brandes single-source pass for every source in [first, last), adding
// dependencies into `acc` (ordered pairs, so each unordered pair twice).
void accumulate_dependencies(const WeightedGraph& g, NodeId first, NodeId last,
                             std::vector<double>& acc) {
  const std::size_t n = g.node_count();
  std::vector<long> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId s = first; s < last; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      for (const auto& nb : g.neighbors(v)) {
        const NodeId w = nb.node;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (const NodeId v : order) delta[v] = 0.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (const auto& nb : g.neighbors(w)) {
        const NodeId v = nb.node;
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) acc[w] += delta[w];
    }
  }
}

std::vector<NodeId> central_first_order(const ScoreVector& s) {
  std::vector<NodeId> order(s.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  if (s.direction == Direction::HigherIsCentral) {
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return s.values[a] > s.values[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return s.values[a] < s.values[b]; });
  }
  return order;
}

}  // namespace

ScoreVector degree_centrality(const WeightedGraph& g) {
  auto s = make_scores(g, "degree", Direction::HigherIsCentral);
  for (NodeId i = 0; i < g.node_count(); ++i) s.values[i] = static_cast<double>(g.degree(i));
  return s;
}

ScoreVector clique_centrality(const WeightedGraph& g, bool pivoting) {
  return clique_membership_counts(bron_kerbosch(g, pivoting), g);
}

ScoreVector closeness_centrality(const WeightedGraph& g) {
  auto s = make_scores(g, "closeness", Direction::LowerIsCentral);
  std::vector<long> dist(g.node_count());
  std::vector<NodeId> order;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    bfs(g, i, dist, order);
    long total = 0;
    for (const NodeId v : order) total += dist[v];
    s.values[i] = static_cast<double>(total);
  }
  return s;
}

std::vector<std::size_t> component_sizes(const WeightedGraph& g) {
  const auto comp = connected_components(g);
  std::vector<std::size_t> size_of(g.node_count(), 0);
  for (const auto c : comp) ++size_of[c];
  std::vector<std::size_t> out(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) out[i] = size_of[comp[i]];
  return out;
}

ScoreVector betweenness_centrality(const WeightedGraph& g, unsigned threads) {
  auto s = make_scores(g, "betweenness", Direction::HigherIsCentral);
  const std::size_t n = g.node_count();
  const std::size_t chunks = (n + kSourcesPerChunk - 1) / kSourcesPerChunk;
  std::vector<std::vector<double>> partial(chunks);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      partial[c].assign(n, 0.0);
      const NodeId first = c * kSourcesPerChunk;
      accumulate_dependencies(g, first, std::min(n, first + kSourcesPerChunk), partial[c]);
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, std::max<std::size_t>(chunks, 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  for (const auto& p : partial) {
    for (NodeId i = 0; i < n; ++i) s.values[i] += p[i];
  }
  for (auto& v : s.values) v /= 2.0;
  return s;
}

ScoreVector katz_centrality(const WeightedGraph& g, const KatzOptions& options) {
  if (!(options.alpha > 0.0)) throw InvalidArgument("katz alpha must be positive");
  if (!(options.tol > 0.0)) throw InvalidArgument("katz tolerance must be positive");
  auto s = make_scores(g, "katz", Direction::HigherIsCentral);
  const std::size_t n = g.node_count();
  std::vector<double> x(n, 0.0);
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
    double change = 0.0;
    double largest = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      double sum = 0.0;
      for (const auto& nb : g.neighbors(i)) sum += x[nb.node];
      next[i] = options.alpha * sum + options.beta;
      change = std::max(change, std::fabs(next[i] - x[i]));
      largest = std::max(largest, std::fabs(next[i]));
    }
    x.swap(next);
    if (!std::isfinite(largest) || largest > kDivergenceBound) {
      throw ConvergenceError("katz iteration diverged after " + std::to_string(iter + 1) +
                             " iterations; alpha " + format_number(options.alpha) +
                             " exceeds 1/spectral radius");
    }
    if (change < options.tol) {
      s.values = std::move(x);
      return s;
    }
  }
  throw ConvergenceError("katz iteration did not converge within " +
                         std::to_string(options.max_iter) + " iterations (alpha " +
                         format_number(options.alpha) + ")");
}

Ranking rank_scores(const ScoreVector& scores) {
  Ranking r;
  r.labels = scores.labels;
  r.measure = scores.measure;
  r.ranks.assign(scores.size(), 0.0);
  const auto order = central_first_order(scores);
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && scores.values[order[end]] == scores.values[order[start]]) ++end;
    // positions start+1 .. end share their mean
    const double mean = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t k = start; k < end; ++k) r.ranks[order[k]] = mean;
    start = end;
  }
  return r;
}

ScoreVector average_rank(std::span<const Ranking> rankings) {
  if (rankings.empty()) throw InvalidArgument("average rank needs at least one ranking");
  const auto& first = rankings.front();
  for (const auto& r : rankings) {
    const bool same_labels =
        r.labels == first.labels ||
        (r.labels && first.labels && *r.labels == *first.labels);
    if (r.size() != first.size() || !same_labels)
      throw InvalidArgument("ranking '" + r.measure + "' covers a different node set than '" +
                            first.measure + "'");
  }
  ScoreVector s;
  s.labels = first.labels;
  s.measure = "average-rank";
  s.direction = Direction::LowerIsCentral;
  s.values.assign(first.size(), 0.0);
  for (const auto& r : rankings) {
    for (std::size_t i = 0; i < r.size(); ++i) s.values[i] += r.ranks[i];
  }
  const auto count = static_cast<double>(rankings.size());
  for (auto& v : s.values) v /= count;
  return s;
}

std::vector<ReportEntry> top_k_report(const ScoreVector& scores, std::size_t k) {
  if (k == 0) throw InvalidArgument("top-k report needs k >= 1");
  std::vector<NodeId> order(scores.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  const bool higher = scores.direction == Direction::HigherIsCentral;
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const double sa = scores.values[a];
    const double sb = scores.values[b];
    if (sa != sb) return higher ? sa > sb : sa < sb;
    return scores.label(a) < scores.label(b);
  });
  order.resize(std::min(k, order.size()));
  std::vector<ReportEntry> out;
  out.reserve(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    out.push_back({pos + 1, scores.label(order[pos]), scores.values[order[pos]]});
  return out;
}

void write_report(std::ostream& out, const ScoreVector& scores) {
  if (scores.size() == 0) return;
  for (const auto& e : top_k_report(scores, scores.size()))
    out << e.rank << '\t' << e.label << '\t' << format_number(e.score) << '\n';
}

}  // namespace cliquescope
