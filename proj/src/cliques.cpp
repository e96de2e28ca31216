#include "cliquescope/cliques.hpp"

#include <algorithm>
#include <iterator>
#include <ostream>

#include "cliquescope/errors.hpp"

namespace cliquescope {
namespace {

using NodeList = std::vector<NodeId>;

struct Frame {
  NodeList p;
  NodeList x;
  NodeList candidates;
  std::size_t next = 0;
};

class Enumerator {
 public:
  Enumerator(const WeightedGraph& g, bool pivoting)
      : adjacency_(g.node_count()), in_p_(g.node_count(), 0), pivoting_(pivoting) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      for (const auto& nb : g.neighbors(v)) {
        if (nb.weight > 0.0) adjacency_[v].push_back(nb.node);
      }
    }
  }

  std::vector<Clique> run() {
    const std::size_t n = adjacency_.size();
    NodeList all(n);
    for (NodeId v = 0; v < n; ++v) all[v] = v;
    enter(std::move(all), {});

    while (!stack_.empty()) {
      Frame& top = stack_.back();
      if (top.next == top.candidates.size()) {
        stack_.pop_back();
        if (!stack_.empty()) clique_.pop_back();
        continue;
      }
      const NodeId v = top.candidates[top.next++];
      const auto& nv = adjacency_[v];
      NodeList p_next;
      NodeList x_next;
      std::set_intersection(top.p.begin(), top.p.end(), nv.begin(), nv.end(),
                            std::back_inserter(p_next));
      std::set_intersection(top.x.begin(), top.x.end(), nv.begin(), nv.end(),
                            std::back_inserter(x_next));
      // P := P \ {v}, X := X u {v} before descending; the child owns copies.
      top.p.erase(std::lower_bound(top.p.begin(), top.p.end(), v));
      top.x.insert(std::lower_bound(top.x.begin(), top.x.end(), v), v);

      clique_.push_back(v);
      if (!enter(std::move(p_next), std::move(x_next))) clique_.pop_back();
    }
    return std::move(found_);
  }

 private:
  // Reports or pushes a frame for (R, P, X). Returns false when nothing was
  // pushed, so the caller can undo its R extension immediately.
  bool enter(NodeList p, NodeList x) {
    if (p.empty()) {
      if (x.empty() && !clique_.empty()) {
        Clique c = clique_;
        std::sort(c.begin(), c.end());
        found_.push_back(std::move(c));
      }
      return false;
    }
    Frame f;
    f.candidates = pivoting_ ? non_pivot_neighbors(p, x) : p;
    f.p = std::move(p);
    f.x = std::move(x);
    stack_.push_back(std::move(f));
    return true;
  }

  NodeList non_pivot_neighbors(const NodeList& p, const NodeList& x) {
    for (const NodeId v : p) in_p_[v] = 1;
    NodeId pivot = 0;
    std::size_t best = 0;
    bool have = false;
    auto consider = [&](NodeId u) {
      std::size_t count = 0;
      for (const NodeId w : adjacency_[u]) count += in_p_[w];
      if (!have || count > best || (count == best && u < pivot)) {
        pivot = u;
        best = count;
        have = true;
      }
    };
    for (const NodeId u : p) consider(u);
    for (const NodeId u : x) consider(u);
    for (const NodeId v : p) in_p_[v] = 0;

    NodeList out;
    const auto& np = adjacency_[pivot];
    std::set_difference(p.begin(), p.end(), np.begin(), np.end(), std::back_inserter(out));
    return out;
  }

  std::vector<NodeList> adjacency_;
  std::vector<unsigned char> in_p_;
  bool pivoting_;
  std::vector<Frame> stack_;
  Clique clique_;
  std::vector<Clique> found_;
};

}  // namespace

CliqueSet bron_kerbosch(const WeightedGraph& g, bool pivoting) {
  CliqueSet out;
  out.cliques = Enumerator(g, pivoting).run();
  std::sort(out.cliques.begin(), out.cliques.end());
  out.graph_fingerprint = g.fingerprint();
  out.node_count = g.node_count();
  return out;
}

ScoreVector clique_membership_counts(const CliqueSet& cliques, const WeightedGraph& g) {
  if (cliques.node_count != g.node_count() || cliques.graph_fingerprint != g.fingerprint())
    throw InvalidArgument("clique set was not enumerated from this graph");
  ScoreVector s;
  s.labels = g.shared_labels();
  s.values.assign(g.node_count(), 0.0);
  s.measure = "clique";
  s.direction = Direction::HigherIsCentral;
  for (const auto& c : cliques.cliques) {
    for (const NodeId v : c) s.values[v] += 1.0;
  }
  return s;
}

void write_cliques(std::ostream& out, const CliqueSet& cliques, const WeightedGraph& g) {
  for (const auto& c : cliques.cliques) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out << ' ';
      out << g.label(c[i]);
    }
    out << '\n';
  }
}

}  // namespace cliquescope
