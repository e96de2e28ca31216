#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cliquescope/graph.hpp"
#include "cliquescope/scores.hpp"

namespace cliquescope {

// Member ids, ascending.
using Clique = std::vector<NodeId>;

struct CliqueSet {
  // Canonical order: members ascending, cliques lexicographic.
  std::vector<Clique> cliques;
  std::uint64_t graph_fingerprint = 0;
  std::size_t node_count = 0;
};

// Enumerates every maximal clique of the graph formed by its positive-weight
// edges, isolated nodes included as singletons. With pivoting the pivot is
// the vertex of P u X with the most neighbors in P (ties: smallest id). The
// search keeps its own stack, so recursion depth never grows with clique size.
CliqueSet bron_kerbosch(const WeightedGraph& g, bool pivoting = true);

// score[i] = number of cliques containing i. Throws InvalidArgument when
// `cliques` was not enumerated from `g`.
ScoreVector clique_membership_counts(const CliqueSet& cliques, const WeightedGraph& g);

// One clique per line, member labels separated by single spaces.
void write_cliques(std::ostream& out, const CliqueSet& cliques, const WeightedGraph& g);

}  // namespace cliquescope
