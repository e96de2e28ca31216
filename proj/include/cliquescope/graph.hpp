#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cliquescope {

using NodeId = std::size_t;
using LabelList = std::vector<std::string>;

struct Neighbor {
  NodeId node;
  double weight;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Undirected edge with a < b.
struct Edge {
  NodeId a;
  NodeId b;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable undirected weighted graph. Internal ids are dense 0..n-1 and
// map to external labels through label(). Adjacency is stored CSR-style with
// each neighbor list sorted by neighbor id.
class WeightedGraph {
 public:
  WeightedGraph();

  // Builds a graph from already-indexed edges. Rejects self-loops, duplicate
  // pairs, out-of-range ids, negative or non-finite weights, and empty or
  // repeated labels.
  static WeightedGraph from_edges(LabelList labels, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return labels_->size(); }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  const std::string& label(NodeId i) const;
  const LabelList& labels() const noexcept { return *labels_; }
  std::shared_ptr<const LabelList> shared_labels() const noexcept { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

  std::span<const Neighbor> neighbors(NodeId i) const;
  std::size_t degree(NodeId i) const;
  // Sum of incident edge weights.
  double weighted_degree(NodeId i) const;
  // Sum of each undirected edge's weight, counted once.
  double total_weight() const noexcept { return total_weight_; }

  bool has_edge(NodeId a, NodeId b) const;
  std::optional<double> edge_weight(NodeId a, NodeId b) const;

  // All undirected edges ordered by (a, b).
  std::vector<Edge> edges() const;

  // Hash of labels and positive-weight edges. Zero-weight edges are ignored,
  // so a graph and its drop_zero_edges() share a fingerprint.
  std::uint64_t fingerprint() const;

  // nodes=<n> edges=<e> total_weight=<w>
  std::string summary() const;

  friend bool operator==(const WeightedGraph& lhs, const WeightedGraph& rhs);

 private:
  void check_id(NodeId i) const;

  std::shared_ptr<const LabelList> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> neighbors_;
  std::vector<double> weighted_degree_;
  double total_weight_ = 0.0;
};

// Incremental label-based construction. Labels get internal ids in order of
// first appearance.
class GraphBuilder {
 public:
  NodeId add_node(std::string_view label);

  // Re-adding an existing pair (in either orientation) with the same weight
  // is a no-op; a different weight throws InvalidArgument.
  void add_edge(std::string_view a, std::string_view b, double weight = 1.0);

  std::size_t node_count() const noexcept { return labels_.size(); }

  WeightedGraph build() &&;

 private:
  LabelList labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::unordered_map<std::uint64_t, std::size_t> edge_index_;
  std::vector<Edge> edges_;
};

struct ParseOptions {
  // ' ' or '\t' split on runs of blanks; anything else splits on that
  // character exactly. Fields are trimmed either way.
  char delimiter = ',';
};

// Lines are `<labelA><delim><labelB>[<delim><weight>]`; blank lines are
// skipped. Throws ParseError carrying the 1-based line number.
WeightedGraph parse_edge_list(std::istream& in, const ParseOptions& options = {});
WeightedGraph parse_edge_list(std::string_view text, const ParseOptions& options = {});
WeightedGraph read_edge_list(const std::filesystem::path& path,
                             const ParseOptions& options = {});

// Same node set, only the edges with weight > 0.
WeightedGraph drop_zero_edges(const WeightedGraph& g);

// Connected-component id per node (ids in order of lowest member).
std::vector<std::size_t> connected_components(const WeightedGraph& g);

class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

inline constexpr std::size_t kDefaultDenseLimit = 20000;

// Throws InvalidArgument when the graph has more than `limit` nodes.
DenseMatrix to_dense_adjacency(const WeightedGraph& g,
                               std::size_t limit = kDefaultDenseLimit);

}  // namespace cliquescope
