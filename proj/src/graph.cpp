#include "cliquescope/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "cliquescope/errors.hpp"
#include "cliquescope/format.hpp"

namespace cliquescope {
namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t value) {
  for (int byte = 0; byte < 8; ++byte) {
    h ^= (value >> (8 * byte)) & 0xffU;
    h *= kFnvPrime;
  }
}

std::uint64_t pair_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view kBlank = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(kBlank);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kBlank);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  if (delimiter == ' ' || delimiter == '\t') {
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      if (pos >= line.size()) break;
      const auto end = line.find_first_of(" \t", pos);
      const auto stop = end == std::string_view::npos ? line.size() : end;
      fields.push_back(line.substr(pos, stop - pos));
      pos = stop;
    }
    return fields;
  }
  std::size_t pos = 0;
  while (true) {
    const auto end = line.find(delimiter, pos);
    if (end == std::string_view::npos) {
      fields.push_back(trim(line.substr(pos)));
      break;
    }
    fields.push_back(trim(line.substr(pos, end - pos)));
    pos = end + 1;
  }
  return fields;
}

void check_weight(double weight) {
  if (!std::isfinite(weight)) throw InvalidArgument("edge weight must be finite");
  if (weight < 0.0) throw InvalidArgument("negative edge weight " + format_number(weight));
}

}  // namespace

WeightedGraph::WeightedGraph()
    : labels_(std::make_shared<const LabelList>()), offsets_(1, 0) {}

WeightedGraph WeightedGraph::from_edges(LabelList labels, std::vector<Edge> edges) {
  WeightedGraph g;
  const std::size_t n = labels.size();
  for (NodeId i = 0; i < n; ++i) {
    if (labels[i].empty()) throw InvalidArgument("empty node label");
    if (!g.index_.emplace(labels[i], i).second)
      throw InvalidArgument("duplicate node label '" + labels[i] + "'");
  }

  std::vector<std::size_t> counts(n, 0);
  for (auto& e : edges) {
    if (e.a >= n || e.b >= n) throw InvalidArgument("edge endpoint out of range");
    if (e.a == e.b) throw InvalidArgument("self-loop on '" + labels[e.a] + "'");
    check_weight(e.weight);
    if (e.a > e.b) std::swap(e.a, e.b);
    ++counts[e.a];
    ++counts[e.b];
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].a == edges[k - 1].a && edges[k].b == edges[k - 1].b)
      throw InvalidArgument("duplicate edge '" + labels[edges[k].a] + "' - '" +
                            labels[edges[k].b] + "'");
  }

  g.offsets_.assign(n + 1, 0);
  for (NodeId i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + counts[i];
  g.neighbors_.resize(g.offsets_[n]);
  g.weighted_degree_.assign(n, 0.0);

  std::vector<std::vector<Neighbor>> lists(n);
  for (const auto& e : edges) {
    lists[e.a].push_back({e.b, e.weight});
    lists[e.b].push_back({e.a, e.weight});
    g.weighted_degree_[e.a] += e.weight;
    g.weighted_degree_[e.b] += e.weight;
    g.total_weight_ += e.weight;
  }
  for (NodeId i = 0; i < n; ++i) {
    std::sort(lists[i].begin(), lists[i].end(),
              [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
    std::copy(lists[i].begin(), lists[i].end(),
              g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]));
  }
  g.labels_ = std::make_shared<const LabelList>(std::move(labels));
  return g;
}

void WeightedGraph::check_id(NodeId i) const {
  if (i >= node_count())
    throw InvalidArgument("node id " + std::to_string(i) + " out of range (n=" +
                          std::to_string(node_count()) + ")");
}

const std::string& WeightedGraph::label(NodeId i) const {
  check_id(i);
  return (*labels_)[i];
}

std::optional<NodeId> WeightedGraph::find(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const Neighbor> WeightedGraph::neighbors(NodeId i) const {
  check_id(i);
  return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

std::size_t WeightedGraph::degree(NodeId i) const {
  check_id(i);
  return offsets_[i + 1] - offsets_[i];
}

double WeightedGraph::weighted_degree(NodeId i) const {
  check_id(i);
  return weighted_degree_[i];
}

std::optional<double> WeightedGraph::edge_weight(NodeId a, NodeId b) const {
  const auto list = neighbors(a);
  check_id(b);
  const auto it = std::lower_bound(list.begin(), list.end(), b,
                                   [](const Neighbor& x, NodeId id) { return x.node < id; });
  if (it == list.end() || it->node != b) return std::nullopt;
  return it->weight;
}

bool WeightedGraph::has_edge(NodeId a, NodeId b) const { return edge_weight(a, b).has_value(); }

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId i = 0; i < node_count(); ++i) {
    for (const auto& nb : neighbors(i)) {
      if (nb.node > i) out.push_back({i, nb.node, nb.weight});
    }
  }
  return out;
}

std::uint64_t WeightedGraph::fingerprint() const {
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, node_count());
  for (const auto& label : *labels_) {
    for (const char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= kFnvPrime;
    }
    fnv_mix(h, label.size());
  }
  for (const auto& e : edges()) {
    if (e.weight <= 0.0) continue;
    fnv_mix(h, e.a);
    fnv_mix(h, e.b);
  }
  return h;
}

std::string WeightedGraph::summary() const {
  return "nodes=" + std::to_string(node_count()) + " edges=" + std::to_string(edge_count()) +
         " total_weight=" + format_number(total_weight_);
}

bool operator==(const WeightedGraph& lhs, const WeightedGraph& rhs) {
  return *lhs.labels_ == *rhs.labels_ && lhs.offsets_ == rhs.offsets_ &&
         lhs.neighbors_ == rhs.neighbors_;
}

NodeId GraphBuilder::add_node(std::string_view label) {
  if (label.empty()) throw InvalidArgument("empty node label");
  const auto [it, inserted] = index_.try_emplace(std::string(label), labels_.size());
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

void GraphBuilder::add_edge(std::string_view a, std::string_view b, double weight) {
  check_weight(weight);
  if (a == b) throw InvalidArgument("self-loop on '" + std::string(a) + "'");
  const NodeId ia = add_node(a);
  const NodeId ib = add_node(b);
  const auto key = pair_key(ia, ib);
  const auto [it, inserted] = edge_index_.try_emplace(key, edges_.size());
  if (!inserted) {
    const double existing = edges_[it->second].weight;
    if (existing != weight) {
      throw InvalidArgument("edge '" + std::string(a) + "' - '" + std::string(b) +
                            "' repeated with conflicting weight " + format_number(weight) +
                            " (was " + format_number(existing) + ")");
    }
    return;
  }
  edges_.push_back({std::min(ia, ib), std::max(ia, ib), weight});
}

WeightedGraph GraphBuilder::build() && {
  return WeightedGraph::from_edges(std::move(labels_), std::move(edges_));
}

WeightedGraph parse_edge_list(std::istream& in, const ParseOptions& options) {
  GraphBuilder builder;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_fields(line, options.delimiter);
    if (fields.size() < 2 || fields.size() > 3)
      throw ParseError(line_no, "expected 2 or 3 fields, got " + std::to_string(fields.size()));
    if (fields[0].empty() || fields[1].empty()) throw ParseError(line_no, "empty node label");

    double weight = 1.0;
    if (fields.size() == 3) {
      const auto w = fields[2];
      const auto* first = w.data();
      const auto* last = w.data() + w.size();
      const auto [ptr, ec] = std::from_chars(first, last, weight);
      if (w.empty() || ec != std::errc{} || ptr != last)
        throw ParseError(line_no, "malformed weight '" + std::string(w) + "'");
    }
    try {
      builder.add_edge(fields[0], fields[1], weight);
    } catch (const InvalidArgument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (in.bad()) throw IoError("read failure while parsing edge list");
  return std::move(builder).build();
}

WeightedGraph parse_edge_list(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, options);
}

WeightedGraph read_edge_list(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_edge_list(in, options);
}

WeightedGraph drop_zero_edges(const WeightedGraph& g) {
  auto edges = g.edges();
  std::erase_if(edges, [](const Edge& e) { return !(e.weight > 0.0); });
  return WeightedGraph::from_edges(g.labels(), std::move(edges));
}

std::vector<std::size_t> connected_components(const WeightedGraph& g) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(g.node_count(), kUnset);
  std::vector<NodeId> stack;
  std::size_t next = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(v)) {
        if (comp[nb.node] == kUnset) {
          comp[nb.node] = next;
          stack.push_back(nb.node);
        }
      }
    }
    ++next;
  }
  return comp;
}

DenseMatrix to_dense_adjacency(const WeightedGraph& g, std::size_t limit) {
  if (g.node_count() > limit) {
    throw InvalidArgument("graph has " + std::to_string(g.node_count()) +
                          " nodes, above the dense limit of " + std::to_string(limit));
  }
  DenseMatrix m(g.node_count());
  for (const auto& e : g.edges()) {
    m(e.a, e.b) = e.weight;
    m(e.b, e.a) = e.weight;
  }
  return m;
}

}  // namespace cliquescope
