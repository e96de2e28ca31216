// Python module `cliquescope`: graphs in, label-keyed dicts out.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "cliquescope/centrality.hpp"
#include "cliquescope/cli.hpp"
#include "cliquescope/cliques.hpp"
#include "cliquescope/community.hpp"
#include "cliquescope/errors.hpp"
#include "cliquescope/layout.hpp"
#include "cliquescope/spectral.hpp"

namespace py = pybind11;
using namespace cliquescope;

namespace {

py::dict by_label(const ScoreVector& s) {
  py::dict d;
  for (std::size_t i = 0; i < s.size(); ++i) d[py::str(s.label(i))] = s.values[i];
  return d;
}

py::dict by_label(const Partition& p, const WeightedGraph& g) {
  py::dict d;
  for (NodeId i = 0; i < p.size(); ++i) d[py::str(g.label(i))] = p.assignment[i];
  return d;
}

Partition partition_from(const WeightedGraph& g, const std::map<std::string, std::size_t>& m) {
  std::vector<std::size_t> raw(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto it = m.find(g.label(i));
    if (it == m.end()) throw InvalidArgument("no community for node '" + g.label(i) + "'");
    raw[i] = it->second;
  }
  return Partition::from_labels(raw);
}

ScoreVector measure(const WeightedGraph& g, const std::string& name) {
  if (name == "degree") return degree_centrality(g);
  if (name == "clique") return clique_centrality(g);
  if (name == "closeness") return closeness_centrality(g);
  if (name == "betweenness") return betweenness_centrality(g);
  if (name == "katz") return katz_centrality(g);
  throw InvalidArgument("unknown measure '" + name + "'");
}

char delimiter_of(const std::string& d) {
  if (d.size() != 1) throw InvalidArgument("delimiter must be one character");
  return d[0];
}

}  // namespace

PYBIND11_MODULE(cliquescope, m) {
  m.doc() = "Weighted graph analytics: maximal cliques, centrality, Louvain and spectral clustering.";
  m.attr("__version__") = std::string(cli::kToolVersion);

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<WeightedGraph>(m, "Graph")
      .def_static(
          "parse",
          [](const std::string& text, const std::string& delimiter) {
            return parse_edge_list(text, ParseOptions{delimiter_of(delimiter)});
          },
          py::arg("text"), py::arg("delimiter") = ",")
      .def_static(
          "read",
          [](const std::filesystem::path& path, const std::string& delimiter) {
            return read_edge_list(path, ParseOptions{delimiter_of(delimiter)});
          },
          py::arg("path"), py::arg("delimiter") = ",")
      .def_property_readonly("labels", &WeightedGraph::labels)
      .def_property_readonly("node_count", &WeightedGraph::node_count)
      .def_property_readonly("edge_count", &WeightedGraph::edge_count)
      .def_property_readonly("total_weight", &WeightedGraph::total_weight)
      .def("edges",
           [](const WeightedGraph& g) {
             py::list out;
             for (const auto& e : g.edges()) out.append(py::make_tuple(g.label(e.a), g.label(e.b), e.weight));
             return out;
           })
      .def("drop_zero_edges", [](const WeightedGraph& g) { return drop_zero_edges(g); })
      .def("summary", &WeightedGraph::summary)
      .def("__len__", &WeightedGraph::node_count)
      .def("__repr__", [](const WeightedGraph& g) { return "<Graph " + g.summary() + ">"; });

  m.def(
      "maximal_cliques",
      [](const WeightedGraph& g, bool pivoting) {
        std::vector<std::vector<std::string>> out;
        for (const auto& c : bron_kerbosch(g, pivoting).cliques) {
          auto& members = out.emplace_back();
          for (const auto v : c) members.push_back(g.label(v));
        }
        return out;
      },
      py::arg("graph"), py::arg("pivoting") = true);

  m.def(
      "centrality", [](const WeightedGraph& g, const std::string& name) { return by_label(measure(g, name)); },
      py::arg("graph"), py::arg("measure"));
  m.def(
      "katz",
      [](const WeightedGraph& g, double alpha, double beta, double tol, std::size_t max_iter) {
        return by_label(katz_centrality(g, {alpha, beta, tol, max_iter}));
      },
      py::arg("graph"), py::arg("alpha") = 0.005, py::arg("beta") = 1.0, py::arg("tol") = 1e-9,
      py::arg("max_iter") = 1000);
  m.def(
      "average_rank",
      [](const WeightedGraph& g, const std::vector<std::string>& measures) {
        std::vector<Ranking> rankings;
        for (const auto& name : measures) rankings.push_back(rank_scores(measure(g, name)));
        return by_label(average_rank(rankings));
      },
      py::arg("graph"), py::arg("measures"));

  m.def(
      "modularity",
      [](const WeightedGraph& g, const std::map<std::string, std::size_t>& communities) {
        return modularity(g, partition_from(g, communities));
      },
      py::arg("graph"), py::arg("communities"));
  m.def(
      "louvain",
      [](const WeightedGraph& g, double min_gain, std::size_t max_levels) {
        const auto r = louvain(g, {min_gain, max_levels});
        py::dict d;
        d["partition"] = by_label(r.partition, g);
        d["modularity"] = r.modularity;
        d["levels"] = r.levels.size();
        d["trajectory"] = r.modularity_trajectory;
        return d;
      },
      py::arg("graph"), py::arg("min_gain") = 1e-7, py::arg("max_levels") = 50);
  m.def(
      "spectral_cluster",
      [](const WeightedGraph& g, std::size_t k, const std::string& mode, std::uint64_t seed) {
        if (mode != "kmeans" && mode != "discretize")
          throw InvalidArgument("mode must be 'kmeans' or 'discretize'");
        const auto lm = mode == "kmeans" ? LabelMode::KMeans : LabelMode::Discretize;
        return by_label(spectral_cluster(g, k, lm, seed), g);
      },
      py::arg("graph"), py::arg("k"), py::arg("mode") = "discretize", py::arg("seed") = 0);

  m.def(
      "spring_layout",
      [](const WeightedGraph& g, std::uint64_t seed, std::size_t iterations) {
        const auto coords = spring_layout(g, seed, iterations);
        py::dict d;
        for (NodeId i = 0; i < coords.size(); ++i)
          d[py::str(g.label(i))] = py::make_tuple(coords[i].x, coords[i].y);
        return d;
      },
      py::arg("graph"), py::arg("seed") = 0, py::arg("iterations") = kDefaultLayoutIterations);
  m.def(
      "export_svg",
      [](const WeightedGraph& g, std::uint64_t seed, std::size_t iterations,
         const std::optional<std::map<std::string, std::size_t>>& communities) {
        NodeColoring colors;
        if (communities) colors = partition_from(g, *communities);
        return export_svg(g, spring_layout(g, seed, iterations), colors);
      },
      py::arg("graph"), py::arg("seed") = 0, py::arg("iterations") = kDefaultLayoutIterations,
      py::arg("communities") = py::none());

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{std::string(cli::kToolName)};
        full.insert(full.end(), args.begin(), args.end());
        std::ostringstream out, err;
        const int code = cli::run(full, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool; returns (exit_code, stdout, stderr).");
}
