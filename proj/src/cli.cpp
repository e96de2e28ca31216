#include "cliquescope/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "cliquescope/cliques.hpp"
#include "cliquescope/errors.hpp"
#include "cliquescope/format.hpp"

namespace cliquescope::cli {
namespace {

constexpr std::size_t kSpectralDeskLimit = 3000;

const std::vector<std::string>& known_measures() {
  static const std::vector<std::string> names = {"degree", "clique", "closeness", "betweenness",
                                                 "katz"};
  return names;
}

bool is_known_measure(const std::string& name) {
  const auto& names = known_measures();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string column_title(const std::string& measure) {
  if (measure == "average-rank") return "Average Score";
  std::string title = measure;
  if (!title.empty()) title[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(title[0])));
  return title;
}

char parse_delimiter(const std::string& text) {
  if (text == "tab" || text == "\\t") return '\t';
  if (text == "space" || text == " ") return ' ';
  if (text == "comma") return ',';
  if (text.size() == 1) return text[0];
  throw InvalidArgument("delimiter must be a single character, 'tab', 'space' or 'comma'");
}

std::string delimiter_name(char d) {
  if (d == '\t') return "tab";
  if (d == ' ') return "space";
  return std::string(1, d);
}

// Inputs shared by every analysis of one invocation.
struct Inputs {
  WeightedGraph graph;
  WeightedGraph dropped;
  const RunConfig& config;

  // Degree and clique measures never see zero-weight edges; everything else
  // keeps them only on request.
  const WeightedGraph& for_measure(const std::string& measure) const {
    if (measure == "degree" || measure == "clique") return dropped;
    return structural();
  }
  const WeightedGraph& structural() const { return config.keep_zero_edges ? graph : dropped; }
};

ScoreVector compute_measure(const std::string& measure, const Inputs& in) {
  const auto& g = in.for_measure(measure);
  if (measure == "degree") return degree_centrality(g);
  if (measure == "clique") return clique_centrality(g, in.config.pivoting);
  if (measure == "closeness") return closeness_centrality(g);
  if (measure == "betweenness") return betweenness_centrality(g, in.config.threads);
  if (measure == "katz") return katz_centrality(g, in.config.katz);
  throw InvalidArgument("unknown centrality measure '" + measure + "'");
}

Direction direction_of(const std::string& measure) {
  return measure == "closeness" || measure == "average-rank" ? Direction::LowerIsCentral
                                                             : Direction::HigherIsCentral;
}

ScoreVector scores_from_log(const std::filesystem::path& path, const std::string& measure,
                            const WeightedGraph& g) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open log '" + path.string() + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  const auto values = parse_value_csv(buffer.str());
  if (values.size() != g.node_count())
    throw ParseError(0, "log '" + path.string() + "' has " + std::to_string(values.size()) +
                            " rows for a graph of " + std::to_string(g.node_count()) + " nodes");
  ScoreVector s;
  s.labels = g.shared_labels();
  s.measure = measure;
  s.direction = direction_of(measure);
  s.values.resize(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto it = values.find(g.label(i));
    if (it == values.end())
      throw ParseError(0, "log '" + path.string() + "' has no row for node '" + g.label(i) + "'");
    s.values[i] = it->second;
  }
  return s;
}

void print_table(std::ostream& out, const std::vector<ScoreVector>& columns, std::size_t top) {
  std::vector<std::vector<ReportEntry>> rows;
  out << "Rank";
  for (const auto& c : columns) {
    out << '\t' << column_title(c.measure);
    rows.push_back(c.size() ? top_k_report(c, top) : std::vector<ReportEntry>{});
  }
  out << '\n';
  const std::size_t depth = rows.empty() ? 0 : rows.front().size();
  for (std::size_t r = 0; r < depth; ++r) {
    out << r + 1;
    for (const auto& column : rows)
      out << '\t' << column[r].label << " (" << format_number(column[r].score) << ')';
    out << '\n';
  }
}

std::string report_text(const ScoreVector& s) {
  std::ostringstream out;
  write_report(out, s);
  return out.str();
}

class Artifacts {
 public:
  Artifacts(const RunConfig& config, std::ostream& out)
      : dir_(config.output_dir), stem_(config.input.stem().string()), out_(out) {}

  void write(const std::string& suffix, std::string_view content) {
    const auto path = write_log(dir_, stem_, suffix, content);
    out_ << "wrote " << path.string() << '\n';
  }

 private:
  std::filesystem::path dir_;
  std::string stem_;
  std::ostream& out_;
};

void maybe_svg(const RunConfig& config, Artifacts& files, const std::string& name,
               const WeightedGraph& g, NodeColoring colors) {
  if (!config.svg) return;
  const auto coords = spring_layout(g, config.seed, config.layout_iterations);
  files.write(name + ".svg", export_svg(g, coords, colors));
}

std::string meta_text(const RunConfig& config, double seconds) {
  std::ostringstream m;
  m << "tool=" << kToolName << '\n'
    << "version=" << kToolVersion << '\n'
    << "analysis=" << config.analysis_name() << '\n'
    << "input=" << config.input.string() << '\n'
    << "output_dir=" << config.output_dir.string() << '\n'
    << "delimiter=" << delimiter_name(config.delimiter) << '\n'
    << "keep_zero_edges=" << config.keep_zero_edges << '\n'
    << "pivoting=" << config.pivoting << '\n'
    << "seed=" << config.seed << '\n'
    << "svg=" << config.svg << '\n'
    << "layout_iterations=" << config.layout_iterations << '\n'
    << "threads=" << config.threads << '\n';
  switch (config.analysis) {
    case Analysis::Centrality:
      if (config.measure == "katz") {
        m << "alpha=" << format_number(config.katz.alpha) << '\n'
          << "beta=" << format_number(config.katz.beta) << '\n'
          << "tol=" << format_number(config.katz.tol) << '\n'
          << "max_iter=" << config.katz.max_iter << '\n';
      }
      break;
    case Analysis::AverageRank:
      m << "measures=" << join(config.measures, ",") << '\n';
      if (!config.from_logs.empty()) {
        std::vector<std::string> logs;
        for (const auto& p : config.from_logs) logs.push_back(p.string());
        m << "from_logs=" << join(logs, ",") << '\n';
      }
      break;
    case Analysis::Louvain:
      m << "min_gain=" << format_number(config.louvain.min_gain) << '\n'
        << "max_levels=" << config.louvain.max_levels << '\n';
      break;
    case Analysis::Spectral:
      m << "k=" << *config.k << '\n'
        << "mode=" << (config.label_mode == LabelMode::KMeans ? "kmeans" : "discretize") << '\n';
      break;
    case Analysis::Cliques:
      break;
  }
  m << "wall_time_seconds=" << format_fixed(seconds, 6) << '\n';
  return m.str();
}

}  // namespace

std::string RunConfig::analysis_name() const {
  switch (analysis) {
    case Analysis::Cliques: return "cliques";
    case Analysis::Centrality: return "centrality:" + measure;
    case Analysis::AverageRank: return "average-rank";
    case Analysis::Louvain: return "louvain";
    case Analysis::Spectral: return "spectral";
  }
  return {};
}

void parse_analysis(std::string_view token, RunConfig& config) {
  constexpr std::string_view kPrefix = "centrality:";
  if (token == "cliques") {
    config.analysis = Analysis::Cliques;
  } else if (token == "average-rank") {
    config.analysis = Analysis::AverageRank;
  } else if (token == "louvain") {
    config.analysis = Analysis::Louvain;
  } else if (token == "spectral") {
    config.analysis = Analysis::Spectral;
  } else if (token.starts_with(kPrefix)) {
    config.analysis = Analysis::Centrality;
    config.measure = std::string(token.substr(kPrefix.size()));
    if (!is_known_measure(config.measure))
      throw InvalidArgument("unknown centrality measure '" + config.measure + "' (expected one of " +
                            join(known_measures(), ", ") + ")");
  } else {
    throw InvalidArgument("unknown analysis '" + std::string(token) +
                          "' (expected cliques, centrality:<measure>, average-rank, louvain or "
                          "spectral)");
  }
}

void validate(const RunConfig& config) {
  if (config.analysis == Analysis::Spectral && !config.k)
    throw InvalidArgument("spectral requires --k");
  if (config.k && *config.k == 0) throw InvalidArgument("--k must be at least 1");
  if (config.analysis == Analysis::AverageRank) {
    if (config.measures.size() < 2)
      throw InvalidArgument("average-rank requires at least two measures in --measures");
    for (const auto& m : config.measures) {
      if (!is_known_measure(m)) throw InvalidArgument("unknown measure '" + m + "' in --measures");
    }
    if (!config.from_logs.empty() && config.from_logs.size() != config.measures.size())
      throw InvalidArgument("--from-logs needs exactly one log per entry of --measures");
  } else if (!config.from_logs.empty()) {
    throw InvalidArgument("--from-logs only applies to average-rank");
  }
  if (config.top == 0) throw InvalidArgument("--top must be at least 1");
  if (config.layout_iterations == 0) throw InvalidArgument("--layout-iterations must be at least 1");
}

unsigned thread_cap() {
  if (const char* env = std::getenv("CLIQUESCOPE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::filesystem::path write_log(const std::filesystem::path& dir, const std::string& stem,
                                const std::string& suffix, std::string_view content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = dir / (stem + "." + suffix);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + path.string() + "'");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.close();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
  return path;
}

void execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();

  auto graph = read_edge_list(config.input, ParseOptions{config.delimiter});
  auto dropped = drop_zero_edges(graph);
  const Inputs in{std::move(graph), std::move(dropped), config};
  out << in.graph.summary() << '\n';

  Artifacts files(config, out);
  switch (config.analysis) {
    case Analysis::Cliques: {
      const auto& g = in.dropped;
      const auto cliques = bron_kerbosch(g, config.pivoting);
      std::ostringstream text;
      write_cliques(text, cliques, g);
      std::size_t largest = 0;
      for (const auto& c : cliques.cliques) largest = std::max(largest, c.size());
      out << "cliques=" << cliques.cliques.size() << " largest=" << largest << '\n';
      files.write("cliques.txt", text.str());
      maybe_svg(config, files, "cliques", g, clique_membership_counts(cliques, g));
      break;
    }
    case Analysis::Centrality: {
      const auto scores = compute_measure(config.measure, in);
      print_table(out, {scores}, config.top);
      const auto& g = in.for_measure(config.measure);
      if (config.measure == "closeness") {
        const auto comps = connected_components(g);
        if (!comps.empty() && *std::max_element(comps.begin(), comps.end()) > 0)
          out << "note: graph is disconnected; closeness sums distances within each node's "
                 "component\n";
      }
      const std::string name = "centrality-" + config.measure;
      files.write(name + ".csv", export_csv(scores));
      files.write(name + ".tsv", report_text(scores));
      maybe_svg(config, files, name, g, scores);
      break;
    }
    case Analysis::AverageRank: {
      std::vector<ScoreVector> columns;
      std::vector<Ranking> rankings;
      for (std::size_t m = 0; m < config.measures.size(); ++m) {
        const auto& measure = config.measures[m];
        columns.push_back(config.from_logs.empty()
                              ? compute_measure(measure, in)
                              : scores_from_log(config.from_logs[m], measure, in.graph));
        rankings.push_back(rank_scores(columns.back()));
      }
      const auto average = average_rank(rankings);
      columns.push_back(average);
      print_table(out, columns, config.top);
      files.write("average-rank.csv", export_csv(average));
      files.write("average-rank.tsv", report_text(average));
      maybe_svg(config, files, "average-rank", in.dropped, average);
      break;
    }
    case Analysis::Louvain: {
      const auto& g = in.structural();
      const auto result = louvain(g, config.louvain);
      out << louvain_summary(result) << '\n';
      std::ostringstream partition;
      write_partition(partition, result.partition, g);
      files.write("louvain.csv", export_csv(result.partition, g));
      files.write("louvain.tsv", partition.str());
      maybe_svg(config, files, "louvain", g, result.partition);
      break;
    }
    case Analysis::Spectral: {
      const auto& g = in.structural();
      if (g.node_count() > kSpectralDeskLimit) {
        err << "warning: spectral mode targets graphs of at most " << kSpectralDeskLimit
            << " nodes; the dense eigensolver on " << g.node_count()
            << " nodes will be slow and memory hungry\n";
      }
      const auto embedding = smallest_eigenpairs(laplacian(g), *config.k);
      Partition p;
      if (config.label_mode == LabelMode::KMeans) {
        p = kmeans_labels(embedding, *config.k, config.seed);
      } else {
        const auto d = discretize(embedding);
        if (d.fell_back)
          err << "warning: embedding rank is below k; labels come from k-means (seed 0)\n";
        p = d.partition;
      }
      out << "communities=" << p.count << '\n';
      std::ostringstream partition;
      write_partition(partition, p, g);
      files.write("spectral.csv", export_csv(p, g));
      files.write("spectral.tsv", partition.str());
      if (config.dump_embedding) {
        std::ostringstream dump;
        write_embedding(dump, embedding, g);
        files.write("spectral.embedding.tsv", dump.str());
      }
      maybe_svg(config, files, "spectral", g, p);
      break;
    }
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  const auto meta = config.output_dir / "run.meta";
  std::ofstream file(meta, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + meta.string() + "'");
  file << meta_text(config, seconds);
  if (!file) throw IoError("failed writing '" + meta.string() + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Weighted social-graph analytics: maximal cliques, centrality rankings, "
               "Louvain and spectral communities.",
               std::string(kToolName)};
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string analysis;
  std::string input;
  std::string mode = "discretize";
  std::string delimiter = ",";
  std::string output_dir = ".";
  std::vector<std::string> from_logs;
  std::size_t k = 0;
  bool no_pivot = false;

  app.add_option("analysis", analysis,
                 "cliques | centrality:<degree|clique|closeness|betweenness|katz> | "
                 "average-rank | louvain | spectral")
      ->required();
  app.add_option("input", input, "Edge list: <node><delim><node>[<delim><weight>] per line")
      ->required();
  auto* k_opt = app.add_option("--k", k, "Number of spectral clusters (required for spectral)");
  app.add_option("--mode", mode, "Spectral label assignment")
      ->check(CLI::IsMember({"kmeans", "discretize"}))
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Seed for layout and k-means")->capture_default_str();
  app.add_option("--measures", config.measures, "Measures combined by average-rank")
      ->allow_extra_args(false)
      ->delimiter(',');
  app.add_option("--from-logs", from_logs,
                 "Join existing label,value CSVs (one per --measures entry) instead of recomputing")
      ->allow_extra_args(false)
      ->delimiter(',');
  app.add_option("-o,--out", output_dir, "Output directory")->capture_default_str();
  app.add_flag("--svg", config.svg, "Also write a spring-layout SVG");
  app.add_option("--layout-iterations", config.layout_iterations, "Spring layout iterations")
      ->capture_default_str();
  app.add_flag("--keep-zero-edges", config.keep_zero_edges,
               "Keep zero-weight edges for closeness, betweenness, katz, louvain and spectral");
  app.add_flag("--no-pivot", no_pivot, "Disable Bron-Kerbosch pivoting");
  app.add_option("--delimiter", delimiter, "Field delimiter: a character, 'tab' or 'space'")
      ->capture_default_str();
  app.add_option("--top", config.top, "Rows in the printed table")->capture_default_str();
  app.add_option("--alpha", config.katz.alpha, "Katz attenuation")->capture_default_str();
  app.add_option("--beta", config.katz.beta, "Katz constant term")->capture_default_str();
  app.add_option("--tol", config.katz.tol, "Katz convergence tolerance")->capture_default_str();
  app.add_option("--max-iter", config.katz.max_iter, "Katz iteration cap")->capture_default_str();
  app.add_option("--min-gain", config.louvain.min_gain, "Louvain sweep gain threshold")
      ->capture_default_str();
  app.add_option("--max-levels", config.louvain.max_levels, "Louvain level cap")
      ->capture_default_str();
  app.add_flag("--dump-embedding", config.dump_embedding, "Write the spectral embedding");
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  try {
    parse_analysis(analysis, config);
    config.input = input;
    config.output_dir = output_dir;
    config.delimiter = parse_delimiter(delimiter);
    config.label_mode = mode == "kmeans" ? LabelMode::KMeans : LabelMode::Discretize;
    config.pivoting = !no_pivot;
    if (k_opt->count() > 0) config.k = k;
    for (const auto& p : from_logs) config.from_logs.emplace_back(p);
    config.threads = thread_cap();
    validate(config);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    execute(config, out, err);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const ParseError& e) {
    err << "error: " << config.input.string() << ": " << e.what() << '\n';
    return kInputError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kSuccess;
}

}  // namespace cliquescope::cli
