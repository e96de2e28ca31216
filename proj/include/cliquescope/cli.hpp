#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cliquescope/centrality.hpp"
#include "cliquescope/community.hpp"
#include "cliquescope/layout.hpp"
#include "cliquescope/spectral.hpp"

namespace cliquescope::cli {

inline constexpr std::string_view kToolName = "cliquescope";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kConfigError = 3,
  kNonConvergence = 4,
};

enum class Analysis { Cliques, Centrality, AverageRank, Louvain, Spectral };

struct RunConfig {
  std::filesystem::path input;
  Analysis analysis = Analysis::Cliques;
  // Centrality measure for Analysis::Centrality.
  std::string measure;
  // Constituent measures for Analysis::AverageRank.
  std::vector<std::string> measures;
  // Existing label,value CSVs joined instead of recomputing, one per measure.
  std::vector<std::filesystem::path> from_logs;

  std::optional<std::size_t> k;
  std::uint64_t seed = 0;
  LabelMode label_mode = LabelMode::Discretize;
  bool dump_embedding = false;

  std::filesystem::path output_dir = ".";
  bool svg = false;
  std::size_t layout_iterations = kDefaultLayoutIterations;
  bool keep_zero_edges = false;
  bool pivoting = true;
  char delimiter = ',';
  std::size_t top = 10;
  unsigned threads = 1;

  KatzOptions katz;
  LouvainOptions louvain;

  // `cliques`, `centrality:degree`, ...
  std::string analysis_name() const;
};

// Parses `cliques | centrality:<measure> | average-rank | louvain | spectral`.
// Throws InvalidArgument on anything else.
void parse_analysis(std::string_view token, RunConfig& config);

// Throws InvalidArgument when the config breaks an invocation rule.
void validate(const RunConfig& config);

// CLIQUESCOPE_THREADS when set to a positive integer, else the hardware
// concurrency (at least 1).
unsigned thread_cap();

// Runs one validated analysis and writes its artifacts. Errors propagate as
// exceptions; run() maps them to exit codes.
void execute(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command line (args[0] is the program name) to exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes `<dir>/<stem>.<suffix>`, replacing any previous file. Throws IoError.
std::filesystem::path write_log(const std::filesystem::path& dir, const std::string& stem,
                                const std::string& suffix, std::string_view content);

}  // namespace cliquescope::cli
