#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "docrank/run_config.hpp"

namespace docrank::cli {

// Process inputs the commands read besides argv.
struct Environment {
  std::optional<std::string> config_path;  // DOCRANK_CONFIG

  static Environment from_process();
};

// Parses argv (without the program name) and runs one subcommand.
// Returns the process exit code; diagnostics go to `err`, help to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = Environment::from_process());

// The subcommands behind `run`. Each writes its primary output file
// atomically and throws docrank::Error on failure.
void cmd_extract(const std::filesystem::path& source_dir, const std::filesystem::path& out_graph,
                 const RunConfig& config, unsigned threads, std::ostream& err);

void cmd_rank(const std::filesystem::path& graph_path, const std::filesystem::path& out_csv,
              const RunConfig& config, std::optional<double> select_k, std::ostream& err);

void cmd_evaluate(const std::filesystem::path& scores_path,
                  const std::filesystem::path& labels_path, const std::filesystem::path& out_json,
                  const RunConfig& config, const std::string& approach, unsigned threads,
                  std::ostream& err);

void cmd_compare(const std::filesystem::path& metrics_a, const std::filesystem::path& metrics_b,
                 const std::filesystem::path& out_json, std::ostream& err);

// Defaults, then the config file (if any), then explicit flag values.
RunConfig effective_config(const std::optional<std::filesystem::path>& config_file,
                           const std::vector<std::pair<std::string, std::string>>& flag_values);

}  // namespace docrank::cli
