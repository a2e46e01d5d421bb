#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "docrank/docrank.hpp"

namespace docrank::cli {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Writes next to the destination and renames, so a failed command never
// leaves a partial primary output behind.
void write_atomically(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error("failed writing '" + path.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot move output into place at '" + path.string() + "'");
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string provenance(const RunConfig& config) {
  return "variant=" + std::string(to_string(config.variant)) + " config=" + config.hash();
}

std::string join(const std::vector<std::string>& items, std::size_t limit) {
  std::string out;
  for (std::size_t i = 0; i < items.size() && i < limit; ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  if (items.size() > limit) out += ", ... (" + std::to_string(items.size() - limit) + " more)";
  return out;
}

}  // namespace

Environment Environment::from_process() {
  Environment env;
  if (const char* value = std::getenv("DOCRANK_CONFIG"); value && *value) env.config_path = value;
  return env;
}

RunConfig effective_config(const std::optional<fs::path>& config_file,
                           const std::vector<std::pair<std::string, std::string>>& flag_values) {
  RunConfig config;
  if (config_file) {
    const auto text = read_text(*config_file);
    for (const auto& [key, value] : parse_key_values(text, config_file->string())) {
      try {
        config.set(key, value);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& ex) {
        throw Error(config_file->string() + ": " + ex.what());
      }
    }
  }
  for (const auto& [key, value] : flag_values) config.set(key, value);
  config.validate();
  return config;
}

void cmd_extract(const fs::path& source_dir, const fs::path& out_graph, const RunConfig& config,
                 unsigned threads, std::ostream& err) {
  ExtractionOptions options;
  options.strict = config.strict;
  options.threads = resolve_threads(threads);
  const auto result = extract_project(source_dir, options);
  for (const auto& d : result.diagnostics) {
    err << "docrank: warning: " << (d.path.empty() ? "" : d.path + ": ") << d.message << "\n";
  }
  write_atomically(out_graph, serialize_graph(result.graph));
  err << "extract: " << result.files_parsed << "/" << result.files_seen << " files parsed, "
      << result.graph.node_count() << " modules, " << result.graph.edge_count() << " edges, "
      << (result.files_seen - result.files_parsed) << " parse errors\n";
}

void cmd_rank(const fs::path& graph_path, const fs::path& out_csv, const RunConfig& config,
              std::optional<double> select_k, std::ostream& err) {
  auto graph = read_graph_file(graph_path);
  if (graph.node_count() == 0) throw Error("graph '" + graph_path.string() + "' has no modules");
  graph.set_weight_settings(config.weights());
  const auto scores = solve(graph, config.solver());
  if (!scores.converged) {
    err << "docrank: warning: solver stopped after " << scores.iterations_used
        << " iterations with error " << scores.final_error << "\n";
  }
  const auto ranked = rank(scores);
  if (select_k) {
    write_atomically(out_csv,
                     format_selection_csv(ranked, select_top(ranked, *select_k), provenance(config)));
  } else {
    write_atomically(out_csv, format_ranking_csv(ranked, provenance(config)));
  }
  err << "rank: " << ranked.size() << " modules, " << scores.iterations_used << " iterations, "
      << (scores.converged ? "converged" : "not converged") << "\n";
}

void cmd_evaluate(const fs::path& scores_path, const fs::path& labels_path,
                  const fs::path& out_json, const RunConfig& config, const std::string& approach,
                  unsigned threads, std::ostream& err) {
  const auto labels = read_labels_file(labels_path);
  if (labels.n_total() == 0) throw Error("labels file '" + labels_path.string() + "' is empty");
  if (labels.k_true() == 0) {
    throw Error("labels file '" + labels_path.string() + "' marks no module as important");
  }
  const auto modules = labels.modules();
  const std::set<std::string> labeled(modules.begin(), modules.end());

  const auto text = read_text(scores_path);
  const bool is_graph = text.compare(0, kGraphHeader.size(), kGraphHeader) == 0;

  ScoreVector scores;
  ScoreProvider provider;
  std::string default_approach;
  std::vector<std::string> missing;

  if (is_graph) {
    auto graph = deserialize_graph(text, scores_path.string());
    graph.set_weight_settings(config.weights());
    for (const auto& m : modules) {
      if (!graph.contains(m)) missing.push_back(m);
    }
    if (missing.empty()) {
      scores = score_subset(graph, labeled, config.subset_mode, config.solver());
      if (config.resolve_test_split) {
        provider = [graph = std::move(graph), config](const std::vector<std::string>& test) {
          const std::set<std::string> subset(test.begin(), test.end());
          const auto local = score_subset(graph, subset, config.subset_mode, config.solver());
          std::vector<double> out;
          for (const auto& m : test) out.push_back(local.score(m));
          return out;
        };
      }
    }
    default_approach = "pagerank-" + std::string(to_string(config.variant));
  } else {
    if (config.resolve_test_split) {
      throw Error("--resolve-test-split needs a graph file, not a ranking");
    }
    const auto all = parse_ranking_csv(text, scores_path.string());
    for (std::size_t i = 0; i < all.names.size(); ++i) {
      if (labeled.count(all.names[i])) {
        scores.names.push_back(all.names[i]);
        scores.scores.push_back(all.scores[i]);
      }
    }
    for (const auto& m : modules) {
      if (!std::binary_search(scores.names.begin(), scores.names.end(), m)) missing.push_back(m);
    }
    default_approach = scores_path.stem().string();
  }
  if (!missing.empty()) {
    throw Error(std::to_string(missing.size()) + " labeled modules have no score: " +
                join(missing, 20));
  }
  if (!provider) provider = restrict_scores(scores);

  MetricsReport report;
  report.approach = approach.empty() ? default_approach : approach;
  report.config = config;
  report.labels_digest = labels_digest(labels);
  report.n_labeled = labels.n_total();
  for (double k : config.thresholds) {
    auto r = evaluate_threshold(scores.names, scores.scores, labels, k);
    r.approach = report.approach;
    report.single_shot.push_back(std::move(r));
  }
  if (config.runs > 0) {
    BootstrapOptions options;
    options.thresholds = config.thresholds;
    options.runs = config.runs;
    options.threads = resolve_threads(threads);
    options.approach = report.approach;
    report.bootstrap = run_bootstrap(labels, provider, options);
  }
  write_atomically(out_json, format_metrics_json(report));
  err << "evaluate: " << labels.n_total() << " labeled modules (" << labels.k_true()
      << " important), " << config.thresholds.size() << " thresholds, " << config.runs
      << " bootstrap runs\n";
}

void cmd_compare(const fs::path& metrics_a, const fs::path& metrics_b, const fs::path& out_json,
                 std::ostream& err) {
  const auto a = parse_metrics_json(read_text(metrics_a), metrics_a.string());
  const auto b = parse_metrics_json(read_text(metrics_b), metrics_b.string());
  const auto cells = compare_metrics(a, b);
  write_atomically(out_json, format_comparison_json(a, b, cells));
  std::size_t significant = 0;
  for (const auto& c : cells) significant += c.p_adjusted < 0.05 ? 1 : 0;
  err << "compare: " << cells.size() << " cells, " << significant
      << " with adjusted p < 0.05\n";
}

namespace {

// The RunConfig flags shared by the subcommands that read a config.
struct ConfigFlags {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  bool strict = false;
  bool resolve = false;
  CLI::Option* strict_opt = nullptr;
  CLI::Option* resolve_opt = nullptr;
  CLI::Option* config_opt = nullptr;

  void add_value(CLI::App* app, const std::string& key, const std::string& flag,
                 const std::string& help) {
    auto* opt = app->add_option(flag, values[key], help);
    options.emplace_back(key, opt);
  }

  void attach(CLI::App* app, bool solver, bool evaluation, bool parsing) {
    config_opt = app->add_option("--config", config_file,
                                 "key=value config file (overrides DOCRANK_CONFIG)");
    if (solver) {
      add_value(app, "variant", "--variant", "scoring variant: base, w, r or wr");
      add_value(app, "damping", "--damping", "damping factor d (default 0.85)");
      add_value(app, "tolerance", "--tolerance", "L1 convergence tolerance (default 1e-7)");
      add_value(app, "max_iterations", "--max-iters", "iteration cap (default 100)");
      add_value(app, "back_fraction", "--back-fraction",
                "back-recommendation fraction 1/F (default 0.5)");
    }
    if (evaluation) {
      add_value(app, "thresholds", "--thresholds", "comma-separated k% list (default 5,...,50)");
      add_value(app, "runs", "--runs", "bootstrap runs (default 100; 0 disables)");
      add_value(app, "subset_mode", "--subset-mode", "subset_graph or whole_project");
      resolve_opt = app->add_flag("--resolve-test-split", resolve,
                                  "re-solve PageRank on each bootstrap test split");
    }
    if (parsing) strict_opt = app->add_flag("--strict", strict, "abort on the first parse error");
  }

  RunConfig resolve_config(const Environment& env) const {
    std::optional<fs::path> file;
    if (config_opt && config_opt->count()) {
      file = config_file;
    } else if (env.config_path) {
      file = *env.config_path;
    }
    std::vector<std::pair<std::string, std::string>> flags;
    for (const auto& [key, opt] : options) {
      if (opt->count()) flags.emplace_back(key, values.at(key));
    }
    if (strict_opt && strict_opt->count()) flags.emplace_back("strict", "true");
    if (resolve_opt && resolve_opt->count()) flags.emplace_back("resolve_test_split", "true");
    return effective_config(file, flags);
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  CLI::App app{"Rank modules of a code base for documentation effort and evaluate the ranking",
               "docrank"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("docrank ") + "0.1.0");

  unsigned threads = 0;

  // extract
  auto* extract = app.add_subcommand("extract", "Build a dependence graph from Java sources");
  std::string src_dir, extract_out;
  ConfigFlags extract_flags;
  extract->add_option("src_dir", src_dir, "source directory")->required();
  extract->add_option("-o,--output", extract_out, "graph file to write")->required();
  extract->add_option("--threads", threads, "parser threads (0 = all cores)");
  extract_flags.attach(extract, false, false, true);

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "Score and rank the modules of a graph");
  std::string graph_path, rank_out;
  double select_k = 0.0;
  ConfigFlags rank_flags;
  rank_cmd->add_option("graph", graph_path, "graph file")->required();
  rank_cmd->add_option("-o,--output", rank_out, "ranking CSV to write")->required();
  auto* select_opt = rank_cmd->add_option(
      "--select", select_k, "write the selection CSV for this k% instead of the plain ranking");
  rank_flags.attach(rank_cmd, true, false, false);

  // evaluate / bootstrap
  struct EvalArgs {
    std::string scores, labels, output, approach;
    ConfigFlags flags;
  };
  auto eval_args = std::make_unique<EvalArgs>();
  auto boot_args = std::make_unique<EvalArgs>();
  auto setup_eval = [&](CLI::App* cmd, EvalArgs& a) {
    cmd->add_option("scores", a.scores, "ranking CSV or graph file")->required();
    cmd->add_option("-l,--labels", a.labels, "labels CSV (module,label)")->required();
    cmd->add_option("-o,--output", a.output, "metrics JSON to write")->required();
    cmd->add_option("--approach", a.approach, "approach name recorded in the metrics file");
    cmd->add_option("--threads", threads, "bootstrap threads (0 = all cores)");
    a.flags.attach(cmd, true, true, false);
  };
  auto* evaluate = app.add_subcommand("evaluate", "Compute precision, recall, F1 and ER");
  setup_eval(evaluate, *eval_args);
  auto* bootstrap =
      app.add_subcommand("bootstrap", "Evaluate with out-of-sample bootstrap (runs >= 1)");
  setup_eval(bootstrap, *boot_args);

  // compare
  auto* compare = app.add_subcommand("compare", "Paired comparison of two bootstrap metrics files");
  std::string metrics_a, metrics_b, compare_out;
  compare->add_option("metrics_a", metrics_a, "first metrics JSON")->required();
  compare->add_option("metrics_b", metrics_b, "second metrics JSON")->required();
  compare->add_option("-o,--output", compare_out, "comparison JSON to write")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*extract) {
      cmd_extract(src_dir, extract_out, extract_flags.resolve_config(env), threads, err);
    } else if (*rank_cmd) {
      std::optional<double> k;
      if (select_opt->count()) k = select_k;
      cmd_rank(graph_path, rank_out, rank_flags.resolve_config(env), k, err);
    } else if (*evaluate || *bootstrap) {
      const auto& a = *evaluate ? *eval_args : *boot_args;
      const auto config = a.flags.resolve_config(env);
      if (*bootstrap && config.runs == 0) throw Error("bootstrap needs --runs of at least 1");
      cmd_evaluate(a.scores, a.labels, a.output, config, a.approach, threads, err);
    } else if (*compare) {
      cmd_compare(metrics_a, metrics_b, compare_out, err);
    }
  } catch (const std::exception& ex) {
    err << "docrank: error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace docrank::cli
