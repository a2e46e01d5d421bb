#include "docrank/reports.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"

namespace docrank {

using Json = nlohmann::ordered_json;

namespace {

Json number_or_null(double value) {
  if (std::isnan(value)) return nullptr;
  return value;
}

Json indicator_fields(const IndicatorRecord& r) {
  Json j;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["er"] = number_or_null(r.er);
  return j;
}

Json rng_json() {
  Json j;
  j["name"] = std::string(kRngName);
  j["seed_rule"] = std::string(kRngSeedRule);
  j["bounded_draw"] = std::string(kRngBoundedDraw);
  return j;
}

}  // namespace

std::string labels_digest(const LabelSet& labels) {
  std::string canonical;
  for (const auto& [module, important] : labels.entries()) {
    canonical += module;
    canonical += important ? "=1\n" : "=0\n";
  }
  return fnv1a_hex(canonical);
}

std::string format_metrics_json(const MetricsReport& report) {
  Json root;
  root["format"] = std::string(kMetricsFormat);
  root["approach"] = report.approach;
  root["variant"] = std::string(to_string(report.config.variant));
  root["config"] = report.config.canonical();
  root["config_hash"] = report.config.hash();
  root["labels_digest"] = report.labels_digest;
  root["n_labeled"] = report.n_labeled;
  root["rng"] = rng_json();
  root["runs"] = report.bootstrap.empty() ? 0 : report.config.runs;

  Json single = Json::array();
  for (const auto& r : report.single_shot) {
    Json j;
    j["threshold"] = r.k_percent;
    j["tp"] = r.cm.tp;
    j["fp"] = r.cm.fp;
    j["tn"] = r.cm.tn;
    j["fn"] = r.cm.fn;
    j.update(indicator_fields(r));
    single.push_back(std::move(j));
  }
  root["single_shot"] = std::move(single);

  if (!report.bootstrap.empty()) {
    Json thresholds = Json::array();
    for (const auto& t : report.bootstrap) {
      Json j;
      j["threshold"] = t.k_percent;
      j["runs"] = t.per_run.size();
      Json mean;
      mean["precision"] = t.mean.precision;
      mean["recall"] = t.mean.recall;
      mean["f1"] = t.mean.f1;
      mean["er"] = number_or_null(t.mean.er);
      j["mean"] = std::move(mean);
      j["er_excluded_runs"] = t.er_excluded_runs;
      Json runs = Json::array();
      for (const auto& run : t.per_run) {
        Json rj;
        rj["run"] = run.run_index;
        rj["seed"] = run.seed;
        rj["test_size"] = run.test_size;
        rj["test_important"] = run.test_important;
        rj["selected"] = run.indicators.cm.predicted();
        rj["hits"] = run.indicators.cm.hits();
        rj.update(indicator_fields(run.indicators));
        runs.push_back(std::move(rj));
      }
      j["per_run"] = std::move(runs);
      thresholds.push_back(std::move(j));
    }
    root["bootstrap"] = std::move(thresholds);
  }
  return root.dump(2) + "\n";
}

LoadedMetrics parse_metrics_json(std::string_view text, const std::string& source) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& ex) {
    throw ParseError(source, 0, ex.byte, std::string("invalid JSON: ") + ex.what());
  }

  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError(source, 0, 0, what);
  };

  try {
    if (!root.is_object() || root.value("format", "") != kMetricsFormat) {
      throw fail("not a " + std::string(kMetricsFormat) + " file");
    }
    LoadedMetrics m;
    m.approach = root.at("approach").get<std::string>();
    m.variant = root.at("variant").get<std::string>();
    m.config_hash = root.at("config_hash").get<std::string>();
    m.labels_digest = root.at("labels_digest").get<std::string>();
    m.n_labeled = root.at("n_labeled").get<std::uint64_t>();
    const auto& rng = root.at("rng");
    m.rng_name = rng.at("name").get<std::string>();
    m.rng_seed_rule = rng.at("seed_rule").get<std::string>();
    m.rng_bounded_draw = rng.at("bounded_draw").get<std::string>();
    m.runs = root.at("runs").get<std::uint64_t>();

    if (root.contains("bootstrap")) {
      for (const auto& t : root.at("bootstrap")) {
        LoadedMetrics::Threshold th;
        th.k_percent = t.at("threshold").get<double>();
        for (const auto& run : t.at("per_run")) {
          th.run_indices.push_back(run.at("run").get<std::uint64_t>());
          for (std::size_t i = 0; i < 4; ++i) {
            const auto& v = run.at(std::string(kMetricNames[i]));
            th.values[i].push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                               : v.get<double>());
          }
        }
        m.thresholds.push_back(std::move(th));
      }
    }
    return m;
  } catch (const Json::exception& ex) {
    throw fail(std::string("malformed metrics file: ") + ex.what());
  }
}

std::vector<ComparisonCell> compare_metrics(const LoadedMetrics& a, const LoadedMetrics& b) {
  auto mismatch = [](const std::string& what) {
    return ProvenanceError("metrics files cannot be paired: " + what);
  };
  if (a.runs == 0 || b.runs == 0 || a.thresholds.empty() || b.thresholds.empty()) {
    throw mismatch("both files need bootstrap results (runs > 0)");
  }
  if (a.runs != b.runs) {
    throw mismatch("run counts differ (" + std::to_string(a.runs) + " vs " + std::to_string(b.runs) + ")");
  }
  if (a.rng_name != b.rng_name || a.rng_seed_rule != b.rng_seed_rule ||
      a.rng_bounded_draw != b.rng_bounded_draw) {
    throw mismatch("RNG provenance differs");
  }
  if (a.labels_digest != b.labels_digest || a.n_labeled != b.n_labeled) {
    throw mismatch("label sets differ");
  }
  if (a.thresholds.size() != b.thresholds.size()) throw mismatch("threshold lists differ");
  for (std::size_t t = 0; t < a.thresholds.size(); ++t) {
    if (a.thresholds[t].k_percent != b.thresholds[t].k_percent) throw mismatch("threshold lists differ");
    if (a.thresholds[t].run_indices != b.thresholds[t].run_indices) throw mismatch("run indices differ");
  }

  std::vector<ComparisonCell> cells;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t t = 0; t < a.thresholds.size(); ++t) {
      const auto& va = a.thresholds[t].values[i];
      const auto& vb = b.thresholds[t].values[i];
      std::vector<double> xa, xb;
      for (std::size_t r = 0; r < va.size(); ++r) {
        if (std::isnan(va[r]) || std::isnan(vb[r])) continue;
        xa.push_back(va[r]);
        xb.push_back(vb[r]);
      }
      ComparisonCell cell;
      cell.metric = std::string(kMetricNames[i]);
      cell.k_percent = a.thresholds[t].k_percent;
      cell.pairs = xa.size();
      if (!xa.empty()) {
        cell.p_raw = wilcoxon_signed_rank(xa, xb).p_value;
        const auto d = cliffs_delta(xa, xb);
        cell.delta = d.delta;
        cell.magnitude = d.magnitude;
      }
      cell.direction = cell.delta > 0 ? "a" : cell.delta < 0 ? "b" : "none";
      cells.push_back(std::move(cell));
    }
  }

  std::vector<double> raw;
  raw.reserve(cells.size());
  for (const auto& c : cells) raw.push_back(c.p_raw);
  const auto adjusted = benjamini_hochberg(raw);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i].p_adjusted = adjusted[i];
  return cells;
}

std::string format_comparison_json(const LoadedMetrics& a, const LoadedMetrics& b,
                                   const std::vector<ComparisonCell>& cells) {
  Json root;
  root["format"] = std::string(kComparisonFormat);
  root["a"] = {{"approach", a.approach}, {"variant", a.variant}, {"config_hash", a.config_hash}};
  root["b"] = {{"approach", b.approach}, {"variant", b.variant}, {"config_hash", b.config_hash}};
  root["runs"] = a.runs;
  root["correction"] = "benjamini-hochberg over all metric x threshold cells";
  Json list = Json::array();
  for (const auto& c : cells) {
    Json j;
    j["metric"] = c.metric;
    j["threshold"] = c.k_percent;
    j["pairs"] = c.pairs;
    j["p_raw"] = c.p_raw;
    j["p_adjusted"] = c.p_adjusted;
    j["delta"] = c.delta;
    j["magnitude"] = std::string(to_string(c.magnitude));
    j["direction"] = c.direction;
    list.push_back(std::move(j));
  }
  root["comparisons"] = std::move(list);
  return root.dump(2) + "\n";
}

}  // namespace docrank
