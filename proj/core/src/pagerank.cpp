#include "docrank/pagerank.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "compensated_sum.hpp"

namespace docrank {

void SolverConfig::validate() const {
  if (!(damping > 0.0 && damping < 1.0)) throw Error("damping must lie in (0, 1)");
  if (!(tolerance > 0.0)) throw Error("tolerance must be positive");
  if (max_iterations < 1) throw Error("max_iterations must be at least 1");
}

double ScoreVector::score(std::string_view name) const {
  auto it = std::lower_bound(names.begin(), names.end(), name);
  if (it == names.end() || *it != name) {
    // Vectors solved from a hand-built matrix keep its (possibly unsorted) order.
    it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw UnknownNodeError("no score for module '" + std::string(name) + "'");
  }
  return scores[static_cast<std::size_t>(it - names.begin())];
}

double ScoreVector::sum() const {
  detail::CompensatedSum total;
  for (double s : scores) total += s;
  return total.value();
}

double TransitionMatrix::at(std::size_t target, std::size_t source) const {
  if (target >= size() || source >= size()) throw Error("transition index out of range");
  if (is_dangling_[source]) return 1.0 / static_cast<double>(size());
  for (const auto& term : incoming_[target]) {
    if (term.source == source) return term.probability;
  }
  return 0.0;
}

double TransitionMatrix::at(std::string_view target, std::string_view source) const {
  auto index = [&](std::string_view name) {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) {
      throw UnknownNodeError("unknown module '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - names_.begin());
  };
  return at(index(target), index(source));
}

TransitionMatrix build_transition(const WeightMatrix& matrix) {
  TransitionMatrix m;
  const std::size_t n = matrix.size();
  m.names_ = matrix.names();
  m.incoming_.assign(n, {});
  m.is_dangling_.assign(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    const double total = matrix.total_out_weight(v);
    if (!(total > 0.0)) {
      m.dangling_.push_back(v);
      m.is_dangling_[v] = true;
      continue;
    }
    for (const auto& e : matrix.out_entries(v)) {
      m.incoming_[e.index].push_back({v, e.weight / total});
    }
  }
  // Sources arrive in ascending order already; the fixed order makes every
  // row sum reproducible.
  return m;
}

namespace {

ScoreVector make_result(const std::vector<std::string>& names, std::vector<double> scores) {
  ScoreVector out;
  out.names = names;
  out.scores = std::move(scores);
  return out;
}

// One power step for targets [begin, end). Each target's sum is computed
// independently, so any partition over threads yields identical bits.
void step_range(const TransitionMatrix& m, const std::vector<double>& p, double dangling_share,
                double damping, double teleport, std::vector<double>& next, std::size_t begin,
                std::size_t end) {
  for (std::size_t u = begin; u < end; ++u) {
    detail::CompensatedSum s;
    for (const auto& term : m.incoming(u)) s += term.probability * p[term.source];
    s += dangling_share;
    next[u] = damping * s.value() + teleport;
  }
}

}  // namespace

ScoreVector solve(const WeightMatrix& matrix, const SolverConfig& config) {
  config.validate();
  const std::size_t n = matrix.size();
  if (n == 0) throw Error("cannot solve an empty graph");

  const auto m = build_transition(matrix);
  const double inv_n = 1.0 / static_cast<double>(n);
  const double teleport = (1.0 - config.damping) * inv_n;

  std::vector<double> p(n, inv_n);
  std::vector<double> next(n, 0.0);
  ScoreVector result;
  result.converged = false;

  const unsigned workers =
      std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(n / 1024 + 1)));

  for (std::size_t iter = 1; iter <= config.max_iterations; ++iter) {
    detail::CompensatedSum dangling_mass;
    for (auto v : m.dangling()) dangling_mass += p[v];
    const double dangling_share = dangling_mass.value() * inv_n;

    if (workers == 1) {
      step_range(m, p, dangling_share, config.damping, teleport, next, 0, n);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (n + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(step_range, std::cref(m), std::cref(p), dangling_share,
                          config.damping, teleport, std::ref(next), begin, end);
      }
      for (auto& t : pool) t.join();
    }

    detail::CompensatedSum error;
    for (std::size_t u = 0; u < n; ++u) {
      if (!std::isfinite(next[u])) throw NumericError("non-finite score during iteration");
      error += std::abs(next[u] - p[u]);
    }
    p.swap(next);
    result.error_history.push_back(error.value());
    result.iterations_used = iter;
    result.final_error = error.value();
    if (result.final_error < config.tolerance) {
      result.converged = true;
      break;
    }
  }

  result.names = matrix.names();
  result.scores = std::move(p);
  return result;
}

ScoreVector solve(const DependenceGraph& graph, const SolverConfig& config) {
  return solve(weight_matrix(graph), config);
}

ScoreVector solve_direct(const WeightMatrix& matrix, const SolverConfig& config) {
  config.validate();
  const std::size_t n = matrix.size();
  if (n == 0) throw Error("cannot solve an empty graph");
  if (n > config.direct_bound) {
    throw Error("direct solve refused: " + std::to_string(n) + " nodes exceed the bound of " +
                std::to_string(config.direct_bound));
  }

  const auto m = build_transition(matrix);
  const double d = config.damping;
  // Row-major augmented system [I - d*M | (1-d)/n].
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) a[u][v] = (u == v ? 1.0 : 0.0) - d * m.at(u, v);
    a[u][n] = (1.0 - d) / static_cast<double>(n);
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-300) throw NumericError("singular system in direct solve");
    std::swap(a[col], a[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = a[i][n];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
    if (!std::isfinite(x[i])) throw NumericError("non-finite score in direct solve");
  }

  auto out = make_result(matrix.names(), std::move(x));
  out.converged = true;
  return out;
}

std::string_view to_string(SubsetMode mode) {
  return mode == SubsetMode::WholeProject ? "whole_project" : "subset_graph";
}

std::optional<SubsetMode> parse_subset_mode(std::string_view text) {
  if (text == "subset_graph") return SubsetMode::SubsetGraph;
  if (text == "whole_project") return SubsetMode::WholeProject;
  return std::nullopt;
}

ScoreVector score_subset(const DependenceGraph& graph, const std::set<std::string>& subset,
                         SubsetMode mode, const SolverConfig& config) {
  if (subset.empty()) throw Error("labeled subset is empty");
  for (const auto& name : subset) {
    if (!graph.contains(name)) throw UnknownNodeError("subset module '" + name + "' is not in the graph");
  }
  if (mode == SubsetMode::SubsetGraph) return solve(graph.induced(subset), config);

  auto full = solve(graph, config);
  ScoreVector out;
  out.iterations_used = full.iterations_used;
  out.final_error = full.final_error;
  out.converged = full.converged;
  out.error_history = full.error_history;
  for (std::size_t i = 0; i < full.names.size(); ++i) {
    if (subset.count(full.names[i])) {
      out.names.push_back(full.names[i]);
      out.scores.push_back(full.scores[i]);
    }
  }
  return out;
}

}  // namespace docrank
