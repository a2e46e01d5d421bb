#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "docrank/graph.hpp"

namespace docrank {

struct SolverConfig {
  double damping = 0.85;
  std::size_t max_iterations = 100;
  double tolerance = 1e-7;      // on the L1 distance between successive iterates
  std::size_t direct_bound = 64;  // largest system solve_direct accepts
  unsigned threads = 1;         // matrix-vector product workers; results do not depend on it

  // Throws Error when a field is outside its valid range.
  void validate() const;
};

struct ScoreVector {
  std::vector<std::string> names;  // sorted when solved from a graph
  std::vector<double> scores;      // parallel to names
  std::size_t iterations_used = 0;
  double final_error = 0.0;
  bool converged = true;
  std::vector<double> error_history;  // L1 distance after each iteration

  std::size_t size() const noexcept { return names.size(); }
  double score(std::string_view name) const;  // throws UnknownNodeError
  double sum() const;
};

// Column-stochastic M in compressed form: for each target u, the incoming
// (v, weight(v,u)/TL(v)) terms, plus the list of dangling columns.
class TransitionMatrix {
 public:
  struct Term {
    std::size_t source = 0;
    double probability = 0.0;
  };

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<Term>& incoming(std::size_t target) const { return incoming_.at(target); }
  const std::vector<std::size_t>& dangling() const noexcept { return dangling_; }

  // M(u, v): probability of moving from v to u (dense lookup, for tests).
  double at(std::size_t target, std::size_t source) const;
  double at(std::string_view target, std::string_view source) const;

 private:
  friend TransitionMatrix build_transition(const WeightMatrix& matrix);

  std::vector<std::string> names_;
  std::vector<std::vector<Term>> incoming_;
  std::vector<std::size_t> dangling_;
  std::vector<bool> is_dangling_;
};

// Dangling columns become the uniform column 1/m.
TransitionMatrix build_transition(const WeightMatrix& matrix);

// Power iteration P <- d*M*P + (1-d)/m * e from the uniform start.
ScoreVector solve(const WeightMatrix& matrix, const SolverConfig& config = {});
ScoreVector solve(const DependenceGraph& graph, const SolverConfig& config = {});

// Dense elimination of (I - d*M) P = (1-d)/m * e; refuses m > direct_bound.
ScoreVector solve_direct(const WeightMatrix& matrix, const SolverConfig& config = {});

enum class SubsetMode { SubsetGraph, WholeProject };

std::string_view to_string(SubsetMode mode);
std::optional<SubsetMode> parse_subset_mode(std::string_view text);

// Scores restricted to `subset`. SubsetGraph solves the induced subgraph;
// WholeProject solves the full graph and restricts without renormalizing.
ScoreVector score_subset(const DependenceGraph& graph, const std::set<std::string>& subset,
                         SubsetMode mode, const SolverConfig& config = {});

}  // namespace docrank
