#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "docrank/graph.hpp"
#include "docrank/pagerank.hpp"

namespace docrank {

// The four scoring variants: plain weights, empirical weights, back
// recommendation, and both.
enum class Variant { Base, W, R, WR };

std::string_view to_string(Variant variant);
std::optional<Variant> parse_variant(std::string_view text);
WeightMode weight_mode_of(Variant variant);

// Every setting that can change a primary output. Thread counts are absent on
// purpose: they never change results.
struct RunConfig {
  Variant variant = Variant::Base;
  double damping = 0.85;
  double tolerance = 1e-7;
  std::uint64_t max_iterations = 100;
  double back_fraction = 0.5;
  std::vector<double> thresholds = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  std::uint64_t runs = 100;
  SubsetMode subset_mode = SubsetMode::SubsetGraph;
  bool strict = false;
  bool resolve_test_split = false;  // re-solve on each bootstrap test subgraph

  SolverConfig solver(unsigned threads = 1) const;
  WeightSettings weights() const;

  // Sets one field from text; keys match the long flag names with `-` or `_`
  // (`max-iters` and `max_iterations` are both accepted). Throws Error.
  void set(std::string_view key, std::string_view value);

  // Throws Error when a field is outside its valid range.
  void validate() const;

  // `key=value` pairs joined by `;`, keys sorted: stable provenance text.
  std::string canonical() const;
  // FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;
};

// `key = value` lines; blank lines and `#` comments ignored. Throws ParseError.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text,
                                                                  const std::string& source = {});

std::string fnv1a_hex(std::string_view bytes);

std::vector<double> parse_thresholds(std::string_view text);

}  // namespace docrank
