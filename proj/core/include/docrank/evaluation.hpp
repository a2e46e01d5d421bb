#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace docrank {

// Ground truth: every labeled module is important or not.
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::map<std::string, bool> important_by_module);

  void set(const std::string& module, bool important);

  bool contains(std::string_view module) const;
  bool is_important(std::string_view module) const;  // throws UnknownNodeError
  std::size_t k_true() const noexcept { return k_true_; }
  std::size_t n_total() const noexcept { return labels_.size(); }
  std::vector<std::string> modules() const;  // sorted
  const std::map<std::string, bool, std::less<>>& entries() const noexcept { return labels_; }

  // The labels of `keep` only.
  LabelSet restricted(const std::vector<std::string>& keep) const;

 private:
  std::map<std::string, bool, std::less<>> labels_;
  std::size_t k_true_ = 0;
};

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t predicted() const noexcept { return tp + fp; }  // x
  std::uint64_t hits() const noexcept { return tp; }            // y
  std::uint64_t total() const noexcept { return tp + fp + tn + fn; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Throws Error when `predicted` names a module without a label.
ConfusionMatrix confusion(const std::set<std::string>& predicted, const LabelSet& labels);

// Exact non-negative fraction in lowest terms (den > 0), or a signed one for ER.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct ExactIndicators {
  Rational precision;
  Rational recall;
  Rational f1;
  std::optional<Rational> er;  // undefined when y = 0
};

// precision = 0 when x = 0; recall = 0 when k = 0; F1 = 0 when
// precision + recall = 0; ER = (y/k - x/n)/(y/k), absent when y = 0.
ExactIndicators exact_indicators(const ConfusionMatrix& cm, std::uint64_t k_true,
                                 std::uint64_t n_total);

struct IndicatorRecord {
  std::string approach;
  double k_percent = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double er = 0.0;  // NaN when undefined
  ConfusionMatrix cm;
};

IndicatorRecord indicators(const ConfusionMatrix& cm, const LabelSet& labels);

// Ranks `names` by `scores` and evaluates the top-k% selection against `labels`
// (which must cover `names`).
IndicatorRecord evaluate_threshold(const std::vector<std::string>& names,
                                   const std::vector<double>& scores, const LabelSet& labels,
                                   double k_percent);

}  // namespace docrank
