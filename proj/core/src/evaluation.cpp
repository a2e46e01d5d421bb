#include "docrank/evaluation.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "docrank/errors.hpp"
#include "docrank/ranking.hpp"

namespace docrank {

LabelSet::LabelSet(std::map<std::string, bool> important_by_module) {
  for (auto& [module, important] : important_by_module) set(module, important);
}

void LabelSet::set(const std::string& module, bool important) {
  if (module.empty()) throw Error("label for an empty module name");
  auto [it, inserted] = labels_.emplace(module, important);
  if (!inserted) {
    if (it->second) --k_true_;
    it->second = important;
  }
  if (important) ++k_true_;
}

bool LabelSet::contains(std::string_view module) const { return labels_.count(module) > 0; }

bool LabelSet::is_important(std::string_view module) const {
  auto it = labels_.find(module);
  if (it == labels_.end()) throw UnknownNodeError("no label for module '" + std::string(module) + "'");
  return it->second;
}

std::vector<std::string> LabelSet::modules() const {
  std::vector<std::string> out;
  out.reserve(labels_.size());
  for (const auto& [module, important] : labels_) out.push_back(module);
  return out;
}

LabelSet LabelSet::restricted(const std::vector<std::string>& keep) const {
  LabelSet out;
  for (const auto& module : keep) out.set(module, is_important(module));
  return out;
}

ConfusionMatrix confusion(const std::set<std::string>& predicted, const LabelSet& labels) {
  ConfusionMatrix cm;
  for (const auto& module : predicted) {
    if (!labels.contains(module)) {
      throw Error("predicted module '" + module + "' has no label");
    }
  }
  for (const auto& [module, important] : labels.entries()) {
    const bool chosen = predicted.count(module) > 0;
    if (chosen && important) ++cm.tp;
    else if (chosen) ++cm.fp;
    else if (important) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw NumericError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = std::gcd(num < 0 ? -num : num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

Rational operator+(const Rational& a, const Rational& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
Rational operator-(const Rational& a, const Rational& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
Rational operator*(const Rational& a, const Rational& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}
Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw NumericError("rational division by zero");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

ExactIndicators exact_indicators(const ConfusionMatrix& cm, std::uint64_t k_true,
                                 std::uint64_t n_total) {
  if (cm.total() != n_total) throw Error("confusion matrix does not cover the labeled modules");
  if (cm.tp + cm.fn != k_true) throw Error("confusion matrix disagrees with the important count");
  const auto x = static_cast<std::int64_t>(cm.predicted());
  const auto y = static_cast<std::int64_t>(cm.hits());
  const auto k = static_cast<std::int64_t>(k_true);
  const auto n = static_cast<std::int64_t>(n_total);

  // Closed forms keep every intermediate at most n^2.
  ExactIndicators out;
  out.precision = x == 0 ? Rational(0) : Rational(y, x);
  out.recall = k == 0 ? Rational(0) : Rational(y, k);
  out.f1 = y == 0 ? Rational(0) : Rational(2 * y, x + k);
  if (y > 0) out.er = Rational(n * y - x * k, n * y);
  return out;
}

IndicatorRecord indicators(const ConfusionMatrix& cm, const LabelSet& labels) {
  const auto exact = exact_indicators(cm, labels.k_true(), labels.n_total());
  IndicatorRecord r;
  r.precision = exact.precision.to_double();
  r.recall = exact.recall.to_double();
  r.f1 = exact.f1.to_double();
  r.er = exact.er ? exact.er->to_double() : std::numeric_limits<double>::quiet_NaN();
  r.cm = cm;
  return r;
}

IndicatorRecord evaluate_threshold(const std::vector<std::string>& names,
                                   const std::vector<double>& scores, const LabelSet& labels,
                                   double k_percent) {
  const auto selection = select_top(rank(names, scores), k_percent);
  const auto split_labels = labels.restricted(names);
  auto r = indicators(confusion(selection.selected, split_labels), split_labels);
  r.k_percent = k_percent;
  return r;
}

}  // namespace docrank
