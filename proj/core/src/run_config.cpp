#include "docrank/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "text_util.hpp"

namespace docrank {

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::Base: return "base";
    case Variant::W: return "w";
    case Variant::R: return "r";
    case Variant::WR: return "wr";
  }
  return "base";
}

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "base") return Variant::Base;
  if (text == "w") return Variant::W;
  if (text == "r") return Variant::R;
  if (text == "wr") return Variant::WR;
  return std::nullopt;
}

WeightMode weight_mode_of(Variant variant) {
  switch (variant) {
    case Variant::Base: return WeightMode::Uniform;
    case Variant::W: return WeightMode::Empirical;
    case Variant::R: return WeightMode::BackRecommendation;
    case Variant::WR: return WeightMode::EmpiricalPlusBack;
  }
  return WeightMode::Uniform;
}

SolverConfig RunConfig::solver(unsigned threads) const {
  SolverConfig c;
  c.damping = damping;
  c.tolerance = tolerance;
  c.max_iterations = static_cast<std::size_t>(max_iterations);
  c.threads = threads;
  return c;
}

WeightSettings RunConfig::weights() const { return {weight_mode_of(variant), back_fraction}; }

namespace {

double parse_real(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error("invalid number '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error("invalid count '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw Error("invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

std::string join_thresholds(const std::vector<double>& ks) {
  std::string out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) out += ',';
    out += detail::format_double_exact(ks[i]);
  }
  return out;
}

}  // namespace

std::vector<double> parse_thresholds(std::string_view text) {
  std::vector<double> out;
  for (auto field : detail::split_char(text, ',')) {
    field = detail::trim(field);
    if (field.empty()) throw Error("empty entry in threshold list '" + std::string(text) + "'");
    out.push_back(parse_real("thresholds", field));
  }
  return out;
}

void RunConfig::set(std::string_view raw_key, std::string_view raw_value) {
  std::string key(detail::trim(raw_key));
  std::replace(key.begin(), key.end(), '-', '_');
  const auto value = detail::trim(raw_value);

  if (key == "variant") {
    auto v = parse_variant(value);
    if (!v) throw Error("unknown variant '" + std::string(value) + "' (expected base, w, r or wr)");
    variant = *v;
  } else if (key == "damping") {
    damping = parse_real(key, value);
  } else if (key == "tolerance") {
    tolerance = parse_real(key, value);
  } else if (key == "max_iters" || key == "max_iterations") {
    max_iterations = parse_count(key, value);
  } else if (key == "back_fraction") {
    back_fraction = parse_real(key, value);
  } else if (key == "thresholds") {
    thresholds = parse_thresholds(value);
  } else if (key == "runs") {
    runs = parse_count(key, value);
  } else if (key == "subset_mode") {
    auto m = parse_subset_mode(value);
    if (!m) {
      throw Error("unknown subset mode '" + std::string(value) +
                  "' (expected subset_graph or whole_project)");
    }
    subset_mode = *m;
  } else if (key == "strict") {
    strict = parse_bool(key, value);
  } else if (key == "resolve_test_split") {
    resolve_test_split = parse_bool(key, value);
  } else {
    throw Error("unknown configuration key '" + std::string(raw_key) + "'");
  }
}

void RunConfig::validate() const {
  solver().validate();
  if (!(back_fraction >= 0.0)) throw Error("back_fraction must be non-negative");
  if (thresholds.empty()) throw Error("threshold list is empty");
  for (double k : thresholds) {
    if (!(k > 0.0 && k <= 100.0)) throw Error("thresholds must lie in (0, 100]");
  }
}

std::string RunConfig::canonical() const {
  std::string out;
  auto add = [&](std::string_view key, const std::string& value) {
    if (!out.empty()) out += ';';
    out += key;
    out += '=';
    out += value;
  };
  add("back_fraction", detail::format_double_exact(back_fraction));
  add("damping", detail::format_double_exact(damping));
  add("max_iterations", std::to_string(max_iterations));
  add("resolve_test_split", resolve_test_split ? "true" : "false");
  add("runs", std::to_string(runs));
  add("strict", strict ? "true" : "false");
  add("subset_mode", std::string(to_string(subset_mode)));
  add("thresholds", join_thresholds(thresholds));
  add("tolerance", detail::format_double_exact(tolerance));
  add("variant", std::string(to_string(variant)));
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunConfig::hash() const { return fnv1a_hex(canonical()); }

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text,
                                                                  const std::string& source) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, 0, "expected key=value");
    const auto key = detail::trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(source, line_no, 1, "missing key before '='");
    out.emplace_back(std::string(key), std::string(detail::trim(line.substr(eq + 1))));
  }
  return out;
}

}  // namespace docrank
