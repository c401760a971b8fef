#pragma once

// Experiment config files.
//
//   # comment            ; comment
//   kind = pipeline
//   [grid]
//   radii = 64
//
// Keys inside a section are addressed as "section.key". Whitespace around
// keys and values is trimmed, values run to the end of the line, duplicate
// keys are errors. Which keys exist, their defaults and ranges, depends on
// `kind` (see schema_for).

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyc::runner {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

/// Raw key/value pairs in file order.
struct RawConfig {
  std::vector<std::pair<std::string, std::string>> entries;
};

inline RawConfig parse_config_text(const std::string& text) {
  RawConfig cfg;
  std::map<std::string, int> seen;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto where = "line " + std::to_string(lineno) + ": ";
    if (t.front() == '[') {
      if (t.back() != ']') throw config_error(where + "unterminated section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (section.empty()) throw config_error(where + "empty section name");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw config_error(where + "expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw config_error(where + "empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (seen.count(full)) throw config_error(where + "duplicate key '" + full + "'");
    seen[full] = lineno;
    cfg.entries.emplace_back(full, value);
  }
  return cfg;
}

enum class ValueType { String, Integer, Real, IntList, PointList, AtomList, CantorList };

struct KeySpec {
  std::string name;
  ValueType type;
  std::string default_value;
  double lo = -INFINITY;
  double hi = INFINITY;
  /// allowed words for ValueType::String, empty = free text
  std::vector<std::string> choices;
};

namespace detail {

inline double parse_real(const std::string& key, const std::string& s) {
  double v = 0.0;
  const auto* b = s.data();
  const auto* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || !std::isfinite(v)) throw config_error(key + ": not a number: '" + s + "'");
  return v;
}

inline long long parse_int(const std::string& key, const std::string& s) {
  long long v = 0;
  const auto* b = s.data();
  const auto* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw config_error(key + ": not an integer: '" + s + "'");
  return v;
}

inline void check_range(const KeySpec& k, double v) {
  if (v < k.lo || v > k.hi) {
    std::ostringstream os;
    os << k.name << ": value " << v << " outside [" << k.lo << ", " << k.hi << "]";
    throw config_error(os.str());
  }
}

}  // namespace detail

/// Validated config: every schema key has a value (given or default).
class ExperimentConfig {
 public:
  ExperimentConfig(const RawConfig& raw, const std::vector<KeySpec>& schema) : schema_(schema) {
    for (const auto& k : schema_) values_[k.name] = k.default_value;
    for (const auto& [key, value] : raw.entries) {
      if (!values_.count(key)) throw config_error("unknown key '" + key + "'");
      values_[key] = value;
    }
    for (const auto& k : schema_) validate(k);
  }

  const std::vector<KeySpec>& schema() const { return schema_; }
  const std::string& raw(const std::string& key) const { return values_.at(key); }
  void set(const std::string& key, const std::string& value) {
    values_.at(key) = value;
    for (const auto& k : schema_)
      if (k.name == key) validate(k);
  }

  std::string str(const std::string& key) const { return values_.at(key); }
  double real(const std::string& key) const { return detail::parse_real(key, values_.at(key)); }
  long long integer(const std::string& key) const { return detail::parse_int(key, values_.at(key)); }
  std::uint64_t u64(const std::string& key) const {
    const auto& s = values_.at(key);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw config_error(key + ": not an unsigned integer");
    return v;
  }

  std::vector<long long> int_list(const std::string& key) const {
    std::vector<long long> out;
    for (const auto& p : split(values_.at(key), ',')) out.push_back(detail::parse_int(key, p));
    return out;
  }

  /// "re:im, re:im"
  std::vector<std::complex<double>> point_list(const std::string& key) const {
    std::vector<std::complex<double>> out;
    for (const auto& p : split(values_.at(key), ',')) {
      const auto c = split(p, ':');
      if (c.size() != 2) throw config_error(key + ": points are written re:im");
      out.emplace_back(detail::parse_real(key, c[0]), detail::parse_real(key, c[1]));
    }
    return out;
  }

  /// "angle:mass, ..." -> pairs; also "center:width:mass[:depth]" for cantor lists
  std::vector<std::vector<double>> tuple_list(const std::string& key) const {
    std::vector<std::vector<double>> out;
    const auto& v = values_.at(key);
    if (trim(v).empty() || trim(v) == "none") return out;
    for (const auto& p : split(v, ',')) {
      std::vector<double> t;
      for (const auto& x : split(p, ':')) t.push_back(detail::parse_real(key, x));
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  void validate(const KeySpec& k) const {
    const auto& v = values_.at(k.name);
    switch (k.type) {
      case ValueType::String:
        if (!k.choices.empty()) {
          bool ok = false;
          for (const auto& c : k.choices) ok = ok || c == v;
          if (!ok) throw config_error(k.name + ": unsupported value '" + v + "'");
        }
        break;
      case ValueType::Integer:
        detail::check_range(k, static_cast<double>(detail::parse_int(k.name, v)));
        break;
      case ValueType::Real:
        detail::check_range(k, detail::parse_real(k.name, v));
        break;
      case ValueType::IntList: {
        const auto l = int_list(k.name);
        if (l.empty()) throw config_error(k.name + ": list must not be empty");
        for (auto x : l) detail::check_range(k, static_cast<double>(x));
        break;
      }
      case ValueType::PointList:
        for (const auto& z : point_list(k.name))
          if (!(std::abs(z) < k.hi)) throw config_error(k.name + ": point outside the allowed disk");
        break;
      case ValueType::AtomList:
        for (const auto& t : tuple_list(k.name)) {
          if (t.size() != 2) throw config_error(k.name + ": atoms are written angle:mass");
          if (!(t[1] > 0.0)) throw config_error(k.name + ": atom masses must be positive");
        }
        break;
      case ValueType::CantorList:
        for (const auto& t : tuple_list(k.name)) {
          if (t.size() != 3 && t.size() != 4) throw config_error(k.name + ": cantor pieces are center:width:mass[:depth]");
          if (!(t[1] > 0.0 && t[2] > 0.0)) throw config_error(k.name + ": cantor width and mass must be positive");
          if (t.size() == 4 && (t[3] < 1 || t[3] > 24 || t[3] != std::floor(t[3])))
            throw config_error(k.name + ": cantor depth must be an integer in [1, 24]");
        }
        break;
    }
  }

  std::vector<KeySpec> schema_;
  std::map<std::string, std::string> values_;
};

inline const std::vector<std::string> experiment_kinds{"envelope", "cyclic", "weights", "embedding", "pipeline"};

/// Keys accepted for each experiment kind.
inline std::vector<KeySpec> schema_for(const std::string& kind) {
  using VT = ValueType;
  std::vector<KeySpec> s{
      {"kind", VT::String, kind, 0, 0, experiment_kinds},
      {"seed", VT::Integer, "1", 0, 9.2e18, {}},
      {"output", VT::String, kind, 0, 0, {}},
  };
  auto add = [&s](KeySpec k) { s.push_back(std::move(k)); };
  const std::vector<std::string> growth_families{"power-log", "exponential-poisson"};
  if (kind == "envelope") {
    add({"measure.atoms", VT::AtomList, "0:1", 0, 0, {}});
    add({"measure.cantor", VT::CantorList, "none", 0, 0, {}});
    add({"weight.family", VT::String, "exponential-poisson", 0, 0, growth_families});
    add({"weight.parameter", VT::Real, "1", 1e-12, 1e6, {}});
    add({"grid.radii", VT::Integer, "64", 1, 4096, {}});
    add({"grid.r_max", VT::Real, "0.99", 1e-6, 0.999999, {}});
    add({"grid.angles", VT::Integer, "8192", 1, 1 << 20, {}});
    add({"check.rel_tol", VT::Real, "1e-6", 0, 1, {}});
  } else if (kind == "cyclic") {
    add({"measure.atoms", VT::AtomList, "0:1", 0, 0, {}});
    add({"measure.cantor", VT::CantorList, "none", 0, 0, {}});
    add({"weight.family", VT::String, "power-log", 0, 0, growth_families});
    add({"weight.parameter", VT::Real, "1", 1e-12, 1e6, {}});
    add({"cyclic.n_list", VT::IntList, "2,4,8,16,32", 2, 4096, {}});
    add({"grid.r_max", VT::Real, "0.9990234375", 0.5, 0.999999, {}});
    add({"grid.envelope_angles", VT::Integer, "4096", 1, 1 << 20, {}});
    add({"grid.radii", VT::Integer, "64", 1, 4096, {}});
    add({"grid.angles", VT::Integer, "1024", 1, 1 << 16, {}});
    add({"grid.sup_angles", VT::Integer, "8192", 1, 1 << 20, {}});
  } else if (kind == "weights") {
    add({"lambda.family", VT::String, "power", 0, 0, {"power", "log"}});
    add({"lambda.exponent", VT::Real, "1", 1e-6, 64, {}});
    add({"weights.n_max", VT::Integer, "400", 4, 100000, {}});
    add({"weights.moments", VT::Integer, "50", 0, 99998, {}});
    add({"weights.levels", VT::Integer, "40", 1, 1000, {}});
    add({"weights.decay_scale", VT::Real, "0.70710678118654757", 1e-12, 0.999999, {}});
  } else if (kind == "embedding") {
    add({"omega.family", VT::String, "hoelder", 0, 0, {"hoelder", "log-inverse"}});
    add({"omega.parameter", VT::Real, "0.5", 1e-6, 0.999999, {}});
    add({"embedding.levels", VT::Integer, "12", 0, 1000, {}});
    add({"embedding.n_max", VT::Integer, "200", 1, 100000, {}});
    add({"embedding.polynomials", VT::Integer, "100", 0, 100000, {}});
    add({"embedding.degree", VT::Integer, "50", 0, 10000, {}});
    add({"parseval.polynomials", VT::Integer, "50", 0, 100000, {}});
    add({"parseval.degree", VT::Integer, "64", 0, 10000, {}});
  } else if (kind == "pipeline") {
    add({"lambda.family", VT::String, "power", 0, 0, {"power", "log"}});
    add({"lambda.exponent", VT::Real, "1", 1e-6, 64, {}});
    add({"measure.atoms", VT::AtomList, "0:1", 0, 0, {}});
    add({"measure.cantor", VT::CantorList, "none", 0, 0, {}});
    add({"pipeline.n_list", VT::IntList, "2,4,8,16,32", 2, 4096, {}});
    add({"pipeline.K", VT::Integer, "4096", 1, 1 << 16, {}});
    add({"pipeline.kernel_points", VT::PointList, "0:0", 0, 1, {}});
    add({"pipeline.n_max", VT::Integer, "400", 4, 100000, {}});
    add({"pipeline.levels", VT::Integer, "128", 1, 1000, {}});
    add({"pipeline.weight_scale", VT::Real, "0.000244140625", 1e-300, 0.999999, {}});
    add({"pipeline.threshold", VT::Real, "0.9", 1e-6, 1, {}});
    add({"pipeline.bergman_constant", VT::Real, "0.5", 1e-6, 1e6, {}});
    add({"grid.r_max", VT::Real, "0.9990234375", 0.5, 0.999999, {}});
    add({"grid.envelope_angles", VT::Integer, "4096", 1, 1 << 20, {}});
    add({"grid.radii", VT::Integer, "64", 1, 4096, {}});
    add({"grid.angles", VT::Integer, "1024", 1, 1 << 16, {}});
  } else {
    throw config_error("kind: unsupported experiment '" + kind + "'");
  }
  return s;
}

/// Parses text, reads `kind` first, then validates every key against that kind's schema.
inline ExperimentConfig load_config_text(const std::string& text) {
  const auto raw = parse_config_text(text);
  std::string kind;
  for (const auto& [k, v] : raw.entries)
    if (k == "kind") kind = v;
  if (kind.empty()) throw config_error("kind: missing");
  return ExperimentConfig(raw, schema_for(kind));
}

}  // namespace cyc::runner
