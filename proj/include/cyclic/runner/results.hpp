#pragma once

// Result tables. One CSV schema for every experiment:
//   experiment,quantity,key,aux,x,y,value,bound,pass
// key/aux are integers (n, N, K', index), x/y reals (r, or a point re/im).
// Empty fields mean "not applicable". Reals are printed with 17 significant digits.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclic/runner/config.hpp"

namespace cyc::runner {

struct ResultRow {
  std::string quantity;
  std::optional<long long> key;
  std::optional<long long> aux;
  std::optional<double> x;
  std::optional<double> y;
  double value = 0.0;
  std::optional<double> bound;
  std::optional<bool> pass;
};

struct Check {
  std::string name;
  bool pass;
  double value;
  double bound;
};

struct ExperimentResult {
  std::string experiment;
  std::vector<ResultRow> rows;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline const char* csv_header = "experiment,quantity,key,aux,x,y,value,bound,pass";

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string to_csv(const ExperimentResult& r) {
  std::string out = csv_header;
  out += '\n';
  for (const auto& row : r.rows) {
    out += r.experiment + ',' + row.quantity + ',';
    if (row.key) out += std::to_string(*row.key);
    out += ',';
    if (row.aux) out += std::to_string(*row.aux);
    out += ',';
    if (row.x) out += format_real(*row.x);
    out += ',';
    if (row.y) out += format_real(*row.y);
    out += ',' + format_real(row.value) + ',';
    if (row.bound) out += format_real(*row.bound);
    out += ',';
    if (row.pass) out += *row.pass ? "true" : "false";
    out += '\n';
  }
  return out;
}

/// Writes via a temporary sibling and a rename, so a failed run leaves no partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw config_error("cannot open '" + tmp.string() + "' for writing");
    os << content;
    os.flush();
    if (!os) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw config_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw config_error("cannot move output into '" + path.string() + "'");
  }
}

/// Parsed CSV: header names and string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  }
};

inline CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read '" + path.string() + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw config_error("'" + path.string() + "' is empty");
  auto cells = [](const std::string& l) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : l) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur += c;
      }
    }
    out.push_back(cur);
    return out;
  };
  t.header = cells(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto c = cells(line);
    if (c.size() != t.header.size()) throw config_error("'" + path.string() + "': ragged row");
    t.rows.push_back(std::move(c));
  }
  return t;
}

}  // namespace cyc::runner
