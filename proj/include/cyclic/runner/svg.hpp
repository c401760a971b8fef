#pragma once

// Line plots of result CSVs. Output depends only on the input table, so the
// same CSV always renders to the same bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "cyclic/runner/config.hpp"
#include "cyclic/runner/results.hpp"

namespace cyc::runner {

struct SeriesSpec {
  std::string quantity;
  /// column used for the horizontal axis
  std::string x_column;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<SeriesSpec> series;
};

inline const std::vector<std::string> plot_kinds{"envelope", "bn", "alpha", "growth"};

inline PlotSpec plot_spec(const std::string& kind) {
  if (kind == "envelope") return {"min-modulus envelope", "r", "value", {{"envelope", "x"}, {"weight", "x"}}};
  if (kind == "bn") return {"B_n decay", "n", "B_n", {{"B", "key"}}};
  if (kind == "alpha") return {"alpha_n growth", "n", "alpha_n", {{"alpha", "key"}}};
  if (kind == "growth") return {"max |theta p_n| w", "n", "value", {{"growth", "key"}}};
  throw config_error("plot: unknown kind '" + kind + "'");
}

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Axis {
  double lo;
  double hi;
  bool log;

  static Axis fit(const std::vector<double>& v) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double pos_lo = lo;
    for (double x : v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      if (x > 0.0) pos_lo = std::min(pos_lo, x);
    }
    Axis a{lo, hi, false};
    if (lo > 0.0 && hi / lo > 1e3) {
      a = {std::floor(std::log10(pos_lo)), std::ceil(std::log10(hi)), true};
    }
    if (a.hi == a.lo) {
      a.lo -= 0.5;
      a.hi += 0.5;
    }
    return a;
  }

  double map(double v, double p0, double p1) const {
    const double t = ((log ? std::log10(v) : v) - lo) / (hi - lo);
    return p0 + t * (p1 - p0);
  }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      const int span = static_cast<int>(hi - lo);
      const int step = std::max(1, span / 8);
      for (int e = static_cast<int>(lo); e <= static_cast<int>(hi); e += step) t.push_back(std::pow(10.0, e));
    } else {
      for (int i = 0; i <= 5; ++i) t.push_back(lo + (hi - lo) * i / 5.0);
    }
    return t;
  }
};

}  // namespace detail

/// SVG for one CSV table; throws config_error on missing columns or empty data.
inline std::string render_plot(const CsvTable& t, const std::string& kind) {
  const auto spec = plot_spec(kind);
  const auto qcol = t.column("quantity");
  const auto vcol = t.column("value");
  if (!qcol || !vcol) throw config_error("plot: CSV lacks quantity/value columns");
  if (t.rows.empty()) throw config_error("plot: CSV has no data rows");

  struct Line {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
  };
  std::vector<Line> lines;
  std::vector<double> all_x;
  std::vector<double> all_y;
  for (const auto& s : spec.series) {
    const auto xcol = t.column(s.x_column);
    if (!xcol) throw config_error("plot: CSV lacks column '" + s.x_column + "'");
    Line l{s.quantity, {}, {}};
    for (const auto& row : t.rows) {
      if (row[*qcol] != s.quantity || row[*xcol].empty() || row[*vcol].empty()) continue;
      const double x = std::strtod(row[*xcol].c_str(), nullptr);
      const double y = std::strtod(row[*vcol].c_str(), nullptr);
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      l.xs.push_back(x);
      l.ys.push_back(y);
    }
    all_x.insert(all_x.end(), l.xs.begin(), l.xs.end());
    all_y.insert(all_y.end(), l.ys.begin(), l.ys.end());
    if (!l.xs.empty()) lines.push_back(std::move(l));
  }
  if (lines.empty()) throw config_error("plot: no rows for kind '" + kind + "'");

  const auto ax = detail::Axis::fit(all_x);
  const auto ay = detail::Axis::fit(all_y);
  const double left = 90.0, right = 770.0, top = 50.0, bottom = 530.0;
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  s += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" + spec.title +
       "</text>\n";
  s += "<rect x=\"" + detail::num(left) + "\" y=\"" + detail::num(top) + "\" width=\"" + detail::num(right - left) +
       "\" height=\"" + detail::num(bottom - top) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double v : ax.ticks()) {
    const double px = ax.map(v, left, right);
    s += "<line x1=\"" + detail::num(px) + "\" y1=\"" + detail::num(bottom) + "\" x2=\"" + detail::num(px) +
         "\" y2=\"" + detail::num(bottom + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + detail::num(px) + "\" y=\"" + detail::num(bottom + 20) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + detail::label(v) + "</text>\n";
  }
  for (double v : ay.ticks()) {
    const double py = ay.map(v, bottom, top);
    s += "<line x1=\"" + detail::num(left - 5) + "\" y1=\"" + detail::num(py) + "\" x2=\"" + detail::num(left) +
         "\" y2=\"" + detail::num(py) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + detail::num(left - 8) + "\" y=\"" + detail::num(py + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + detail::label(v) + "</text>\n";
  }
  s += "<text x=\"" + detail::num(0.5 * (left + right)) + "\" y=\"570\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"13\">" + spec.x_label + (ax.log ? " (log)" : "") + "</text>\n";
  s += "<text x=\"20\" y=\"" + detail::num(0.5 * (top + bottom)) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 20 " +
       detail::num(0.5 * (top + bottom)) + ")\">" + spec.y_label + (ay.log ? " (log)" : "") + "</text>\n";

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const char* color = palette[i % 4];
    std::string pts;
    for (std::size_t j = 0; j < l.xs.size(); ++j) {
      if ((ax.log && l.xs[j] <= 0.0) || (ay.log && l.ys[j] <= 0.0)) continue;
      if (!pts.empty()) pts += ' ';
      pts += detail::num(ax.map(l.xs[j], left, right)) + ',' + detail::num(ay.map(l.ys[j], bottom, top));
    }
    s += std::string("<polyline fill=\"none\" stroke=\"") + color + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    const double ly = top + 20.0 + 18.0 * static_cast<double>(i);
    s += std::string("<line x1=\"") + detail::num(right - 150) + "\" y1=\"" + detail::num(ly) + "\" x2=\"" +
         detail::num(right - 125) + "\" y2=\"" + detail::num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + detail::num(right - 118) + "\" y=\"" + detail::num(ly + 4) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + l.name + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace cyc::runner
