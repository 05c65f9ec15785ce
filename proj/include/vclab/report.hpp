#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vclab/common.hpp"
#include "vclab/vcdim.hpp"

namespace vclab {

using Json = nlohmann::ordered_json;

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// vclab-csv-v1 writer. The timestamp is isolated in the first comment line;
/// everything below it (the body) is byte-identical across reruns with the
/// same config and seed.
class CsvWriter {
 public:
  static constexpr const char* kHeader =
      "suite,family,q,t,n,d,lambda,U_size,Uprime_size,trial,seed,metric,value,bound,pass";

  struct GraphColumns {
    std::string suite;
    std::string family;
    std::uint32_t q = 0, t = 0, n = 0;
    std::int64_t d = -1;  // -1 renders empty (non-regular)
    double lambda = 0;
  };

  void add_row(const GraphColumns& gc, std::uint64_t u_size, std::uint64_t uprime_size,
               std::uint64_t trial, std::uint64_t seed, const std::string& metric, double value,
               double bound, const std::string& pass) {
    std::ostringstream row;
    row << gc.suite << ',' << gc.family << ',' << gc.q << ',' << gc.t << ',' << gc.n << ',';
    if (gc.d >= 0) row << gc.d;
    row << ',' << fmt_g(gc.lambda) << ',' << u_size << ',' << uprime_size << ',' << trial << ','
        << seed << ',' << metric << ',' << fmt_g(value) << ',';
    if (!std::isnan(bound)) row << fmt_g(bound);
    row << ',' << pass;
    rows_.push_back(row.str());
  }

  std::string body() const {
    std::ostringstream out;
    out << "# vclab-csv-v1\n" << kHeader << "\n";
    for (const auto& r : rows_) out << r << "\n";
    return out.str();
  }

  std::string with_timestamp() const { return "# generated " + utc_timestamp() + "\n" + body(); }

  void write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << with_timestamp();
  }

  std::size_t row_count() const { return rows_.size(); }

 private:
  std::vector<std::string> rows_;
};

/// Strips the isolated timestamp line; used by reproducibility comparisons.
inline std::string csv_body_of(const std::string& full) {
  if (full.rfind("# generated ", 0) == 0) {
    const auto nl = full.find('\n');
    if (nl != std::string::npos) return full.substr(nl + 1);
  }
  return full;
}

inline Json witness_to_json(const ShatterWitness& w) {
  Json doc;
  doc["X"] = w.X;
  Json map = Json::object();
  const std::size_t k = w.X.size();
  for (std::uint32_t mask = 0; mask < w.witnesses.size(); ++mask) {
    std::string key(k, '0');
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1) key[i] = '1';  // key[i] pairs with X[i]
    map[key] = w.witnesses[mask];
  }
  doc["witnesses"] = map;
  return doc;
}

inline void write_plot_data(const std::string& path, const std::vector<std::pair<double, double>>& points) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto& [x, y] : points) out << fmt_g(x) << " " << fmt_g(y) << "\n";
}

/// Minimal dependency-free SVG line chart: one polyline per series plus axes
/// and tick labels.
inline void write_svg_line_chart(const std::string& path, const std::string& title,
                                 const std::string& xlabel, const std::string& ylabel,
                                 const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>& series) {
  const double width = 720, height = 480, margin = 60;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& [name, pts] : series)
    for (const auto& [x, y] : pts) {
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
  const auto py = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double xv = xmin + (xmax - xmin) * tick / 4.0;
    const double yv = ymin + (ymax - ymin) * tick / 4.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << height - margin + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
        << fmt_g(xv) << "</text>\n";
    out << "<text x=\"" << margin - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
        << fmt_g(yv) << "</text>\n";
  }
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
      << xlabel << "</text>\n";
  out << "<text x=\"18\" y=\"" << height / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << height / 2 << ")\">" << ylabel << "</text>\n";
  std::size_t color = 0;
  for (const auto& [name, pts] : series) {
    out << "<polyline fill=\"none\" stroke=\"" << palette[color % 6] << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) out << px(x) << "," << py(y) << " ";
    out << "\"/>\n";
    for (const auto& [x, y] : pts)
      out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << palette[color % 6] << "\"/>\n";
    out << "<text x=\"" << width - margin + 4 << "\" y=\"" << margin + 16 * double(color) << "\" font-size=\"11\" fill=\""
        << palette[color % 6] << "\">" << name << "</text>\n";
    ++color;
  }
  out << "</svg>\n";
}

}  // namespace vclab
