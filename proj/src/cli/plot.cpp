#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <sstream>
#include <string>

#include "nleig/cli.hpp"
#include "nleig/error.hpp"

namespace nleig::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo;
  double hi;
  std::vector<double> ticks;
};

double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double m = f <= 1.0 ? 1.0 : f <= 2.0 ? 2.0 : f <= 5.0 ? 5.0 : 10.0;
  return m * mag;
}

Axis make_axis(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
  const double step = nice_step(hi - lo, 6);
  Axis a{std::floor(lo / step) * step, std::ceil(hi / step) * step, {}};
  for (double t = a.lo; t <= a.hi + 0.5 * step; t += step) a.ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return a;
}

bool parse_number(const std::string& s, double& v) {
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  auto ymap = [&](double y) { return plot.log_y ? std::log10(y) : y; };
  auto usable = [&](double x, double y) { return std::isfinite(x) && std::isfinite(y) && (!plot.log_y || y > 0.0); };
  for (const Series& s : plot.series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, ymap(s.y[i]));
      yhi = std::max(yhi, ymap(s.y[i]));
    }
  if (!std::isfinite(xlo)) xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  const Axis ax = make_axis(xlo, xhi);
  const Axis ay = make_axis(ylo, yhi);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << escape(plot.title)
     << "</text>\n";
  os << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double t : ax.ticks) os << "<line x1=\"" << fmt("%.2f", px(t)) << "\" y1=\"" << kTop << "\" x2=\"" << fmt("%.2f", px(t)) << "\" y2=\"" << kTop + ph << "\"/>\n";
  for (double t : ay.ticks) os << "<line x1=\"" << kLeft << "\" y1=\"" << fmt("%.2f", py(t)) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << fmt("%.2f", py(t)) << "\"/>\n";
  os << "</g>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ax.ticks)
    os << "<text x=\"" << fmt("%.2f", px(t)) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
       << fmt("%g", t) << "</text>\n";
  for (double t : ay.ticks)
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt("%.2f", py(t) + 4) << "\" text-anchor=\"end\">"
       << (plot.log_y ? "1e" + fmt("%g", t) : fmt("%g", t)) << "</text>\n";
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\">"
     << escape(plot.x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << kTop + ph / 2 << ")\">" << escape(plot.y_label) << "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const Series& s = plot.series[k];
    const char* color = kColors[k % (sizeof kColors / sizeof *kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\""
       << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      os << (first ? "" : " ") << fmt("%.2f", px(s.x[i])) << ',' << fmt("%.2f", py(ymap(s.y[i])));
      first = false;
    }
    os << "\"/>\n";
    const double ly = kTop + 16 + 18 * static_cast<double>(k);
    os << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 36 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
       << "/>\n";
    os << "<text x=\"" << kLeft + pw + 42 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto b = line.find_first_not_of("# ");
      t.comments.push_back(b == std::string::npos ? "" : line.substr(b));
      continue;
    }
    if (t.columns.empty()) {
      t.columns = split(line);
      continue;
    }
    std::vector<std::string> row = split(line);
    if (row.size() != t.columns.size())
      throw ConfigError("csv: row with " + std::to_string(row.size()) + " cells under " +
                        std::to_string(t.columns.size()) + " columns");
    t.rows.push_back(std::move(row));
  }
  if (t.columns.size() < 2) throw ConfigError("csv: need a header with at least two columns");
  return t;
}

PlotSpec plot_from_csv(const CsvTable& table, const std::string& title) {
  PlotSpec plot;
  plot.title = title;
  if (!table.comments.empty()) plot.title += " (" + table.comments.front() + ")";
  plot.x_label = table.columns[0];
  std::vector<double> x;
  for (const auto& row : table.rows) {
    double v = std::numeric_limits<double>::quiet_NaN();
    parse_number(row[0], v);
    x.push_back(v);
  }
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    Series s;
    s.label = table.columns[c];
    s.x = x;
    bool numeric = false;
    for (const auto& row : table.rows) {
      double v = std::numeric_limits<double>::quiet_NaN();
      numeric = (parse_number(row[c], v) && std::isfinite(v)) || numeric;
      s.y.push_back(v);
    }
    if (!numeric) continue;
    if (plot.series.empty()) plot.y_label = table.columns[c];
    plot.series.push_back(std::move(s));
  }
  if (plot.series.empty()) throw ConfigError("csv: no numeric data columns");
  // A spectrum table plots E only; residuals and counts live on other scales.
  if (table.columns[1] == "E") plot.series.resize(1);
  double ymin = std::numeric_limits<double>::infinity(), ymax = 0.0;
  bool all_positive = true;
  for (const Series& s : plot.series)
    for (double v : s.y) {
      if (!std::isfinite(v)) continue;
      if (v > 0.0) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      } else {
        all_positive = false;
      }
    }
  plot.log_y = all_positive && ymax > 1e4 * ymin;
  return plot;
}

}  // namespace nleig::cli
