#include "walklis/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace walklis {

namespace {

using json = nlohmann::json;

std::string full_precision(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json spec_json(const ExperimentSpec& spec) {
  json j;
  j["law"] = spec.law.name();
  j["d"] = spec.law.dimension;
  j["statistic"] = statistic_name(spec.statistic);
  j["sizes"] = spec.sizes;
  j["trials"] = spec.trials;
  j["seed"] = spec.master_seed;
  j["cap"] = spec.stopped_cap;
  j["reservoir"] = spec.reservoir;
  return j;
}

json row_json(const ScalingRow& row) {
  json j;
  j["n"] = row.n;
  j["count"] = row.agg.count();
  j["mean"] = row.agg.mean();
  j["variance"] = row.agg.variance();
  j["stderr"] = row.agg.stderr_mean();
  j["min"] = row.agg.min();
  j["max"] = row.agg.max();
  j["q50"] = row.agg.quantile(0.5);
  j["q90"] = row.agg.quantile(0.9);
  j["q99"] = row.agg.quantile(0.99);
  j["resamples"] = row.resamples;
  return j;
}

json fit_json(const ExponentFit& fit) {
  json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  j["stderr"] = fit.stderr_slope;
  j["window"] = {fit.window_lo, fit.window_hi};
  j["points"] = fit.points;
  return j;
}

}  // namespace

std::string scaling_report_json(const ScalingTable& table, std::span<const ExponentFit> fits) {
  json j;
  j["spec"] = spec_json(table.spec);
  j["rows"] = json::array();
  for (const auto& row : table.rows) j["rows"].push_back(row_json(row));
  j["fits"] = json::array();
  for (const auto& fit : fits) j["fits"].push_back(fit_json(fit));
  return j.dump(2) + "\n";
}

void write_scaling_csv(const ScalingTable& table, std::ostream& out) {
  out << "statistic,law,n,trials,mean,var,q50,q90,q99,stderr\n";
  for (const auto& row : table.rows) {
    out << statistic_name(table.spec.statistic) << ',' << table.spec.law.name() << ',' << row.n
        << ',' << row.agg.count() << ',' << full_precision(row.agg.mean()) << ','
        << full_precision(row.agg.variance()) << ',' << full_precision(row.agg.quantile(0.5))
        << ',' << full_precision(row.agg.quantile(0.9)) << ','
        << full_precision(row.agg.quantile(0.99)) << ','
        << full_precision(row.agg.stderr_mean()) << "\n";
  }
}

std::string scaling_report_csv(const ScalingTable& table) {
  std::ostringstream out;
  write_scaling_csv(table, out);
  return out.str();
}

void persist_report(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("short write to " + path);
}

std::string load_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

struct PlotPoint {
  double x, y;
};

}  // namespace

std::string render_scaling_svg(std::span<const ScalingTable> tables,
                               std::span<const ExponentFit> fits) {
  constexpr double kWidth = 640, kHeight = 480;
  constexpr double kLeft = 64, kRight = 24, kTop = 24, kBottom = 56;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::vector<std::vector<PlotPoint>> series;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool any = false;
  for (const auto& table : tables) {
    std::vector<PlotPoint> pts;
    for (const auto& row : table.rows) {
      if (row.agg.count() == 0 || !(row.agg.mean() > 0)) continue;
      const PlotPoint p{std::log2(static_cast<double>(row.n)), std::log2(row.agg.mean())};
      if (!any) {
        xmin = xmax = p.x;
        ymin = ymax = p.y;
        any = true;
      }
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
      pts.push_back(p);
    }
    series.push_back(std::move(pts));
  }
  if (xmax - xmin < 1e-9) xmax = xmin + 1;
  if (ymax - ymin < 1e-9) ymax = ymin + 1;

  const auto sx = [&](double x) {
    return kLeft + (x - xmin) / (xmax - xmin) * (kWidth - kLeft - kRight);
  };
  const auto sy = [&](double y) {
    return kHeight - kBottom - (y - ymin) / (ymax - ymin) * (kHeight - kTop - kBottom);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "  <line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
      << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kHeight - kBottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "  <text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">log2 n</text>\n";
  svg << "  <text x=\"18\" y=\"" << (kTop + kHeight - kBottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 18 "
      << (kTop + kHeight - kBottom) / 2 << ")\">log2 mean</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 5];
    const std::string label = statistic_name(tables[s].spec.statistic);
    for (const auto& p : series[s]) {
      svg << "  <circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
          << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
    }
    if (s < fits.size() && !series[s].empty()) {
      const auto& fit = fits[s];
      const double x0 = series[s].front().x, x1 = series[s].back().x;
      const double y0 = fit.slope * x0 + fit.intercept;
      const double y1 = fit.slope * x1 + fit.intercept;
      svg << "  <line x1=\"" << sx(x0) << "\" y1=\"" << sy(y0) << "\" x2=\"" << sx(x1)
          << "\" y2=\"" << sy(y1) << "\" stroke=\"" << color
          << "\" stroke-dasharray=\"5 3\" data-slope=\"" << full_precision(fit.slope)
          << "\"/>\n";
      svg << "  <text x=\"" << kLeft + 8 << "\" y=\"" << kTop + 16 + 16 * static_cast<double>(s)
          << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">" << label
          << " slope " << full_precision(fit.slope) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

void save_scaling_svg(std::span<const ScalingTable> tables, std::span<const ExponentFit> fits,
                      const std::string& path) {
  persist_report(render_scaling_svg(tables, fits), path);
}

}  // namespace walklis
