#include "report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "error.hpp"

namespace ncphase {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number_or_null(x));
  return a;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

Json to_json(const SweepSchedule& s) {
  return Json{{"parameter", std::string(to_string(s.parameter))},
              {"values", numbers(s.values)},
              {"fixed", s.fixed}};
}

Json to_json(const LimitReport& r) {
  Json j;
  j["experiment"] = r.experiment;
  j["target_description"] = r.target_description;
  j["verdict"] = std::string(to_string(r.verdict));
  j["exploratory"] = r.exploratory;
  j["tolerance"] = r.tolerance;
  j["fitted_rate"] = number_or_null(r.fitted_rate);
  Json schedules = Json::array();
  for (const auto& s : r.schedules) schedules.push_back(to_json(s));
  j["schedules"] = schedules;
  j["errors_per_step"] = numbers(r.errors_per_step);
  Json series = Json::array();
  for (const auto& s : r.series) {
    series.push_back(Json{{"name", s.name}, {"params", numbers(s.params)}, {"errors", numbers(s.errors)}});
  }
  j["series"] = series;
  Json scalars = Json::object();
  for (const auto& [k, v] : r.scalars) scalars[k] = number_or_null(v);
  j["scalars"] = scalars;
  j["notes"] = r.notes;
  Json probes = Json::array();
  for (const auto& p : r.probe_points) probes.push_back(Json::array({p.x1, p.x2, p.y1, p.y2}));
  j["probe_points"] = probes;
  return j;
}

void write_errors_csv(const std::filesystem::path& path, const std::vector<LimitReport>& reports) {
  auto out = open_out(path);
  out << "report,series,step,parameter,error\n";
  for (const auto& r : reports) {
    for (const auto& s : r.series) {
      for (std::size_t k = 0; k < s.errors.size(); ++k) {
        out << r.experiment << ',' << s.name << ',' << k << ','
            << csv_number(k < s.params.size() ? s.params[k] : NAN) << ',' << csv_number(s.errors[k])
            << '\n';
      }
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void write_grid_csv(const std::filesystem::path& path, const Grid2D& g) {
  if (g.values.size() != g.xs.size() * g.ys.size()) throw DimensionError("grid size mismatch");
  auto out = open_out(path);
  out << g.x_name << ',' << g.y_name << ',' << g.value_name << '\n';
  for (std::size_t iy = 0; iy < g.ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < g.xs.size(); ++ix) {
      out << csv_number(g.xs[ix]) << ',' << csv_number(g.ys[iy]) << ','
          << csv_number(g.values[iy * g.xs.size() + ix]) << '\n';
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

Grid2D read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty grid file");
  const auto header = split_csv_line(line);
  if (header.size() != 3) throw ConfigError(path.string() + ": grid header must have 3 columns");
  Grid2D g{header[0], header[1], header[2], {}, {}, {}};
  std::map<std::pair<double, double>, double> cells;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto c = split_csv_line(line);
    if (c.size() != 3) throw ConfigError(path.string() + ": row " + std::to_string(row) + " needs 3 cells");
    try {
      const double x = std::stod(c[0]), y = std::stod(c[1]), v = std::stod(c[2]);
      cells[{y, x}] = v;
      g.xs.push_back(x);
      g.ys.push_back(y);
    } catch (const std::exception&) {
      throw ConfigError(path.string() + ": row " + std::to_string(row) + " is not numeric");
    }
  }
  auto uniq = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(g.xs);
  uniq(g.ys);
  if (g.xs.empty() || g.ys.empty()) throw ConfigError(path.string() + ": grid has no rows");
  if (cells.size() != g.xs.size() * g.ys.size()) {
    throw ConfigError(path.string() + ": rows do not form a complete rectangular grid");
  }
  g.values.reserve(cells.size());
  for (const auto& [key, v] : cells) g.values.push_back(v);
  return g;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace ncphase
