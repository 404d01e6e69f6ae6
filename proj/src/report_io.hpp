#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "limits.hpp"

namespace ncphase {

using Json = nlohmann::ordered_json;

// 17 significant digits in scientific notation; round-trips every double.
std::string csv_number(double v);

Json to_json(const SweepSchedule& s);
Json to_json(const LimitReport& r);

// report, series, step, parameter, error; one row per series entry.
void write_errors_csv(const std::filesystem::path& path, const std::vector<LimitReport>& reports);

struct Grid2D {
  std::string x_name = "x";
  std::string y_name = "y";
  std::string value_name = "value";
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;  // row-major in y: values[iy * xs.size() + ix]
};

void write_grid_csv(const std::filesystem::path& path, const Grid2D& g);
Grid2D read_grid_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ncphase
