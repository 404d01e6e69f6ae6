#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "ncphase/ncphase.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ncphase_capi_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallConfig = R"({
  "params": {"m": 1, "omega": 1, "hbar": 0.1, "theta": 1},
  "schedules": {"theta": {"first": 1, "last": 4}, "hbar_a": {"first": 1, "last": 4},
                "hbar_b": {"first": 1, "last": 3}},
  "quadrature": {"kind": "gauss_hermite_tensor", "order_per_axis": 12},
  "test_functions": [{"kind": "gaussian_bump"}, {"kind": "constant", "value": 1}],
  "probes": {"count": 6, "seed": 42, "lo": -3, "hi": 3},
  "y_probes": 4, "x_probes": 3,
  "outputs": "out",
  "experiments": ["noncommutation"]
})";

}  // namespace

TEST_CASE("derive through the C interface") {
  const ncp_params p{1, 1, 1, 2};
  ncp_derived d{};
  REQUIRE(ncp_derive(&p, &d) == NCP_OK);
  CHECK(d.lambda_plus == doctest::Approx(1 + std::numbers::sqrt2).epsilon(1e-14));
  CHECK(std::string(ncp_last_error()).empty());
}

TEST_CASE("errors map to status codes with a message") {
  const ncp_params bad{1, 1, -1, 0};
  ncp_derived d{};
  CHECK(ncp_derive(&bad, &d) == NCP_ERR_DOMAIN);
  CHECK(!std::string(ncp_last_error()).empty());
  CHECK(ncp_derive(nullptr, &d) == NCP_ERR_INVALID_ARGUMENT);
  double j[16];
  CHECK(ncp_phasemap_j(nullptr, j, nullptr) == NCP_ERR_INVALID_HANDLE);
  ncp_function fn = nullptr;
  CHECK(ncp_function_create("{not json", &fn) == NCP_ERR_CONFIG);
  CHECK(fn == nullptr);
  CHECK(ncp_function_create(R"({"kind":"nope"})", &fn) == NCP_ERR_CONFIG);
  CHECK(std::string(ncp_status_string(NCP_ERR_BUDGET)) == "budget exceeded");
  ncp_phasemap_destroy(nullptr);
  ncp_function_destroy(nullptr);
}

TEST_CASE("phase map handle") {
  const ncp_params p{1, 1, 1, 0};
  ncp_phasemap map = nullptr;
  REQUIRE(ncp_phasemap_create(&p, &map) == NCP_OK);
  double j[16], jdet = 0;
  REQUIRE(ncp_phasemap_j(map, j, &jdet) == NCP_OK);
  CHECK(jdet * 4 / (std::numbers::pi * std::numbers::pi) ==
        doctest::Approx(1 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-12));
  const double r[4] = {0.1, 0.2, 0.3, 0.4};
  double k = 0;
  REQUIRE(ncp_phasemap_overlap(map, r, r, &k) == NCP_OK);
  CHECK(k == 1.0);
  ncp_phasemap_destroy(map);
}

TEST_CASE("smoothing a constant and budget guard") {
  ncp_function fn = nullptr;
  REQUIRE(ncp_function_create(R"({"kind":"constant","value":1})", &fn) == NCP_OK);
  const ncp_params p{1, 1, 0.5, 0.3};
  const ncp_quadrature q{NCP_GAUSS_HERMITE_TENSOR, 10, 0, 0};
  double pts[8];
  REQUIRE(ncp_probe_cloud(2, 42, -3, 3, pts) == NCP_OK);
  double v[2], se[2];
  REQUIRE(ncp_smooth(fn, &p, &q, nullptr, pts, 2, v, se) == NCP_OK);
  CHECK(std::abs(v[0] - 1) < 1e-12);
  CHECK(se[1] == 0.0);
  const double t = 0.7;
  REQUIRE(ncp_smooth(fn, &p, &q, &t, pts, 2, v, nullptr) == NCP_OK);
  CHECK(std::abs(v[1] - 1) < 1e-12);
  const ncp_quadrature too_big{NCP_GAUSS_HERMITE_TENSOR, 65, 0, 0};
  CHECK(ncp_smooth(fn, &p, &too_big, nullptr, pts, 2, v, nullptr) == NCP_ERR_BUDGET);
  ncp_function_destroy(fn);
}

TEST_CASE("Wigner evaluation and evolution") {
  const ncp_params p{1, 1, 1, 0.25};
  const double c[4] = {0, 0, 0, 0};
  const double y[2] = {0, 0};
  double v = 0;
  REQUIRE(ncp_wigner_eval(NCP_WIGNER_MARGINAL_HBAR0, &p, 0, c, y, 1, 2, &v) == NCP_OK);
  CHECK(v == doctest::Approx(1 / (std::numbers::pi * 0.25)).epsilon(1e-14));
  CHECK(ncp_wigner_eval(NCP_WIGNER_4D, &p, 0, c, y, 1, 2, &v) == NCP_ERR_DIMENSION);
  double a[16];
  REQUIRE(ncp_evolution(&p, 0.0, NCP_REGIME_EXACT, a) == NCP_OK);
  for (int i = 0; i < 16; ++i) CHECK(a[i] == (i % 5 == 0 ? 1.0 : 0.0));
}

TEST_CASE("run config: malformed JSON leaves no outputs") {
  const auto dir = scratch("malformed");
  write(dir / "config.json", "{\"experiments\": [\"appendix\"], \"outputs\": \"out\"");
  int passed = 1;
  CHECK(ncp_run_config((dir / "config.json").c_str(), nullptr, &passed) == NCP_ERR_CONFIG);
  CHECK(passed == 0);
  CHECK(!fs::exists(dir / "out"));
  write(dir / "config.json", R"({"experiments": ["nope"], "outputs": "out"})");
  CHECK(ncp_run_config((dir / "config.json").c_str(), nullptr, &passed) == NCP_ERR_CONFIG);
  CHECK(std::string(ncp_last_error()).find("experiments") != std::string::npos);
  write(dir / "config.json", R"({"experiments": ["appendix"], "quadrature": {"kind": "monte_carlo"}})");
  CHECK(ncp_run_config((dir / "config.json").c_str(), nullptr, &passed) == NCP_ERR_CONFIG);
  CHECK(std::string(ncp_last_error()).find("quadrature.seed") != std::string::npos);
  CHECK(!fs::exists(dir / "out"));
}

TEST_CASE("run config: appendix writes 18 reports") {
  const auto dir = scratch("appendix");
  write(dir / "config.json", R"({"experiments": ["appendix"], "outputs": "out"})");
  int passed = 0;
  REQUIRE(ncp_run_config((dir / "config.json").c_str(), nullptr, &passed) == NCP_OK);
  CHECK(passed == 1);
  const auto doc = nlohmann::json::parse(slurp(dir / "out" / "appendix" / "report.json"));
  CHECK(doc["report_count"] == 18);
  CHECK(doc["config"]["experiments"][0] == "appendix");
  CHECK(slurp(dir / "out" / "appendix" / "errors.csv").rfind("report,series,step,parameter,error\n", 0) == 0);
}

TEST_CASE("run config: noncommutation gap, heatmap and determinism") {
  const auto dir = scratch("noncomm");
  write(dir / "config.json", kSmallConfig);
  int passed = 0;
  REQUIRE(ncp_run_config((dir / "config.json").c_str(), nullptr, &passed) == NCP_OK);
  const auto out = dir / "out" / "noncommutation";
  const std::string first = slurp(out / "report.json");
  const auto doc = nlohmann::json::parse(first);
  CHECK(doc["summary"]["gaps"][0]["gap"].get<double>() >= 0.9);
  CHECK(doc["summary"]["gaps"][1]["gap"].get<double>() == 0.0);
  CHECK(fs::exists(out / "grid.csv"));
  CHECK(slurp(out / "heatmap.svg").find("<svg") == 0);
  REQUIRE(ncp_run_config((dir / "config.json").c_str(), nullptr, &passed) == NCP_OK);
  CHECK(slurp(out / "report.json") == first);
}

TEST_CASE("appendix summary and heatmap rendering") {
  const ncp_params p{1, 1, 1, 1};
  char* summary = nullptr;
  int ok = 0;
  REQUIRE(ncp_run_appendix(&p, nullptr, &summary, &ok) == NCP_OK);
  REQUIRE(summary != nullptr);
  CHECK(nlohmann::json::parse(summary)["report_count"] == 18);
  CHECK(ok == 1);
  ncp_string_free(summary);

  const auto dir = scratch("heatmap");
  write(dir / "grid.csv", "a,b,v\n0,0,1\n1,0,2\n0,1,3\n1,1,4\n");
  REQUIRE(ncp_render_heatmap((dir / "grid.csv").c_str(), (dir / "h.svg").c_str(), "t") == NCP_OK);
  const std::string svg = slurp(dir / "h.svg");
  CHECK(svg.find(">a</text>") != std::string::npos);
  CHECK(svg.find(">b</text>") != std::string::npos);
  write(dir / "bad.csv", "a,b,v\n0,0,1\n1,0,2\n0,1,3\n");
  CHECK(ncp_render_heatmap((dir / "bad.csv").c_str(), (dir / "h2.svg").c_str(), "t") == NCP_ERR_CONFIG);
}
