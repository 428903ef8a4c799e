#include <doctest.h>

#include <arum/arum.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* kModelJson = R"({
  "class": "arum_cs",
  "K": 2,
  "atoms": [
    {"eps": [0.5, 0], "S": [0, 1], "w": 0.6},
    {"eps": [0.5, 0], "S": [1], "w": 0.4}
  ]
})";

struct ModelHandle {
  arum_model* m = nullptr;
  ~ModelHandle() { arum_model_free(m); }
};

struct GridHandle {
  arum_grid* g = nullptr;
  ~GridHandle() { arum_grid_free(g); }
};

struct FieldHandle {
  arum_field* f = nullptr;
  ~FieldHandle() { arum_field_free(f); }
};

std::string last_error() {
  char buf[512];
  arum_last_error(buf, sizeof(buf));
  return buf;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(arum_version()) == "0.1.0");
  CHECK(std::string(arum_status_name(ARUM_OK)) == "ok");
  CHECK(std::string(arum_status_name(ARUM_ERR_ARGMAX_TIE)) == "argmax_tie");
  CHECK(std::string(arum_status_name(ARUM_ERR_INFEASIBLE)) == "infeasible");
}

TEST_CASE("model parse, evaluate, and serialize through the C surface") {
  ModelHandle h;
  REQUIRE(arum_model_parse_json(kModelJson, &h.m) == ARUM_OK);
  CHECK(arum_model_alternatives(h.m) == 2);

  double consid = 0;
  REQUIRE(arum_model_consideration_prob(h.m, 0, &consid) == ARUM_OK);
  CHECK(consid == doctest::Approx(0.6).epsilon(1e-15));

  double u[2] = {1.0, -1.0};
  double p[2] = {};
  REQUIRE(arum_choice_prob(h.m, u, p) == ARUM_OK);
  CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.4).epsilon(1e-15));

  double v = 0;
  REQUIRE(arum_social_surplus(h.m, u, &v) == ARUM_OK);
  // 0.6 * (1.5 - 0.5) + 0.4 * (-1 - 0.5) = 0
  CHECK(v == doctest::Approx(0.0).epsilon(1e-15));

  char* json = nullptr;
  REQUIRE(arum_model_to_json(h.m, &json) == ARUM_OK);
  CHECK(std::string(json).find("arum_cs") != std::string::npos);
  arum_string_free(json);
}

TEST_CASE("explicit grids through the C surface") {
  GridHandle g;
  double coords[6] = {0, 0, 1, 0, 0, 1};
  REQUIRE(arum_grid_create(2, 3, coords, &g.g) == ARUM_OK);
  CHECK(arum_grid_size(g.g) == 3);
  GridHandle dup;
  double dup_coords[4] = {0, 0, 0, 0};
  CHECK(arum_grid_create(2, 2, dup_coords, &dup.g) == ARUM_ERR_VALIDATION);
}

TEST_CASE("model files load through the C surface") {
  fs::path path = fs::temp_directory_path() / "arum_capi_model.json";
  {
    std::ofstream f(path);
    f << kModelJson;
  }
  ModelHandle h;
  REQUIRE(arum_model_load_file(path.string().c_str(), &h.m) == ARUM_OK);
  CHECK(arum_model_alternatives(h.m) == 2);
}

TEST_CASE("grid, field, and identified-set round trip") {
  ModelHandle h;
  REQUIRE(arum_model_parse_json(kModelJson, &h.m) == ARUM_OK);
  GridHandle g;
  double lo[2] = {-1, -1}, hi[2] = {1, 1}, step[2] = {2, 2};
  REQUIRE(arum_grid_rect(2, lo, hi, step, &g.g) == ARUM_OK);
  CHECK(arum_grid_dim(g.g) == 2);
  CHECK(arum_grid_size(g.g) == 4);

  FieldHandle f;
  REQUIRE(arum_field_compute(h.m, g.g, &f.f) == ARUM_OK);
  double p = 0;
  REQUIRE(arum_field_prob(f.f, 2, 0, &p) == ARUM_OK);  // (1,-1)
  CHECK(p == doctest::Approx(0.6).epsilon(1e-15));

  double lo_out = 0, hi_out = 0;
  int sharp = 0;
  REQUIRE(arum_consideration_identified_set(f.f, 0, &lo_out, &hi_out, &sharp) == ARUM_OK);
  CHECK(lo_out == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(hi_out == 1.0);
  CHECK(sharp == 1);

  REQUIRE(arum_attention_change_bounds(f.f, 0, &lo_out, &hi_out) == ARUM_OK);
  CHECK(lo_out == 0.0);
  CHECK(hi_out == doctest::Approx(0.4).epsilon(1e-15));

  CHECK(arum_field_prob(f.f, 99, 0, &p) == ARUM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("gumbel, monte carlo, welfare, envelope through the C surface") {
  double u[3] = {0.0, 0.0, 0.0};
  double p[3] = {};
  REQUIRE(arum_gumbel_choice_prob(3, u, p) == ARUM_OK);
  CHECK(p[0] == doctest::Approx(1.0 / 3).epsilon(1e-14));

  ModelHandle h;
  REQUIRE(arum_model_parse_json(kModelJson, &h.m) == ARUM_OK);
  double u2[2] = {0.0, 0.0};
  double est[2] = {}, se[2] = {};
  REQUIRE(arum_monte_carlo_choice_prob(h.m, u2, 100000, 7, est, se) == ARUM_OK);
  CHECK(std::fabs(est[0] - 0.6) <= 4 * se[0]);

  double from[2] = {-1.0, 1.0}, to[2] = {1.0, -1.0};
  double delta = 0;
  REQUIRE(arum_welfare_change(h.m, from, to, 64, &delta) == ARUM_OK);
  CHECK(delta == doctest::Approx(-0.5).epsilon(1e-9));

  double dev = 0;
  double at[2] = {1.0, -1.0};
  REQUIRE(arum_envelope_check(h.m, at, 1e-4, &dev) == ARUM_OK);
  CHECK(dev <= 1e-12);
}

TEST_CASE("error codes and messages cross the boundary") {
  ModelHandle h;
  const char* tied = R"({"class":"arum","K":2,"atoms":[{"eps":[0,0],"w":1}]})";
  REQUIRE(arum_model_parse_json(tied, &h.m) == ARUM_OK);
  double u[2] = {0.0, 0.0};
  double p[2] = {};
  CHECK(arum_choice_prob(h.m, u, p) == ARUM_ERR_ARGMAX_TIE);
  CHECK(last_error().find("argmax tie") != std::string::npos);

  arum_model* bad = nullptr;
  CHECK(arum_model_parse_json("{not json", &bad) == ARUM_ERR_PARSE);
  CHECK(arum_model_parse_json(R"({"class":"arum","K":2,"atoms":[{"eps":[0,1],"w":0.5}]})",
                              &bad) == ARUM_ERR_VALIDATION);
  CHECK(arum_model_load_file("/nonexistent.json", &bad) == ARUM_ERR_IO);
  CHECK(arum_choice_prob(nullptr, u, p) == ARUM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scenario run, validate, and schema through the C surface") {
  std::string scenario = std::string(ARUM_TEST_DATA_DIR) + "/reference_scenario.json";
  fs::path out = fs::temp_directory_path() / "arum_capi_run";
  fs::remove_all(out);

  arum_scenario_options opts{};
  std::string dir = out.string();
  opts.output_dir = dir.c_str();
  CHECK(arum_scenario_validate(scenario.c_str(), &opts) == ARUM_OK);

  char* summary = nullptr;
  REQUIRE(arum_scenario_run(scenario.c_str(), &opts, &summary) == ARUM_OK);
  std::string stext = summary;
  arum_string_free(summary);
  CHECK(stext.find("manifest.json") != std::string::npos);
  CHECK(fs::exists(out / "01_identify.csv"));

  char* schema = nullptr;
  REQUIRE(arum_scenario_schema(&schema) == ARUM_OK);
  CHECK(std::string(schema).find("counterfactual") != std::string::npos);
  arum_string_free(schema);

  CHECK(arum_scenario_run("/nonexistent.json", &opts, nullptr) == ARUM_ERR_IO);
}

TEST_CASE("ARUM_OUTPUT_DIR provides the fallback output directory") {
  std::string scenario = std::string(ARUM_TEST_DATA_DIR) + "/reference_scenario.json";
  fs::path out = fs::temp_directory_path() / "arum_capi_envdir";
  fs::remove_all(out);
  setenv("ARUM_OUTPUT_DIR", out.string().c_str(), 1);
  char* summary = nullptr;
  REQUIRE(arum_scenario_run(scenario.c_str(), nullptr, &summary) == ARUM_OK);
  arum_string_free(summary);
  unsetenv("ARUM_OUTPUT_DIR");
  CHECK(fs::exists(out / "manifest.json"));
}
