#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "arum/hash.hpp"
#include "arum/model_json.hpp"
#include "arum/scenario.hpp"

using namespace arum;
namespace fs = std::filesystem;

namespace {

const std::string kDataDir = ARUM_TEST_DATA_DIR;

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("arum_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += (c == '\n');
  return n;
}

}  // namespace

TEST_CASE("reference scenario runs and produces the expected artifact set") {
  fs::path out = fresh_dir("ref_run");
  RunOptions opts;
  opts.output_dir = out.string();
  RunSummary summary = run_scenario(kDataDir + "/reference_scenario.json", opts);
  CHECK(summary.scenario_name == "reference");
  std::vector<std::string> expect = {"01_identify.csv",      "01_identify.json",
                                     "02_attention.csv",     "02_attention.json",
                                     "02_attention_plot.csv", "03_welfare.csv",
                                     "03_welfare.json",      "03_welfare_plot.csv",
                                     "manifest.json"};
  CHECK(summary.files == expect);
  for (const auto& f : expect) CHECK(fs::exists(out / f));

  // established module values appear in the artifacts
  std::string identify = read_text_file((out / "01_identify.csv").string());
  CHECK(identify.find("0,0.6,") != std::string::npos);      // sup p_0 = 0.6
  CHECK(identify.find(",0.6,1,true,true") != std::string::npos);  // interval [0.6, 1], sharp
  std::string attention = read_text_file((out / "02_attention.csv").string());
  CHECK(attention.find("0,0.6,0,0.4,0.4") != std::string::npos);  // [0, 0.4], realized 0.4
  std::string welfare = read_text_file((out / "03_welfare.csv").string());
  CHECK(welfare.find("unbounded_above") != std::string::npos);
  CHECK(welfare.find(",4,true,") != std::string::npos);  // gain bound 4, field unchanged
}

TEST_CASE("scenario rerun is byte-identical") {
  fs::path out1 = fresh_dir("det_a");
  fs::path out2 = fresh_dir("det_b");
  RunOptions opts;
  opts.output_dir = out1.string();
  RunSummary s1 = run_scenario(kDataDir + "/reference_scenario.json", opts);
  opts.output_dir = out2.string();
  RunSummary s2 = run_scenario(kDataDir + "/reference_scenario.json", opts);
  REQUIRE(s1.files == s2.files);
  for (const auto& f : s1.files)
    CHECK(read_text_file((out1 / f).string()) == read_text_file((out2 / f).string()));
}

TEST_CASE("manifest lists every artifact with its content hash") {
  fs::path out = fresh_dir("manifest");
  RunOptions opts;
  opts.output_dir = out.string();
  RunSummary summary = run_scenario(kDataDir + "/reference_scenario.json", opts);
  Json manifest = parse_json_text(read_text_file((out / "manifest.json").string()), "manifest");
  CHECK(manifest["schema_version"] == 1);
  CHECK(manifest["scenario"] == "reference");
  CHECK(manifest["arithmetic"] == "rational");
  CHECK(manifest["seed"] == 42);
  REQUIRE(manifest["files"].size() == summary.files.size() - 1);  // manifest not listed
  for (const auto& entry : manifest["files"]) {
    std::string name = entry["name"].get<std::string>();
    std::string content = read_text_file((out / name).string());
    CHECK(entry["hash"].get<std::string>() == "fnv1a64:" + fnv1a64_hex(content));
  }
}

TEST_CASE("plot data row counts") {
  fs::path out = fresh_dir("plots");
  RunOptions opts;
  opts.output_dir = out.string();
  run_scenario(kDataDir + "/reference_scenario.json", opts);
  // welfare: header + panels + 1 samples
  CHECK(count_lines(read_text_file((out / "03_welfare_plot.csv").string())) == 66);
  // attention: header + one row per grid point
  CHECK(count_lines(read_text_file((out / "02_attention_plot.csv").string())) == 5);
}

TEST_CASE("diagnostics emits one row per proper nonempty subset") {
  fs::path out = fresh_dir("diag");
  fs::path scen = out / "scen.json";
  write_file(scen, R"({
    "name": "diag3",
    "arithmetic": "rational",
    "model": {"class": "arum_cs", "K": 3, "atoms": [
      {"eps": ["0.5", "0", "0.25"], "S": [0, 1, 2], "w": "0.6"},
      {"eps": ["0.5", "0", "0.25"], "S": [1], "w": "0.4"}
    ]},
    "grid": {"rect": [{"lo": -1, "hi": 1, "step": 2}, {"lo": -1, "hi": 1, "step": 2},
                      {"lo": -1, "hi": 1, "step": 2}]},
    "analyses": [{"type": "diagnostics"}]
  })");
  RunOptions opts;
  opts.output_dir = (out / "artifacts").string();
  run_scenario(scen.string(), opts);
  // 2^3 - 2 = 6 proper nonempty subsets
  std::string plot = read_text_file((out / "artifacts" / "01_diagnostics_plot.csv").string());
  CHECK(count_lines(plot) == 7);
  Json j = parse_json_text(read_text_file((out / "artifacts" / "01_diagnostics.json").string()), "d");
  CHECK(j["subsets"].size() == 6);
  CHECK(j["consistent_with_full_consideration"] == false);
}

TEST_CASE("empty analyses fail validation before any computation") {
  fs::path out = fresh_dir("noanalyses");
  fs::path scen = out / "scen.json";
  write_file(scen, R"({
    "name": "empty",
    "model": {"class": "arum_cs", "K": 2,
              "atoms": [{"eps": ["0.5", "0"], "S": [0, 1], "w": 1}]},
    "grid": {"points": [[0, 0]]},
    "analyses": []
  })");
  CHECK_THROWS_AS(run_scenario(scen.string(), RunOptions{}), ValidationError);
  CHECK_THROWS_AS(validate_scenario_file(scen.string(), RunOptions{}), ValidationError);
}

TEST_CASE("validate catches missing inputs, bad k, unknown types") {
  fs::path out = fresh_dir("badscens");
  auto check_invalid = [&](const std::string& name, const std::string& text) {
    fs::path scen = out / name;
    write_file(scen, text);
    CHECK_THROWS_AS(validate_scenario_file(scen.string(), RunOptions{}), ValidationError);
  };
  check_invalid("no_model.json", R"({"name":"x","grid":{"points":[[0,0]]},
    "analyses":[{"type":"identify"}]})");
  check_invalid("bad_k.json", R"({"name":"x",
    "model":{"class":"arum_cs","K":2,"atoms":[{"eps":["0.5","0"],"S":[0,1],"w":1}]},
    "grid":{"points":[[0,0]]},"analyses":[{"type":"identify","k":5}]})");
  check_invalid("unknown_type.json", R"({"name":"x",
    "model":{"class":"arum_cs","K":2,"atoms":[{"eps":["0.5","0"],"S":[0,1],"w":1}]},
    "grid":{"points":[[0,0]]},"analyses":[{"type":"frobnicate"}]})");
  check_invalid("field_welfare.json", R"({"name":"x",
    "field":{"grid":{"points":[[0,0]]},"probs":[["0.5","0.5"]]},
    "analyses":[{"type":"welfare","u":[0,0],"u_tilde":[1,0]}]})");
  check_invalid("grid_with_field.json", R"({"name":"x",
    "field":{"grid":{"points":[[0,0]]},"probs":[["0.5","0.5"]]},
    "grid":{"points":[[0,0]]},
    "analyses":[{"type":"identify"}]})");
}

TEST_CASE("field-only scenarios run field-level analyses") {
  fs::path out = fresh_dir("fieldonly");
  fs::path scen = out / "scen.json";
  write_file(scen, R"({
    "name": "fieldonly",
    "field": {
      "grid": {"rect": [{"lo": -1, "hi": 1, "step": 2}, {"lo": -1, "hi": 1, "step": 2}]},
      "probs": [["0.6","0.4"], ["0","1"], ["0.6","0.4"], ["0.6","0.4"]]
    },
    "analyses": [{"type": "identify", "k": 0}, {"type": "diagnostics"},
                 {"type": "attention", "k": 0}]
  })");
  RunOptions opts;
  opts.output_dir = (out / "artifacts").string();
  RunSummary summary = run_scenario(scen.string(), opts);
  std::string identify = read_text_file((out / "artifacts" / "01_identify.csv").string());
  CHECK(identify.find("0,0.6,") != std::string::npos);
  // attention bounds work field-only; no witness, so no plot file
  for (const auto& f : summary.files) CHECK(f != "03_attention_plot.csv");
}

TEST_CASE("atom-grid override feeds counterfactual analyses") {
  fs::path out = fresh_dir("atomgrid");
  fs::path scen = out / "scen.json";
  write_file(scen, R"({
    "name": "cf",
    "arithmetic": "rational",
    "model": {"class": "arum_cs", "K": 2,
              "atoms": [{"eps": ["1", "0"], "S": [0, 1], "w": "0.5"},
                         {"eps": ["0", "1"], "S": [0, 1], "w": "0.5"}]},
    "grid": {"points": [[0, 0]]},
    "analyses": [{"type": "counterfactual", "k": 0, "u_c": ["1.5", 0]}]
  })");
  // no atom_grid in the scenario: fails without the override
  CHECK_THROWS_AS(run_scenario(scen.string(), [&] {
                    RunOptions o;
                    o.output_dir = (out / "a1").string();
                    return o;
                  }()),
                  ValidationError);
  RunOptions opts;
  opts.output_dir = (out / "a2").string();
  opts.atom_grid = "-2:2:1";
  RunSummary summary = run_scenario(scen.string(), opts);
  std::string csv = read_text_file((out / "a2" / "01_counterfactual.csv").string());
  // three classes by default; the ARUM family interval is [1/2, 1]
  CHECK(csv.find("arum,0,") != std::string::npos);
  CHECK(csv.find("arum_e,0,") != std::string::npos);
  CHECK(csv.find("arum_cs,0,") != std::string::npos);
  CHECK(csv.find(",0.5,1,") != std::string::npos);
}

TEST_CASE("equivalence and discontinuity analyses run end to end") {
  fs::path out = fresh_dir("equivdisc");
  fs::path model = out / "model.json";
  write_file(model, R"({
    "class": "arum_cs", "K": 2,
    "atoms": [{"eps": ["0.5", "0"], "S": [0, 1], "w": "0.6"},
               {"eps": ["0.5", "0"], "S": [1], "w": "0.4"}]
  })");
  fs::path scen = out / "scen.json";
  write_file(scen, R"({
    "name": "equivdisc",
    "arithmetic": "rational",
    "model_file": "model.json",
    "grid": {"rect": [{"lo": -1, "hi": 1, "step": 2}, {"lo": -1, "hi": 1, "step": 2}]},
    "analyses": [
      {"type": "equivalence"},
      {"type": "discontinuity", "k": 0, "scales": [1, 2, 4, 8]},
      {"type": "welfare", "u": [1, -1], "envelope_h": "0.25"}
    ]
  })");
  RunOptions opts;
  opts.output_dir = (out / "artifacts").string();
  RunSummary summary = run_scenario(scen.string(), opts);

  // equivalence: three image pairs, all exact
  Json eq = parse_json_text(read_text_file((out / "artifacts" / "01_equivalence.json").string()), "e");
  CHECK(eq["pass"] == true);
  CHECK(eq["max_discrepancy"] == "0");
  REQUIRE(eq["pairs"].size() == 3);
  std::string eqcsv = read_text_file((out / "artifacts" / "01_equivalence.csv").string());
  CHECK(count_lines(eqcsv) == 13);  // header + 3 pairs x 4 points

  // discontinuity: constant width 0.4, plot matches the table
  std::string disc = read_text_file((out / "artifacts" / "02_discontinuity.csv").string());
  CHECK(count_lines(disc) == 5);
  CHECK(disc.find("1,4,0.6,0.4") != std::string::npos);
  CHECK(disc.find("8,4,0.6,0.4") != std::string::npos);
  std::string plot = read_text_file((out / "artifacts" / "02_discontinuity_plot.csv").string());
  CHECK(count_lines(plot) == 5);
  CHECK(plot.find("8,0.6,0.4") != std::string::npos);

  // envelope part: exact zero below the winning margin
  Json w = parse_json_text(read_text_file((out / "artifacts" / "03_welfare.json").string()), "w");
  CHECK(w["envelope"]["max_deviation"] == "0");
  CHECK(summary.files.back() == "manifest.json");
}

TEST_CASE("under-rich counterfactual families surface the infeasible error") {
  fs::path out = fresh_dir("infeas");
  fs::path scen = out / "scen.json";
  // p_0 is 0.6 at (0,0) but 0 at (-1,0); the surviving {-2,2} atoms choose
  // the same alternative at both points, so no weighting can match the field
  write_file(scen, R"({
    "name": "infeasible",
    "arithmetic": "rational",
    "model": {"class": "arum_cs", "K": 2, "atoms": [
      {"eps": ["0.5", "0"], "S": [0, 1], "w": "0.6"},
      {"eps": ["0.5", "0"], "S": [1], "w": "0.4"}
    ]},
    "grid": {"points": [[0, 0], [-1, 0]]},
    "analyses": [{"type": "counterfactual", "k": 0, "u_c": ["1.5", 0],
                   "atom_grid": "-2:2:4", "model_class": "arum"}]
  })");
  RunOptions opts;
  opts.output_dir = (out / "artifacts").string();
  CHECK_THROWS_AS(run_scenario(scen.string(), opts), InfeasibleError);

  // a tie-filtered-to-empty family reports the targeted validation error
  fs::path scen2 = out / "scen2.json";
  write_file(scen2, R"({
    "name": "empty_family",
    "arithmetic": "rational",
    "model": {"class": "arum_cs", "K": 2, "atoms": [
      {"eps": ["0.5", "0"], "S": [0, 1], "w": "0.6"},
      {"eps": ["0.5", "0"], "S": [1], "w": "0.4"}
    ]},
    "grid": {"points": [[0, 0]]},
    "analyses": [{"type": "counterfactual", "k": 0, "u_c": ["1.5", 0],
                   "atom_grid": "0:0:1", "model_class": "arum"}]
  })");
  CHECK_THROWS_AS(run_scenario(scen2.string(), opts), ValidationError);
}

TEST_CASE("emit_plot_data: unsupported analyses raise the dedicated error") {
  AnalysisOutput out;
  out.type = "identify";
  CHECK_THROWS_AS(emit_plot_data(out), UnsupportedAnalysisError);
  out.plot_csv = "t,v\n";
  CHECK(emit_plot_data(out) == "t,v\n");
}

TEST_CASE("float mode runs the same scenario with double arithmetic") {
  fs::path out = fresh_dir("floatmode");
  RunOptions opts;
  opts.output_dir = out.string();
  opts.arithmetic = "float";
  RunSummary summary = run_scenario(kDataDir + "/reference_scenario.json", opts);
  CHECK(summary.arithmetic == Arithmetic::Float);
  std::string identify = read_text_file((out / "01_identify.csv").string());
  CHECK(identify.find("0,0.6,") != std::string::npos);
  // reruns stay deterministic in float mode too
  fs::path out2 = fresh_dir("floatmode2");
  opts.output_dir = out2.string();
  run_scenario(kDataDir + "/reference_scenario.json", opts);
  for (const auto& f : summary.files)
    CHECK(read_text_file((out / f).string()) == read_text_file((out2 / f).string()));
}

TEST_CASE("seed and arithmetic overrides land in the manifest") {
  fs::path out = fresh_dir("seedover");
  RunOptions opts;
  opts.output_dir = out.string();
  opts.seed = 777;
  opts.arithmetic = "float";
  run_scenario(kDataDir + "/reference_scenario.json", opts);
  Json manifest = parse_json_text(read_text_file((out / "manifest.json").string()), "m");
  CHECK(manifest["seed"] == 777);
  CHECK(manifest["arithmetic"] == "float");
}

TEST_CASE("discontinuity accepts explicit rectangle grids") {
  fs::path out = fresh_dir("rects");
  fs::path scen = out / "scen.json";
  write_file(scen, R"({
    "name": "rects",
    "arithmetic": "rational",
    "model": {"class": "arum_cs", "K": 2, "atoms": [
      {"eps": ["0.5", "0"], "S": [0, 1], "w": "0.6"},
      {"eps": ["0.5", "0"], "S": [1], "w": "0.4"}
    ]},
    "grid": {"rect": [{"lo": -1, "hi": 1, "step": 2}, {"lo": -1, "hi": 1, "step": 2}]},
    "analyses": [{"type": "discontinuity", "k": 0, "rects": [
      {"rect": [{"lo": -1, "hi": 1, "step": 2}, {"lo": -1, "hi": 1, "step": 2}]},
      {"rect": [{"lo": -3, "hi": 3, "step": 6}, {"lo": -3, "hi": 3, "step": 6}]}
    ]}]
  })");
  RunOptions opts;
  opts.output_dir = (out / "artifacts").string();
  run_scenario(scen.string(), opts);
  std::string csv = read_text_file((out / "artifacts" / "01_discontinuity.csv").string());
  CHECK(count_lines(csv) == 3);
  CHECK(csv.find("0,4,0.6,0.4") != std::string::npos);
  CHECK(csv.find("1,4,0.6,0.4") != std::string::npos);
}

TEST_CASE("scenario schema is valid json and names every analysis type") {
  Json schema = parse_json_text(scenario_schema_text(), "schema");
  CHECK(schema.contains("$defs"));
  std::string text = scenario_schema_text();
  for (const char* t : {"equivalence", "identify", "discontinuity", "counterfactual",
                        "attention", "welfare", "diagnostics"})
    CHECK(text.find(t) != std::string::npos);
}

TEST_CASE("axis spec parsing") {
  auto spec = parse_axis_spec("-2:2:0.5");
  CHECK(spec.lo == Rational(-2));
  CHECK(spec.hi == Rational(2));
  CHECK(spec.step == Rational(1, 2));
  CHECK_THROWS_AS(parse_axis_spec("1:2"), ValidationError);
  CHECK_THROWS_AS(parse_axis_spec("2:1:1"), ValidationError);
  CHECK_THROWS_AS(parse_axis_spec("1:2:0"), ValidationError);
}
