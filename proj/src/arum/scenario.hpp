#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arum/model_json.hpp"

namespace arum {

// CLI-level overrides. Precedence for the output directory:
// explicit option > scenario file > fallback_output_dir (environment) >
// "arum_out".
struct RunOptions {
  std::optional<std::string> output_dir;
  std::optional<std::string> arithmetic;  // "rational" | "float"
  std::optional<std::uint64_t> seed;
  std::optional<std::string> atom_grid;  // "lo:hi:step", overrides counterfactual analyses
  std::optional<std::string> fallback_output_dir;
  bool quiet = false;
};

// One executed analysis: a CSV table, a JSON document, and optionally a
// columnar plot series.
struct AnalysisOutput {
  std::string type;
  std::string csv;
  Json json;
  std::optional<std::string> plot_csv;
};

// Plot-data emission. Supported kinds: welfare (path integrand samples),
// discontinuity (per-rectangle widths), attention (per-point changes),
// diagnostics (per-subset sums). Throws UnsupportedAnalysisError otherwise.
std::string emit_plot_data(const AnalysisOutput& output);

struct RunSummary {
  std::string scenario_name;
  std::string output_dir;
  Arithmetic arithmetic = Arithmetic::Rational;
  std::uint64_t seed = 0;
  std::vector<std::string> files;       // artifact names, in write order
  std::vector<std::string> lines;       // one human-readable line per analysis
};

Json run_summary_json(const RunSummary& summary);

// Executes every analysis in order and writes one CSV + one JSON per analysis
// (plus plot CSVs where supported) and manifest.json into the output
// directory. Identical scenario + options produce identical bytes.
RunSummary run_scenario(const std::string& path, const RunOptions& options);

// Parses and validates without executing any analysis.
void validate_scenario_file(const std::string& path, const RunOptions& options);

// JSON Schema for scenario files.
std::string scenario_schema_text();

// "lo:hi:step" with exact numeric literals.
AxisSpec<Rational> parse_axis_spec(const std::string& text);

}  // namespace arum
