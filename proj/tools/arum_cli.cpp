// Command-line front end for the arum shared library. Talks to the library
// exclusively through the C API in arum/arum.h.

#include <arum/arum.h>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace {

int fail(arum_status status) {
  char buf[1024];
  arum_last_error(buf, sizeof(buf));
  std::fprintf(stderr, "error (%s): %s\n", arum_status_name(status), buf);
  return static_cast<int>(status);
}

const char kExitCodeHelp[] =
    "Exit codes:\n"
    "  0   success\n"
    "  1   internal error\n"
    "  2   parse error (malformed JSON or numeric literal)\n"
    "  3   validation error (schema or precondition violated)\n"
    "  4   argmax tie (instance violates the no-ties assumption)\n"
    "  5   infeasible (atom family cannot reproduce the field)\n"
    "  6   no k-maximal point on the grid\n"
    "  7   full consideration (no witness with unconsidered mass)\n"
    "  8   grid is not a Cartesian product\n"
    "  9   analysis has no plot-data series\n"
    "  10  file I/O error\n"
    "  11  invalid argument\n"
    "\n"
    "Environment:\n"
    "  ARUM_OUTPUT_DIR  default output directory when neither --output-dir\n"
    "                   nor the scenario file sets one\n";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("arum ") + arum_version() +
               " - additive random utility models with consideration sets"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  std::string scenario_path;
  std::string output_dir;
  std::string arithmetic;
  std::string atom_grid;
  std::uint64_t seed = 0;
  bool has_seed = false;
  bool quiet = false;

  CLI::App* run = app.add_subcommand("run", "Execute a scenario file and write its artifacts");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--output-dir", output_dir, "Override the output directory");
  run->add_option("--arithmetic", arithmetic, "Override arithmetic: rational or float")
      ->check(CLI::IsMember({"rational", "float"}));
  run->add_option("--seed", seed, "Override the scenario seed")
      ->each([&](const std::string&) { has_seed = true; });
  run->add_option("--atom-grid", atom_grid,
                  "Override counterfactual atom families, as lo:hi:step");
  run->add_flag("--quiet", quiet, "Suppress the artifact listing on stdout");

  CLI::App* validate =
      app.add_subcommand("validate", "Parse and validate a scenario without running it");
  validate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  validate->add_option("--arithmetic", arithmetic, "Override arithmetic: rational or float")
      ->check(CLI::IsMember({"rational", "float"}));

  CLI::App* schema = app.add_subcommand("schema", "Print the scenario JSON schema");

  CLI11_PARSE(app, argc, argv);

  arum_scenario_options options{};
  options.output_dir = output_dir.empty() ? nullptr : output_dir.c_str();
  options.arithmetic = arithmetic.empty() ? nullptr : arithmetic.c_str();
  options.atom_grid = atom_grid.empty() ? nullptr : atom_grid.c_str();
  options.has_seed = has_seed ? 1 : 0;
  options.seed = seed;

  if (run->parsed()) {
    char* summary = nullptr;
    arum_status status = arum_scenario_run(scenario_path.c_str(), &options, &summary);
    if (status != ARUM_OK) return fail(status);
    if (!quiet && summary) std::fputs(summary, stdout);
    arum_string_free(summary);
    return 0;
  }
  if (validate->parsed()) {
    arum_status status = arum_scenario_validate(scenario_path.c_str(), &options);
    if (status != ARUM_OK) return fail(status);
    std::printf("ok: %s\n", scenario_path.c_str());
    return 0;
  }
  if (schema->parsed()) {
    char* text = nullptr;
    arum_status status = arum_scenario_schema(&text);
    if (status != ARUM_OK) return fail(status);
    std::fputs(text, stdout);
    arum_string_free(text);
    return 0;
  }
  return 0;
}
