#include "arum/arum.h"

#include <cstring>
#include <new>
#include <string>

#include "arum/attention.hpp"
#include "arum/engine.hpp"
#include "arum/gumbel.hpp"
#include "arum/identification.hpp"
#include "arum/model_json.hpp"
#include "arum/monte_carlo.hpp"
#include "arum/scenario.hpp"
#include "arum/version.hpp"
#include "arum/welfare.hpp"

// Handles hold the float backend; exact results are reachable through
// rational-mode scenario artifacts.
struct arum_model {
  arum::Model<double> model;
};

struct arum_grid {
  arum::UtilityGrid<double> grid;
};

struct arum_field {
  arum::ChoiceProbField<double> field;
};

namespace {

thread_local std::string t_last_error;

arum_status to_status(const arum::Error& e) {
  t_last_error = e.what();
  return static_cast<arum_status>(static_cast<int>(e.code()));
}

template <class Fn>
arum_status guarded(Fn&& fn) {
  try {
    fn();
    return ARUM_OK;
  } catch (const arum::Error& e) {
    return to_status(e);
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return ARUM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return ARUM_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

arum::UtilityPoint<double> point_from(const double* u, int dim) {
  if (u == nullptr) throw arum::InvalidArgumentError("null utility pointer");
  return arum::UtilityPoint<double>(u, u + dim);
}

arum::RunOptions run_options_from(const arum_scenario_options* options) {
  arum::RunOptions ro;
  if (options) {
    if (options->output_dir) ro.output_dir = options->output_dir;
    if (options->arithmetic) ro.arithmetic = options->arithmetic;
    if (options->atom_grid) ro.atom_grid = options->atom_grid;
    if (options->has_seed) ro.seed = options->seed;
  }
  if (const char* env = std::getenv("ARUM_OUTPUT_DIR")) ro.fallback_output_dir = env;
  return ro;
}

}  // namespace

extern "C" {

const char* arum_version(void) { return ARUM_VERSION_STRING; }

const char* arum_status_name(arum_status status) {
  switch (status) {
    case ARUM_OK: return "ok";
    case ARUM_ERR_INTERNAL: return "internal";
    case ARUM_ERR_PARSE: return "parse_error";
    case ARUM_ERR_VALIDATION: return "validation_error";
    case ARUM_ERR_ARGMAX_TIE: return "argmax_tie";
    case ARUM_ERR_INFEASIBLE: return "infeasible";
    case ARUM_ERR_NO_K_MAXIMAL: return "no_k_maximal_point";
    case ARUM_ERR_FULL_CONSIDERATION: return "full_consideration";
    case ARUM_ERR_NOT_CARTESIAN: return "not_cartesian_product";
    case ARUM_ERR_UNSUPPORTED_ANALYSIS: return "unsupported_analysis";
    case ARUM_ERR_IO: return "io_error";
    case ARUM_ERR_INVALID_ARGUMENT: return "invalid_argument";
  }
  return "unknown";
}

size_t arum_last_error(char* buf, size_t cap) {
  if (buf && cap > 0) {
    size_t n = t_last_error.size() < cap - 1 ? t_last_error.size() : cap - 1;
    std::memcpy(buf, t_last_error.data(), n);
    buf[n] = '\0';
  }
  return t_last_error.size();
}

void arum_string_free(char* s) { delete[] s; }

arum_status arum_model_parse_json(const char* json_text, arum_model** out) {
  return guarded([&] {
    if (!json_text || !out) throw arum::InvalidArgumentError("null argument");
    arum::Json j = arum::parse_json_text(json_text, "model");
    *out = new arum_model{arum::model_from_json<double>(j)};
  });
}

arum_status arum_model_load_file(const char* path, arum_model** out) {
  return guarded([&] {
    if (!path || !out) throw arum::InvalidArgumentError("null argument");
    *out = new arum_model{arum::load_model_file<double>(path)};
  });
}

arum_status arum_model_to_json(const arum_model* model, char** json_out) {
  return guarded([&] {
    if (!model || !json_out) throw arum::InvalidArgumentError("null argument");
    *json_out = dup_string(arum::model_to_json(model->model).dump(2) + "\n");
  });
}

void arum_model_free(arum_model* model) { delete model; }

int arum_model_alternatives(const arum_model* model) {
  return model ? arum::model_alternatives(model->model) : 0;
}

arum_status arum_model_consideration_prob(const arum_model* model, int k, double* out) {
  return guarded([&] {
    if (!model || !out) throw arum::InvalidArgumentError("null argument");
    *out = arum::consideration_prob_of(model->model, k);
  });
}

arum_status arum_grid_create(int dim, size_t n_points, const double* coords, arum_grid** out) {
  return guarded([&] {
    if (!coords || !out) throw arum::InvalidArgumentError("null argument");
    std::vector<arum::UtilityPoint<double>> pts;
    pts.reserve(n_points);
    for (size_t i = 0; i < n_points; ++i)
      pts.emplace_back(coords + i * dim, coords + (i + 1) * dim);
    *out = new arum_grid{arum::UtilityGrid<double>(dim, std::move(pts))};
  });
}

arum_status arum_grid_rect(int dim, const double* lo, const double* hi, const double* step,
                           arum_grid** out) {
  return guarded([&] {
    if (!lo || !hi || !step || !out) throw arum::InvalidArgumentError("null argument");
    std::vector<std::vector<double>> axes;
    for (int d = 0; d < dim; ++d)
      axes.push_back(arum::UtilityGrid<double>::axis_from_spec({lo[d], hi[d], step[d]}));
    *out = new arum_grid{arum::UtilityGrid<double>::rectangular(axes)};
  });
}

void arum_grid_free(arum_grid* grid) { delete grid; }

int arum_grid_dim(const arum_grid* grid) { return grid ? grid->grid.dim() : 0; }

size_t arum_grid_size(const arum_grid* grid) { return grid ? grid->grid.size() : 0; }

arum_status arum_choice_prob(const arum_model* model, const double* u, double* probs_out) {
  return guarded([&] {
    if (!model || !probs_out) throw arum::InvalidArgumentError("null argument");
    auto p = arum::choice_prob(model->model, point_from(u, arum::model_alternatives(model->model)));
    for (int k = 0; k < p.size(); ++k) probs_out[k] = p[k];
  });
}

arum_status arum_social_surplus(const arum_model* model, const double* u, double* out) {
  return guarded([&] {
    if (!model || !out) throw arum::InvalidArgumentError("null argument");
    *out = arum::social_surplus(model->model, point_from(u, arum::model_alternatives(model->model)));
  });
}

arum_status arum_field_compute(const arum_model* model, const arum_grid* grid, arum_field** out) {
  return guarded([&] {
    if (!model || !grid || !out) throw arum::InvalidArgumentError("null argument");
    *out = new arum_field{arum::choice_prob_field(model->model, grid->grid)};
  });
}

void arum_field_free(arum_field* field) { delete field; }

arum_status arum_field_prob(const arum_field* field, size_t point_index, int k, double* out) {
  return guarded([&] {
    if (!field || !out) throw arum::InvalidArgumentError("null argument");
    if (point_index >= field->field.grid().size())
      throw arum::InvalidArgumentError("point index out of range");
    if (k < 0 || k >= field->field.num_alternatives())
      throw arum::InvalidArgumentError("alternative index out of range");
    *out = field->field.at(point_index)[k];
  });
}

arum_status arum_gumbel_choice_prob(int dim, const double* u, double* probs_out) {
  return guarded([&] {
    if (!probs_out) throw arum::InvalidArgumentError("null argument");
    auto p = arum::gumbel_choice_prob(point_from(u, dim));
    for (size_t k = 0; k < p.size(); ++k) probs_out[k] = p[k];
  });
}

arum_status arum_monte_carlo_choice_prob(const arum_model* model, const double* u, uint64_t n,
                                         uint64_t seed, double* probs_out, double* stderr_out) {
  return guarded([&] {
    if (!model || !probs_out || !stderr_out) throw arum::InvalidArgumentError("null argument");
    auto est = arum::monte_carlo_choice_prob(
        model->model, point_from(u, arum::model_alternatives(model->model)), n, seed);
    for (size_t k = 0; k < est.probs.size(); ++k) {
      probs_out[k] = est.probs[k];
      stderr_out[k] = est.se[k];
    }
  });
}

arum_status arum_consideration_identified_set(const arum_field* field, int k, double* lo_out,
                                              double* hi_out, int* sharp_out) {
  return guarded([&] {
    if (!field || !lo_out || !hi_out || !sharp_out)
      throw arum::InvalidArgumentError("null argument");
    auto rep = arum::consideration_identified_set(field->field, k);
    *lo_out = rep.interval.lo;
    *hi_out = rep.interval.hi;
    *sharp_out = rep.sharp ? 1 : 0;
  });
}

arum_status arum_attention_change_bounds(const arum_field* field, int k, double* lo_out,
                                         double* hi_out) {
  return guarded([&] {
    if (!field || !lo_out || !hi_out) throw arum::InvalidArgumentError("null argument");
    auto rep = arum::attention_max_change_set(
        field->field, k, std::optional<arum::ArumCsDistribution<double>>());
    *lo_out = rep.lower;
    *hi_out = rep.upper;
  });
}

arum_status arum_welfare_change(const arum_model* model, const double* u, const double* u_tilde,
                                int panels, double* out) {
  return guarded([&] {
    if (!model || !out) throw arum::InvalidArgumentError("null argument");
    int dim = arum::model_alternatives(model->model);
    *out = arum::welfare_change_path_integral(model->model, point_from(u, dim),
                                              point_from(u_tilde, dim), panels);
  });
}

arum_status arum_envelope_check(const arum_model* model, const double* u, double h,
                                double* max_deviation_out) {
  return guarded([&] {
    if (!model || !max_deviation_out) throw arum::InvalidArgumentError("null argument");
    int dim = arum::model_alternatives(model->model);
    *max_deviation_out = arum::envelope_deviation(model->model, point_from(u, dim), h);
  });
}

arum_status arum_scenario_run(const char* path, const arum_scenario_options* options,
                              char** summary_json_out) {
  return guarded([&] {
    if (!path) throw arum::InvalidArgumentError("null path");
    arum::RunSummary summary = arum::run_scenario(path, run_options_from(options));
    if (summary_json_out)
      *summary_json_out = dup_string(arum::run_summary_json(summary).dump(2) + "\n");
  });
}

arum_status arum_scenario_validate(const char* path, const arum_scenario_options* options) {
  return guarded([&] {
    if (!path) throw arum::InvalidArgumentError("null path");
    arum::validate_scenario_file(path, run_options_from(options));
  });
}

arum_status arum_scenario_schema(char** schema_json_out) {
  return guarded([&] {
    if (!schema_json_out) throw arum::InvalidArgumentError("null argument");
    *schema_json_out = dup_string(arum::scenario_schema_text());
  });
}

}  // extern "C"
