#include "arum/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "arum/attention.hpp"
#include "arum/hash.hpp"
#include "arum/reports.hpp"
#include "arum/version.hpp"
#include "arum/welfare.hpp"

namespace arum {

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Scenario document

struct AnalysisSpec {
  std::string type;
  Json params;
};

struct ScenarioDoc {
  std::string name;
  std::string documentation;
  Arithmetic arithmetic = Arithmetic::Rational;
  std::uint64_t seed = 0;
  std::optional<Json> model_json;
  std::optional<std::string> model_file;  // resolved against the scenario dir
  std::optional<Json> field_json;
  std::optional<Json> grid_json;
  std::optional<std::string> output_dir;
  std::vector<AnalysisSpec> analyses;
};

const std::set<std::string> kAnalysisTypes = {"equivalence",    "identify", "discontinuity",
                                              "counterfactual", "attention", "welfare",
                                              "diagnostics"};

Arithmetic parse_arithmetic(const std::string& s) {
  if (s == "rational") return Arithmetic::Rational;
  if (s == "float") return Arithmetic::Float;
  throw ValidationError("arithmetic must be 'rational' or 'float', got '" + s + "'");
}

ScenarioDoc parse_scenario(const Json& j, const fs::path& scenario_dir, const RunOptions& options) {
  if (!j.is_object()) throw ParseError("scenario: expected a JSON object");
  if (j.contains("schema_version") && j.at("schema_version") != 1)
    throw ValidationError("scenario: unsupported schema_version");

  ScenarioDoc doc;
  if (!j.contains("name") || !j.at("name").is_string())
    throw ValidationError("scenario: missing string field 'name'");
  doc.name = j.at("name").get<std::string>();
  if (j.contains("documentation")) doc.documentation = j.at("documentation").get<std::string>();

  std::string arith = "rational";
  if (j.contains("arithmetic")) arith = j.at("arithmetic").get<std::string>();
  if (options.arithmetic) arith = *options.arithmetic;
  doc.arithmetic = parse_arithmetic(arith);

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      throw ValidationError("scenario: 'seed' must be an unsigned integer");
    doc.seed = j.at("seed").get<std::uint64_t>();
  }
  if (options.seed) doc.seed = *options.seed;

  int sources = 0;
  if (j.contains("model")) {
    doc.model_json = j.at("model");
    ++sources;
  }
  if (j.contains("model_file")) {
    doc.model_file = (scenario_dir / j.at("model_file").get<std::string>()).string();
    ++sources;
  }
  if (j.contains("field")) {
    doc.field_json = j.at("field");
    ++sources;
  }
  if (sources != 1)
    throw ValidationError("scenario: exactly one of 'model', 'model_file', 'field' is required");

  if (j.contains("grid")) doc.grid_json = j.at("grid");
  if (doc.field_json && doc.grid_json)
    throw ValidationError("scenario: 'grid' is not allowed with an inline 'field' (the field carries its own grid)");
  if (!doc.field_json && !doc.grid_json)
    throw ValidationError("scenario: 'grid' is required with a model input");

  if (j.contains("output_dir")) doc.output_dir = j.at("output_dir").get<std::string>();

  if (!j.contains("analyses") || !j.at("analyses").is_array() || j.at("analyses").empty())
    throw ValidationError("scenario: 'analyses' must be a nonempty array");
  for (const auto& ja : j.at("analyses")) {
    if (!ja.is_object() || !ja.contains("type") || !ja.at("type").is_string())
      throw ValidationError("scenario: each analysis needs a string 'type'");
    AnalysisSpec spec;
    spec.type = ja.at("type").get<std::string>();
    if (!kAnalysisTypes.count(spec.type))
      throw ValidationError("scenario: unknown analysis type '" + spec.type + "'");
    spec.params = ja;
    doc.analyses.push_back(std::move(spec));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Prepared inputs

template <class T>
struct Prepared {
  std::optional<Model<T>> model;
  std::optional<UtilityGrid<T>> grid;
  std::optional<ChoiceProbField<T>> inline_field;
};

template <class T>
Prepared<T> prepare(const ScenarioDoc& doc) {
  Prepared<T> prep;
  if (doc.model_json) prep.model = model_from_json<T>(*doc.model_json);
  if (doc.model_file) prep.model = load_model_file<T>(*doc.model_file);
  if (doc.field_json) {
    prep.inline_field = field_from_json<T>(*doc.field_json);
    prep.grid = prep.inline_field->grid();
  }
  if (doc.grid_json) prep.grid = grid_from_json<T>(*doc.grid_json);
  if (prep.model && prep.grid && model_alternatives(*prep.model) != prep.grid->dim())
    throw ValidationError("scenario: grid dimension does not match the model");
  return prep;
}

// ---------------------------------------------------------------------------
// Class representations used by equivalence and welfare routes

template <class T>
ArumCsDistribution<T> as_cs(const Model<T>& m) {
  if (const auto* cs = std::get_if<ArumCsDistribution<T>>(&m)) return *cs;
  if (const auto* e = std::get_if<ArumEDistribution<T>>(&m)) return arum_e_to_cs(*e);
  const auto& a = std::get<ArumDistribution<T>>(m);
  std::vector<ConsiderationAtom<T>> atoms;
  std::vector<int> full(static_cast<std::size_t>(a.num_alternatives()));
  for (int i = 0; i < a.num_alternatives(); ++i) full[static_cast<std::size_t>(i)] = i;
  for (const auto& atom : a.atoms()) {
    ConsiderationAtom<T> ca;
    for (const auto& e : atom.eps) ca.eps.push_back(e.value());
    ca.consideration = full;
    ca.weight = atom.weight;
    atoms.push_back(std::move(ca));
  }
  return ArumCsDistribution<T>(std::move(atoms), "arum_to_cs(" + model_digest(a) + ")");
}

template <class T>
ArumEDistribution<T> as_arum_e(const Model<T>& m) {
  if (const auto* e = std::get_if<ArumEDistribution<T>>(&m)) return *e;
  if (const auto* cs = std::get_if<ArumCsDistribution<T>>(&m)) return cs_to_arum_e(*cs);
  const auto& a = std::get<ArumDistribution<T>>(m);
  return ArumEDistribution<T>(a.atoms(), "arum_to_arum_e(" + model_digest(a) + ")");
}

template <class T>
ArumDistribution<T> as_arum(const Model<T>& m, const UtilityGrid<T>& grid) {
  if (const auto* a = std::get_if<ArumDistribution<T>>(&m)) return *a;
  return cs_to_arum(as_cs(m), grid);
}

template <class T>
Model<double> model_to_double(const Model<T>& m) {
  if constexpr (std::is_same_v<T, double>) {
    return m;
  } else {
    return std::visit(
        [&]<class D>(const D& dist) -> Model<double> {
          if constexpr (std::is_same_v<D, ArumCsDistribution<T>>) {
            std::vector<ConsiderationAtom<double>> atoms;
            for (const auto& a : dist.atoms()) {
              ConsiderationAtom<double> da;
              for (const auto& e : a.eps) da.eps.push_back(scalar_traits<T>::to_double(e));
              da.consideration = a.consideration;
              da.weight = scalar_traits<T>::to_double(a.weight);
              atoms.push_back(std::move(da));
            }
            return Model<double>(ArumCsDistribution<double>(std::move(atoms)));
          } else {
            std::vector<EpsilonAtom<double>> atoms;
            for (const auto& a : dist.atoms()) {
              EpsilonAtom<double> da;
              for (const auto& e : a.eps)
                da.eps.push_back(e.is_finite()
                                     ? ExtendedReal<double>::finite(scalar_traits<T>::to_double(e.value()))
                                     : ExtendedReal<double>::neg_infinity());
              da.weight = scalar_traits<T>::to_double(a.weight);
              atoms.push_back(std::move(da));
            }
            if constexpr (std::is_same_v<D, ArumDistribution<T>>)
              return Model<double>(ArumDistribution<double>(std::move(atoms)));
            else
              return Model<double>(ArumEDistribution<double>(std::move(atoms)));
          }
        },
        m);
  }
}

// ---------------------------------------------------------------------------
// Shared parameter helpers

int require_k(const Json& params, int num_alternatives) {
  if (!params.contains("k") || !params.at("k").is_number_integer())
    throw ValidationError("analysis '" + params.value("type", "?") + "': missing integer 'k'");
  int k = params.at("k").get<int>();
  if (k < 0 || k >= num_alternatives)
    throw ValidationError("analysis: 'k' out of range [0, " + std::to_string(num_alternatives) + ")");
  return k;
}

template <class T>
UtilityPoint<T> point_param(const Json& params, const char* name, int dim) {
  const Json& v = params.at(name);
  if (!v.is_array() || static_cast<int>(v.size()) != dim)
    throw ValidationError(std::string("analysis: '") + name + "' must be an array of length " +
                          std::to_string(dim));
  UtilityPoint<T> p;
  for (const auto& x : v) p.push_back(scalar_from_json<T>(x, name));
  return p;
}

std::string bool_cell(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// Analyses

template <class T>
AnalysisOutput run_equivalence(const Prepared<T>& prep, const ChoiceProbField<T>&, const Json& params) {
  if (!prep.model) throw ValidationError("equivalence analysis requires a model input");
  const UtilityGrid<T>& grid = *prep.grid;
  T tol = params.contains("tol") ? scalar_from_json<T>(params.at("tol"), "tol")
                                 : (scalar_traits<T>::exact ? T(0) : scalar_traits<T>::from_double(1e-12));

  const Model<T>& base = *prep.model;
  std::vector<std::pair<std::string, Model<T>>> images;
  const char* base_name = model_class_name(model_class(base));
  images.emplace_back(std::string(base_name) + "~arum_cs", Model<T>(as_cs(base)));
  images.emplace_back(std::string(base_name) + "~arum_e", Model<T>(as_arum_e(base)));
  images.emplace_back(std::string(base_name) + "~arum", Model<T>(as_arum(base, grid)));

  CsvBuilder csv;
  csv.row({"pair", "point_index", "point", "discrepancy"});
  Json jpairs = Json::array();
  bool all_pass = true;
  T worst(0);
  for (const auto& [name, image] : images) {
    EquivalenceReport<T> rep = verify_equivalence(base, image, grid, tol);
    for (std::size_t i = 0; i < grid.size(); ++i)
      csv.row({name, std::to_string(i), cells_joined(grid[i]),
               scalar_traits<T>::str(rep.discrepancy[i])});
    Json jp = equivalence_report_json(rep, name);
    std::visit([&](const auto& dist) { jp["image_provenance"] = dist.provenance(); }, image);
    jpairs.push_back(std::move(jp));
    all_pass = all_pass && rep.pass;
    if (rep.max_discrepancy > worst) worst = rep.max_discrepancy;
  }

  AnalysisOutput out;
  out.type = "equivalence";
  out.csv = csv.str();
  out.json["schema_version"] = 1;
  out.json["analysis"] = "equivalence";
  out.json["tolerance"] = scalar_to_json(tol);
  out.json["pass"] = all_pass;
  out.json["max_discrepancy"] = scalar_to_json(worst);
  out.json["pairs"] = std::move(jpairs);
  return out;
}

template <class T>
AnalysisOutput run_identify(const Prepared<T>& prep, const ChoiceProbField<T>& field,
                            const Json& params) {
  std::vector<int> ks;
  if (params.contains("k")) {
    ks.push_back(require_k(params, field.num_alternatives()));
  } else {
    for (int k = 0; k < field.num_alternatives(); ++k) ks.push_back(k);
  }

  CsvBuilder csv;
  csv.row({"k", "sup_pk", "argmax_point", "lo", "hi", "sharp", "k_maximal_found",
           "lower_matches_sup", "consideration_prob"});
  Json jrows = Json::array();
  for (int k : ks) {
    ConsiderationBoundsReport<T> rep = consideration_identified_set(field, k);
    std::string consid;
    Json jr = consideration_report_json(rep);
    if (prep.model) {
      T c = consideration_prob_of(*prep.model, k);
      consid = scalar_traits<T>::str(c);
      jr["consideration_prob"] = scalar_to_json(c);
    }
    csv.row({std::to_string(k), scalar_traits<T>::str(rep.sup_pk), cells_joined(rep.argmax_point),
             scalar_traits<T>::str(rep.interval.lo), scalar_traits<T>::str(rep.interval.hi),
             bool_cell(rep.sharp), bool_cell(rep.k_maximal_found),
             bool_cell(rep.lower_matches_sup), consid});
    jrows.push_back(std::move(jr));
  }

  AnalysisOutput out;
  out.type = "identify";
  out.csv = csv.str();
  out.json["schema_version"] = 1;
  out.json["analysis"] = "identify";
  out.json["reports"] = std::move(jrows);
  return out;
}

template <class T>
AnalysisOutput run_discontinuity(const Prepared<T>& prep, const ChoiceProbField<T>&,
                                 const Json& params) {
  if (!prep.model) throw ValidationError("discontinuity analysis requires a model input");
  const int dim = model_alternatives(*prep.model);
  int k = require_k(params, dim);

  std::vector<UtilityGrid<T>> rects;
  std::vector<std::string> labels;
  if (params.contains("scales")) {
    if (!params.at("scales").is_array() || params.at("scales").empty())
      throw ValidationError("discontinuity: 'scales' must be a nonempty array");
    int pps = params.value("points_per_side", 2);
    if (pps < 2) throw ValidationError("discontinuity: 'points_per_side' must be >= 2");
    for (const auto& js : params.at("scales")) {
      T s = scalar_from_json<T>(js, "scale");
      if (!(s > T(0))) throw ValidationError("discontinuity: scales must be positive");
      std::vector<T> axis;
      T step = (T(2) * s) / scalar_traits<T>::from_int(pps - 1);
      for (int i = 0; i < pps; ++i) axis.push_back(-s + scalar_traits<T>::from_int(i) * step);
      rects.push_back(UtilityGrid<T>::rectangular(std::vector<std::vector<T>>(
          static_cast<std::size_t>(dim), axis)));
      labels.push_back(scalar_traits<T>::str(s));
    }
  } else if (params.contains("rects")) {
    for (const auto& jg : params.at("rects")) {
      rects.push_back(grid_from_json<T>(jg));
      labels.push_back(std::to_string(labels.size()));
    }
  } else {
    throw ValidationError("discontinuity: expected 'scales' or 'rects'");
  }

  std::vector<DiscontinuityRow<T>> rows = discontinuity_experiment(*prep.model, rects, k);

  CsvBuilder csv;
  csv.row({"scale", "grid_size", "sup_pk", "width"});
  CsvBuilder plot;
  plot.row({"scale", "sup_pk", "width"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv.row({labels[i], std::to_string(rows[i].grid_size), scalar_traits<T>::str(rows[i].sup_pk),
             scalar_traits<T>::str(rows[i].width)});
    plot.row({labels[i], scalar_traits<T>::str(rows[i].sup_pk), scalar_traits<T>::str(rows[i].width)});
  }

  AnalysisOutput out;
  out.type = "discontinuity";
  out.csv = csv.str();
  out.json["schema_version"] = 1;
  out.json["analysis"] = "discontinuity";
  out.json["k"] = k;
  out.json["consideration_prob"] = scalar_to_json(consideration_prob_of(*prep.model, k));
  Json jrows = discontinuity_rows_json(rows);
  for (std::size_t i = 0; i < rows.size(); ++i) jrows[i]["scale"] = labels[i];
  out.json["rows"] = std::move(jrows);
  out.plot_csv = plot.str();
  return out;
}

std::vector<std::vector<Rational>> axis_values_for(const AxisSpec<Rational>& spec, int dim) {
  std::vector<Rational> axis = UtilityGrid<Rational>::axis_from_spec(spec);
  return std::vector<std::vector<Rational>>(static_cast<std::size_t>(dim), axis);
}

template <class T>
ChoiceProbField<Rational> field_to_rational(const ChoiceProbField<T>& field) {
  if constexpr (std::is_same_v<T, Rational>) {
    return field;
  } else {
    std::vector<UtilityPoint<Rational>> pts;
    for (const auto& p : field.grid().points()) {
      UtilityPoint<Rational> rp;
      for (double v : p) rp.push_back(rational_from_double(v));
      pts.push_back(std::move(rp));
    }
    UtilityGrid<Rational> grid(field.grid().dim(), std::move(pts));
    std::vector<SimplexVector<Rational>> probs;
    for (std::size_t i = 0; i < field.grid().size(); ++i) {
      std::vector<Rational> row;
      T total(0);
      for (int k = 0; k < field.num_alternatives(); ++k) total += field.at(i)[k];
      // Exact lift of a float field: renormalize the last coordinate so the
      // rational rows sum to exactly 1.
      Rational sum(0);
      for (int k = 0; k < field.num_alternatives(); ++k) {
        Rational v = rational_from_double(field.at(i)[k]);
        if (k + 1 == field.num_alternatives()) v = Rational(1) - sum;
        sum += v;
        row.push_back(std::move(v));
      }
      probs.push_back(SimplexVector<Rational>(std::move(row)));
    }
    return ChoiceProbField<Rational>(std::move(grid), std::move(probs));
  }
}

template <class T>
AnalysisOutput run_counterfactual(const Prepared<T>&, const ChoiceProbField<T>& field,
                                  const Json& params, const RunOptions& options) {
  int k = require_k(params, field.num_alternatives());
  if (!params.contains("u_c")) throw ValidationError("counterfactual: missing 'u_c'");
  std::string axis_text;
  if (options.atom_grid) {
    axis_text = *options.atom_grid;
  } else if (params.contains("atom_grid")) {
    axis_text = params.at("atom_grid").get<std::string>();
  } else {
    throw ValidationError("counterfactual: missing 'atom_grid' (lo:hi:step)");
  }
  AxisSpec<Rational> axis = parse_axis_spec(axis_text);

  std::vector<ModelClass> classes;
  if (params.contains("model_class")) {
    const std::string c = params.at("model_class").get<std::string>();
    if (c == "arum") classes.push_back(ModelClass::Arum);
    else if (c == "arum_e") classes.push_back(ModelClass::ArumE);
    else if (c == "arum_cs") classes.push_back(ModelClass::ArumCs);
    else throw ValidationError("counterfactual: unknown model_class '" + c + "'");
  } else {
    classes = {ModelClass::Arum, ModelClass::ArumE, ModelClass::ArumCs};
  }

  // The LP always runs exactly; float inputs are lifted to rationals.
  ChoiceProbField<Rational> rfield = field_to_rational(field);
  UtilityGrid<Rational> rgrid = rfield.grid();
  UtilityPoint<Rational> u_c = point_param<Rational>(params, "u_c", rgrid.dim());

  CsvBuilder csv;
  csv.row({"model_class", "k", "u_c", "lo", "hi", "family_size"});
  Json jruns = Json::array();
  for (ModelClass cls : classes) {
    std::vector<CandidateAtom> family =
        make_rect_atom_family(axis_values_for(axis, rgrid.dim()), cls, rgrid, u_c);
    if (family.empty())
      throw ValidationError(
          "counterfactual: every '" + axis_text +
          "' atom ties at some grid point; pick atom values whose pairwise differences avoid "
          "the grid's utility differences");
    LpCounterfactualProblem problem(rgrid, rfield, u_c, std::move(family), cls);
    LpBoundsResult bounds = lp_counterfactual_bounds(problem, k);
    csv.row({model_class_name(cls), std::to_string(k), cells_joined(u_c),
             rational_to_string(bounds.interval.lo), rational_to_string(bounds.interval.hi),
             std::to_string(problem.family().size())});
    Json jr;
    jr["model_class"] = model_class_name(cls);
    jr["k"] = k;
    jr["atom_grid"] = axis_text;
    jr["problem"] = lp_problem_json(problem);
    jr["bounds"] = lp_bounds_json(bounds);
    jruns.push_back(std::move(jr));
  }

  AnalysisOutput out;
  out.type = "counterfactual";
  out.csv = csv.str();
  out.json["schema_version"] = 1;
  out.json["analysis"] = "counterfactual";
  out.json["runs"] = std::move(jruns);
  return out;
}

template <class T>
AnalysisOutput run_attention(const Prepared<T>& prep, const ChoiceProbField<T>& field,
                             const Json& params) {
  int k = require_k(params, field.num_alternatives());
  std::optional<ArumCsDistribution<T>> nu;
  if (prep.model && model_class(*prep.model) == ModelClass::ArumCs)
    nu = std::get<ArumCsDistribution<T>>(*prep.model);
  AttentionChangeReport<T> rep = attention_max_change_set(field, k, nu);

  CsvBuilder csv;
  csv.row({"k", "sup_pk", "lower", "upper", "realized_max_change"});
  csv.row({std::to_string(k), scalar_traits<T>::str(rep.sup_pk), scalar_traits<T>::str(rep.lower),
           scalar_traits<T>::str(rep.upper),
           rep.realized_max_change ? scalar_traits<T>::str(*rep.realized_max_change) : ""});

  AnalysisOutput out;
  out.type = "attention";
  out.csv = csv.str();
  out.json["schema_version"] = 1;
  out.json["analysis"] = "attention";
  out.json["k"] = k;
  out.json["sup_pk"] = scalar_to_json(rep.sup_pk);
  out.json["interval"] =
      Json{{"lo", scalar_to_json(rep.lower)}, {"hi", scalar_to_json(rep.upper)}};
  if (rep.witness) {
    out.json["witness"] = model_to_json(Model<T>(*rep.witness));
    out.json["realized_max_change"] = scalar_to_json(*rep.realized_max_change);
    Json jc = Json::array();
    for (const auto& d : rep.per_point_change) jc.push_back(scalar_to_json(d));
    out.json["per_point_change"] = std::move(jc);

    CsvBuilder plot;
    plot.row({"point_index", "point", "change"});
    for (std::size_t i = 0; i < field.grid().size(); ++i)
      plot.row({std::to_string(i), cells_joined(field.grid()[i]),
                scalar_traits<T>::str(rep.per_point_change[i])});
    out.plot_csv = plot.str();
  }
  return out;
}

template <class T>
AnalysisOutput run_welfare(const Prepared<T>& prep, const ChoiceProbField<T>& field,
                           const Json& params) {
  const UtilityGrid<T>& grid = field.grid();
  const int dim = field.num_alternatives();

  CsvBuilder csv;
  csv.row({"part", "u", "u_tilde", "k", "c", "h", "panels", "delta_path", "delta_exact",
           "route_spread", "set_kind", "gamma", "shift", "achieved_gain", "gain_lower_bound",
           "field_unchanged", "max_envelope_deviation"});

  AnalysisOutput out;
  out.type = "welfare";
  out.json["schema_version"] = 1;
  out.json["analysis"] = "welfare";

  const bool has_path = params.contains("u_tilde");
  const bool has_envelope = params.contains("envelope_h");
  const bool has_attention = params.contains("k");
  if (!has_path && !has_envelope && !has_attention)
    throw ValidationError("welfare: expected 'u_tilde' (path), 'envelope_h', and/or 'k'");
  if ((has_path || has_envelope) && !params.contains("u"))
    throw ValidationError("welfare: 'u' is required for path/envelope parts");
  if ((has_path || has_envelope) && !prep.model)
    throw ValidationError("welfare: path and envelope parts require a model input");

  if (has_path) {
    UtilityPoint<T> u = point_param<T>(params, "u", dim);
    UtilityPoint<T> ut = point_param<T>(params, "u_tilde", dim);
    int panels = params.value("panels", 64);
    if (panels < 1) throw ValidationError("welfare: 'panels' must be >= 1");

    T delta_exact = welfare_change_exact(*prep.model, u, ut);

    // Representation routes: the same field evaluated through the three model
    // classes. The classic representation is built over the grid augmented
    // with the path endpoints so it reproduces the field on the whole
    // segment.
    std::vector<UtilityPoint<T>> aug = grid.points();
    for (const auto& p : {u, ut})
      if (std::find(aug.begin(), aug.end(), p) == aug.end()) aug.push_back(p);
    UtilityGrid<T> aug_grid(grid.dim(), std::move(aug));

    Model<double> route_cs(model_to_double(Model<T>(as_cs(*prep.model))));
    Model<double> route_e(model_to_double(Model<T>(as_arum_e(*prep.model))));
    Model<double> route_arum(model_to_double(Model<T>(as_arum(*prep.model, aug_grid))));

    UtilityPoint<double> du, dut;
    for (const auto& v : u) du.push_back(scalar_traits<T>::to_double(v));
    for (const auto& v : ut) dut.push_back(scalar_traits<T>::to_double(v));

    double d_cs = welfare_change_path_integral(route_cs, du, dut, panels);
    double d_e = welfare_change_path_integral(route_e, du, dut, panels);
    double d_arum = welfare_change_path_integral(route_arum, du, dut, panels);
    double spread = std::max({d_cs, d_e, d_arum}) - std::min({d_cs, d_e, d_arum});

    csv.row({"path", cells_joined(u), cells_joined(ut), "", "", "", std::to_string(panels),
             double_to_string(d_cs), scalar_traits<T>::str(delta_exact), double_to_string(spread),
             "", "", "", "", "", "", ""});

    Json jp;
    jp["u"] = Json::array();
    for (const auto& v : u) jp["u"].push_back(scalar_to_json(v));
    jp["u_tilde"] = Json::array();
    for (const auto& v : ut) jp["u_tilde"].push_back(scalar_to_json(v));
    jp["panels"] = panels;
    jp["delta_path"] = d_cs;
    jp["delta_exact"] = scalar_to_json(delta_exact);
    jp["delta_route_arum_cs"] = d_cs;
    jp["delta_route_arum_e"] = d_e;
    jp["delta_route_arum"] = d_arum;
    jp["route_spread"] = spread;
    out.json["path"] = std::move(jp);

    // Plot: integrand p(t).(u_tilde - u) at panels+1 samples. The integrand is
    // undefined exactly on a kink (an atom ties there), so samples landing on
    // one are nudged into the open segment to its right.
    Model<double> dmodel = model_to_double(*prep.model);
    std::vector<double> kinks = path_kinks(dmodel, du, dut);
    std::vector<double> diff(du.size());
    for (std::size_t j = 0; j < du.size(); ++j) diff[j] = dut[j] - du[j];
    CsvBuilder plot;
    plot.row({"t", "integrand"});
    for (int i = 0; i <= panels; ++i) {
      double t = (static_cast<double>(i) + 0.5) / (panels + 1);
      double nudge = 1.0 / ((panels + 1) * 1048576.0);
      while (std::binary_search(kinks.begin(), kinks.end(), t)) {
        t += nudge;
        nudge *= 0.5;
      }
      std::vector<double> pt(du.size());
      for (std::size_t j = 0; j < du.size(); ++j) pt[j] = du[j] + t * diff[j];
      SimplexVector<double> p = choice_prob(dmodel, pt);
      double integrand = 0.0;
      for (std::size_t j = 0; j < du.size(); ++j)
        integrand += p[static_cast<int>(j)] * diff[j];
      plot.row({double_to_string(t), double_to_string(integrand)});
    }
    out.plot_csv = plot.str();
  }

  if (has_envelope) {
    if (!prep.model) throw ValidationError("welfare: envelope part requires a model input");
    UtilityPoint<T> u = point_param<T>(params, "u", dim);
    T h = scalar_from_json<T>(params.at("envelope_h"), "envelope_h");
    T dev = envelope_deviation(*prep.model, u, h);
    csv.row({"envelope", cells_joined(u), "", "", "", scalar_traits<T>::str(h), "", "", "", "", "",
             "", "", "", "", "", scalar_traits<T>::str(dev)});
    Json je;
    je["u"] = Json::array();
    for (const auto& v : u) je["u"].push_back(scalar_to_json(v));
    je["h"] = scalar_to_json(h);
    je["max_deviation"] = scalar_to_json(dev);
    out.json["envelope"] = std::move(je);
  }

  if (has_attention) {
    int k = require_k(params, dim);
    WelfareSet set = attention_welfare_set(field, k);
    const char* kind = set.kind == WelfareSet::Kind::PointZero ? "point_zero" : "unbounded_above";
    Json ja;
    ja["k"] = k;
    ja["set"] = kind;

    std::string c_cell, gamma_cell, shift_cell, gain_cell, bound_cell, unchanged_cell;
    if (params.contains("c")) {
      if (!prep.model) throw ValidationError("welfare: witness part requires a model input");
      T c = scalar_from_json<T>(params.at("c"), "c");
      ArumCsDistribution<T> nu = as_cs(*prep.model);
      std::optional<UtilityPoint<T>> u_eval;
      if (params.contains("u_eval")) u_eval = point_param<T>(params, "u_eval", dim);
      UnboundedWitnessReport<T> rep = unbounded_welfare_witness(nu, grid, k, c, u_eval);
      bool unchanged =
          choice_prob_field(Model<T>(rep.witness), grid) == choice_prob_field(Model<T>(nu), grid);
      c_cell = scalar_traits<T>::str(c);
      gamma_cell = scalar_traits<T>::str(rep.gamma);
      shift_cell = scalar_traits<T>::str(rep.shift);
      gain_cell = scalar_traits<T>::str(rep.achieved_gain);
      bound_cell = scalar_traits<T>::str(rep.gain_lower_bound);
      unchanged_cell = bool_cell(unchanged);
      ja["c"] = scalar_to_json(c);
      ja["u_eval"] = Json::array();
      for (const auto& v : rep.u_eval) ja["u_eval"].push_back(scalar_to_json(v));
      ja["gamma"] = scalar_to_json(rep.gamma);
      ja["shift"] = scalar_to_json(rep.shift);
      ja["achieved_gain"] = scalar_to_json(rep.achieved_gain);
      ja["gain_lower_bound"] = scalar_to_json(rep.gain_lower_bound);
      ja["field_unchanged"] = unchanged;
      ja["witness"] = model_to_json(Model<T>(rep.witness));
    }
    csv.row({"attention", "", "", std::to_string(k), c_cell, "", "", "", "", "", kind, gamma_cell,
             shift_cell, gain_cell, bound_cell, unchanged_cell, ""});
    out.json["attention"] = std::move(ja);
  }

  out.csv = csv.str();
  return out;
}

template <class T>
AnalysisOutput run_diagnostics(const Prepared<T>&, const ChoiceProbField<T>& field, const Json&) {
  const int dim = field.num_alternatives();
  if (dim > 16) throw ValidationError("diagnostics: subset enumeration limited to K <= 16");

  CsvBuilder csv;
  csv.row({"subset", "sup_sum"});
  CsvBuilder plot;
  plot.row({"subset", "sup_sum"});
  Json jrows = Json::array();

  // Proper nonempty subsets, ordered by size then lexicographically.
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask + 1 < (1u << dim); ++mask) {
    std::vector<int> b;
    for (int k = 0; k < dim; ++k)
      if (mask & (1u << k)) b.push_back(k);
    subsets.push_back(std::move(b));
  }
  std::stable_sort(subsets.begin(), subsets.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });

  for (const auto& b : subsets) {
    T v = subset_attractiveness_diagnostic(field, b);
    csv.row({indices_joined(b), scalar_traits<T>::str(v)});
    plot.row({indices_joined(b), scalar_traits<T>::str(v)});
    Json jr;
    jr["subset"] = b;
    jr["sup_sum"] = scalar_to_json(v);
    jrows.push_back(std::move(jr));
  }

  bool full_consideration = true;
  Json jsup = Json::array();
  for (int k = 0; k < dim; ++k) {
    T sup = sup_choice_prob(field, k).first;
    full_consideration = full_consideration && (sup == T(1));
    jsup.push_back(scalar_to_json(sup));
  }

  AnalysisOutput out;
  out.type = "diagnostics";
  out.csv = csv.str();
  out.json["schema_version"] = 1;
  out.json["analysis"] = "diagnostics";
  out.json["subsets"] = std::move(jrows);
  out.json["sup_pk"] = std::move(jsup);
  out.json["consistent_with_full_consideration"] = full_consideration;
  out.plot_csv = plot.str();
  return out;
}

template <class T>
AnalysisOutput run_one(const ScenarioDoc& doc, const Prepared<T>& prep,
                       const ChoiceProbField<T>& field, const AnalysisSpec& spec,
                       const RunOptions& options) {
  if (spec.type == "equivalence") return run_equivalence(prep, field, spec.params);
  if (spec.type == "identify") return run_identify(prep, field, spec.params);
  if (spec.type == "discontinuity") return run_discontinuity(prep, field, spec.params);
  if (spec.type == "counterfactual") return run_counterfactual(prep, field, spec.params, options);
  if (spec.type == "attention") return run_attention(prep, field, spec.params);
  if (spec.type == "welfare") return run_welfare(prep, field, spec.params);
  if (spec.type == "diagnostics") return run_diagnostics(prep, field, spec.params);
  throw ValidationError("unknown analysis type '" + spec.type + "'");
  (void)doc;
}

std::string analysis_line(std::size_t index, const AnalysisOutput& out) {
  std::string line = (index < 9 ? "0" : "") + std::to_string(index + 1) + " " + out.type;
  if (out.type == "identify" && out.json.contains("reports") && !out.json["reports"].empty()) {
    const auto& r = out.json["reports"][0];
    line += ": k=" + r["k"].dump() + " interval [" + r["interval"]["lo"].dump() + ", " +
            r["interval"]["hi"].dump() + "]";
  } else if (out.type == "equivalence") {
    line += std::string(": pass=") + (out.json["pass"].get<bool>() ? "true" : "false");
  } else if (out.type == "attention" && out.json.contains("interval")) {
    line += ": bounds [" + out.json["interval"]["lo"].dump() + ", " +
            out.json["interval"]["hi"].dump() + "]";
  }
  return line;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

template <class T>
RunSummary run_typed(const ScenarioDoc& doc, const std::string& scenario_bytes,
                     const fs::path& out_dir, const RunOptions& options) {
  Prepared<T> prep = prepare<T>(doc);
  ChoiceProbField<T> field = prep.inline_field ? *prep.inline_field
                                               : choice_prob_field(*prep.model, *prep.grid);

  RunSummary summary;
  summary.scenario_name = doc.name;
  summary.output_dir = out_dir.string();
  summary.arithmetic = doc.arithmetic;
  summary.seed = doc.seed;

  fs::create_directories(out_dir);

  Json manifest;
  manifest["schema_version"] = 1;
  manifest["library_version"] = library_version();
  manifest["scenario"] = doc.name;
  manifest["arithmetic"] = doc.arithmetic == Arithmetic::Rational ? "rational" : "float";
  manifest["seed"] = doc.seed;
  manifest["inputs_hash"] = "fnv1a64:" + fnv1a64_hex(scenario_bytes);
  Json files = Json::array();

  auto emit = [&](const std::string& name, const std::string& content) {
    write_file(out_dir / name, content);
    files.push_back(Json{{"name", name}, {"hash", "fnv1a64:" + fnv1a64_hex(content)}});
    summary.files.push_back(name);
  };

  for (std::size_t i = 0; i < doc.analyses.size(); ++i) {
    AnalysisOutput out = run_one(doc, prep, field, doc.analyses[i], options);
    std::string stem = (i < 9 ? "0" : "") + std::to_string(i + 1) + "_" + out.type;
    emit(stem + ".csv", out.csv);
    emit(stem + ".json", out.json.dump(2) + "\n");
    if (out.plot_csv) emit(stem + "_plot.csv", *out.plot_csv);
    summary.lines.push_back(analysis_line(i, out));
  }

  manifest["files"] = std::move(files);
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  summary.files.push_back("manifest.json");
  return summary;
}

fs::path resolve_output_dir(const ScenarioDoc& doc, const RunOptions& options) {
  if (options.output_dir) return *options.output_dir;
  if (doc.output_dir) return *doc.output_dir;
  if (options.fallback_output_dir) return *options.fallback_output_dir;
  return "arum_out";
}

// Validation-only pass over the analyses: parameter shapes, ranges, and
// model/field requirements, without computing any field.
template <class T>
void validate_analyses(const ScenarioDoc& doc, const Prepared<T>& prep) {
  const UtilityGrid<T>& grid = *prep.grid;
  const int dim = prep.model ? model_alternatives(*prep.model)
                             : prep.inline_field->num_alternatives();
  for (const auto& spec : doc.analyses) {
    const Json& p = spec.params;
    if (spec.type == "equivalence" || spec.type == "discontinuity") {
      if (!prep.model)
        throw ValidationError(spec.type + " analysis requires a model input");
    }
    if (spec.type == "identify" && p.contains("k")) require_k(p, dim);
    if (spec.type == "discontinuity") {
      require_k(p, dim);
      if (!p.contains("scales") && !p.contains("rects"))
        throw ValidationError("discontinuity: expected 'scales' or 'rects'");
    }
    if (spec.type == "counterfactual") {
      require_k(p, dim);
      if (!p.contains("u_c")) throw ValidationError("counterfactual: missing 'u_c'");
      point_param<T>(p, "u_c", grid.dim());
      if (p.contains("atom_grid")) parse_axis_spec(p.at("atom_grid").get<std::string>());
    }
    if (spec.type == "attention") require_k(p, dim);
    if (spec.type == "welfare") {
      if (!p.contains("u_tilde") && !p.contains("envelope_h") && !p.contains("k"))
        throw ValidationError("welfare: expected 'u_tilde' (path), 'envelope_h', and/or 'k'");
      if (p.contains("u")) point_param<T>(p, "u", dim);
      if (p.contains("u_tilde")) {
        if (!p.contains("u")) throw ValidationError("welfare: 'u' is required with 'u_tilde'");
        point_param<T>(p, "u_tilde", dim);
        if (!prep.model) throw ValidationError("welfare: path part requires a model input");
      }
      if (p.contains("envelope_h") && !prep.model)
        throw ValidationError("welfare: envelope part requires a model input");
      if (p.contains("k")) require_k(p, dim);
      if (p.contains("c") && !prep.model)
        throw ValidationError("welfare: witness part requires a model input");
    }
  }
}

}  // namespace

AxisSpec<Rational> parse_axis_spec(const std::string& text) {
  auto first = text.find(':');
  auto last = text.rfind(':');
  if (first == std::string::npos || first == last)
    throw ValidationError("axis spec must be 'lo:hi:step', got '" + text + "'");
  AxisSpec<Rational> spec{rational_from_string(text.substr(0, first)),
                          rational_from_string(text.substr(first + 1, last - first - 1)),
                          rational_from_string(text.substr(last + 1))};
  if (spec.step <= 0) throw ValidationError("axis spec step must be positive");
  if (spec.hi < spec.lo) throw ValidationError("axis spec hi < lo");
  return spec;
}

std::string emit_plot_data(const AnalysisOutput& output) {
  if (!output.plot_csv)
    throw UnsupportedAnalysisError("analysis '" + output.type + "' has no plot-data series");
  return *output.plot_csv;
}

Json run_summary_json(const RunSummary& summary) {
  Json j;
  j["scenario"] = summary.scenario_name;
  j["output_dir"] = summary.output_dir;
  j["arithmetic"] = summary.arithmetic == Arithmetic::Rational ? "rational" : "float";
  j["seed"] = summary.seed;
  j["files"] = summary.files;
  return j;
}

RunSummary run_scenario(const std::string& path, const RunOptions& options) {
  std::string bytes = read_text_file(path);
  Json j = parse_json_text(bytes, path);
  ScenarioDoc doc = parse_scenario(j, fs::path(path).parent_path(), options);
  fs::path out_dir = resolve_output_dir(doc, options);
  if (doc.arithmetic == Arithmetic::Rational) {
    Prepared<Rational> prep = prepare<Rational>(doc);
    validate_analyses(doc, prep);
    return run_typed<Rational>(doc, bytes, out_dir, options);
  }
  Prepared<double> prep = prepare<double>(doc);
  validate_analyses(doc, prep);
  return run_typed<double>(doc, bytes, out_dir, options);
}

void validate_scenario_file(const std::string& path, const RunOptions& options) {
  std::string bytes = read_text_file(path);
  Json j = parse_json_text(bytes, path);
  ScenarioDoc doc = parse_scenario(j, fs::path(path).parent_path(), options);
  if (doc.arithmetic == Arithmetic::Rational) {
    Prepared<Rational> prep = prepare<Rational>(doc);
    validate_analyses(doc, prep);
  } else {
    Prepared<double> prep = prepare<double>(doc);
    validate_analyses(doc, prep);
  }
}

std::string scenario_schema_text() {
  static const char* kSchema = R"({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "arum scenario",
  "type": "object",
  "required": ["name", "analyses"],
  "properties": {
    "schema_version": {"const": 1},
    "name": {"type": "string"},
    "documentation": {
      "type": "string",
      "description": "Free text, e.g. whether the grid stands in for a continuum."
    },
    "arithmetic": {"enum": ["rational", "float"], "default": "rational"},
    "seed": {"type": "integer", "minimum": 0, "default": 0},
    "output_dir": {"type": "string"},
    "model": {"$ref": "#/$defs/model"},
    "model_file": {"type": "string", "description": "Path relative to the scenario file."},
    "field": {
      "type": "object",
      "required": ["grid", "probs"],
      "properties": {
        "grid": {"$ref": "#/$defs/grid"},
        "probs": {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/num"}}}
      }
    },
    "grid": {"$ref": "#/$defs/grid"},
    "analyses": {
      "type": "array",
      "minItems": 1,
      "items": {
        "type": "object",
        "required": ["type"],
        "properties": {
          "type": {
            "enum": ["equivalence", "identify", "discontinuity", "counterfactual",
                     "attention", "welfare", "diagnostics"]
          },
          "tol": {"$ref": "#/$defs/num"},
          "k": {"type": "integer", "minimum": 0},
          "scales": {"type": "array", "items": {"$ref": "#/$defs/num"}},
          "points_per_side": {"type": "integer", "minimum": 2, "default": 2},
          "rects": {"type": "array", "items": {"$ref": "#/$defs/grid"}},
          "u_c": {"type": "array", "items": {"$ref": "#/$defs/num"}},
          "atom_grid": {"type": "string", "description": "lo:hi:step"},
          "model_class": {"enum": ["arum", "arum_e", "arum_cs"]},
          "u": {"type": "array", "items": {"$ref": "#/$defs/num"}},
          "u_tilde": {"type": "array", "items": {"$ref": "#/$defs/num"}},
          "u_eval": {"type": "array", "items": {"$ref": "#/$defs/num"}},
          "panels": {"type": "integer", "minimum": 1, "default": 64},
          "envelope_h": {"$ref": "#/$defs/num"},
          "c": {"$ref": "#/$defs/num"}
        }
      }
    }
  },
  "oneOf": [
    {"required": ["model", "grid"]},
    {"required": ["model_file", "grid"]},
    {"required": ["field"]}
  ],
  "$defs": {
    "num": {
      "description": "Number, or a string like \"0.6\" / \"3/5\" parsed exactly in rational mode.",
      "type": ["number", "string"]
    },
    "extnum": {
      "description": "As num; shocks additionally allow the literal \"-inf\" (class arum_e only).",
      "type": ["number", "string"]
    },
    "grid": {
      "type": "object",
      "properties": {
        "points": {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/num"}}},
        "rect": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["lo", "hi", "step"],
            "properties": {
              "lo": {"$ref": "#/$defs/num"},
              "hi": {"$ref": "#/$defs/num"},
              "step": {"$ref": "#/$defs/num"}
            }
          }
        }
      }
    },
    "model": {
      "type": "object",
      "required": ["class", "K", "atoms"],
      "properties": {
        "schema_version": {"const": 1},
        "class": {"enum": ["arum", "arum_e", "arum_cs"]},
        "K": {"type": "integer", "minimum": 2},
        "atoms": {
          "type": "array",
          "minItems": 1,
          "items": {
            "type": "object",
            "required": ["eps", "w"],
            "properties": {
              "eps": {"type": "array", "items": {"$ref": "#/$defs/extnum"}},
              "S": {"type": "array", "items": {"type": "integer", "minimum": 0}},
              "w": {"$ref": "#/$defs/num"}
            }
          }
        }
      }
    }
  }
}
)";
  return kSchema;
}

}  // namespace arum
