#include "arum/model_json.hpp"

#include <fstream>
#include <sstream>

namespace arum {

namespace {

void require_object(const Json& j, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
}

int read_k(const Json& j) {
  if (!j.contains("K") || !j.at("K").is_number_integer())
    throw ParseError("model: missing integer field 'K'");
  int k = j.at("K").get<int>();
  if (k < 2) throw ValidationError("model: K must be >= 2");
  return k;
}

template <class T>
std::vector<ExtendedReal<T>> read_eps(const Json& atom, int k, bool allow_neg_inf) {
  if (!atom.contains("eps") || !atom.at("eps").is_array())
    throw ParseError("model atom: missing array field 'eps'");
  const Json& arr = atom.at("eps");
  if (static_cast<int>(arr.size()) != k)
    throw ValidationError("model atom: 'eps' length does not equal K");
  std::vector<ExtendedReal<T>> eps;
  eps.reserve(arr.size());
  for (const auto& v : arr) {
    ExtendedReal<T> e = extended_from_json<T>(v, "eps");
    if (!e.is_finite() && !allow_neg_inf)
      throw ValidationError("model atom: '-inf' shocks are only allowed for class arum_e");
    eps.push_back(e);
  }
  return eps;
}

}  // namespace

template <class T>
Model<T> model_from_json(const Json& j) {
  require_object(j, "model");
  if (!j.contains("class") || !j.at("class").is_string())
    throw ParseError("model: missing string field 'class'");
  const std::string cls = j.at("class").get<std::string>();
  const int k = read_k(j);
  if (!j.contains("atoms") || !j.at("atoms").is_array() || j.at("atoms").empty())
    throw ParseError("model: missing nonempty array field 'atoms'");

  if (cls == "arum" || cls == "arum_e") {
    std::vector<EpsilonAtom<T>> atoms;
    for (const auto& ja : j.at("atoms")) {
      require_object(ja, "model atom");
      if (ja.contains("S"))
        throw ValidationError("model atom: 'S' is only allowed for class arum_cs");
      EpsilonAtom<T> a;
      a.eps = read_eps<T>(ja, k, cls == "arum_e");
      if (!ja.contains("w")) throw ParseError("model atom: missing field 'w'");
      a.weight = scalar_from_json<T>(ja.at("w"), "w");
      atoms.push_back(std::move(a));
    }
    if (cls == "arum") return Model<T>(ArumDistribution<T>(std::move(atoms)));
    return Model<T>(ArumEDistribution<T>(std::move(atoms)));
  }
  if (cls == "arum_cs") {
    std::vector<ConsiderationAtom<T>> atoms;
    for (const auto& ja : j.at("atoms")) {
      require_object(ja, "model atom");
      ConsiderationAtom<T> a;
      auto eps = read_eps<T>(ja, k, false);
      a.eps.reserve(eps.size());
      for (const auto& e : eps) a.eps.push_back(e.value());
      if (!ja.contains("S") || !ja.at("S").is_array())
        throw ParseError("arum_cs atom: missing array field 'S'");
      for (const auto& v : ja.at("S")) {
        if (!v.is_number_integer()) throw ParseError("arum_cs atom: 'S' entries must be integers");
        a.consideration.push_back(v.get<int>());
      }
      if (!ja.contains("w")) throw ParseError("model atom: missing field 'w'");
      a.weight = scalar_from_json<T>(ja.at("w"), "w");
      atoms.push_back(std::move(a));
    }
    return Model<T>(ArumCsDistribution<T>(std::move(atoms)));
  }
  throw ParseError("model: unknown class '" + cls + "'");
}

template <class T>
Json model_to_json(const Model<T>& m) {
  Json j;
  j["schema_version"] = 1;
  j["class"] = model_class_name(model_class(m));
  j["K"] = model_alternatives(m);
  Json atoms = Json::array();
  std::visit(
      [&]<class D>(const D& dist) {
        for (const auto& a : dist.atoms()) {
          Json ja;
          Json eps = Json::array();
          if constexpr (std::is_same_v<D, ArumCsDistribution<T>>) {
            for (const auto& e : a.eps) eps.push_back(scalar_to_json(e));
            ja["eps"] = std::move(eps);
            ja["S"] = a.consideration;
          } else {
            for (const auto& e : a.eps) eps.push_back(extended_to_json(e));
            ja["eps"] = std::move(eps);
          }
          ja["w"] = scalar_to_json(a.weight);
          atoms.push_back(std::move(ja));
        }
        if (!dist.provenance().empty()) j["provenance"] = dist.provenance();
      },
      m);
  j["atoms"] = std::move(atoms);
  return j;
}

template <class T>
UtilityGrid<T> grid_from_json(const Json& j) {
  require_object(j, "grid");
  if (j.contains("points")) {
    const Json& pts = j.at("points");
    if (!pts.is_array() || pts.empty()) throw ParseError("grid: 'points' must be a nonempty array");
    std::vector<UtilityPoint<T>> points;
    for (const auto& jp : pts) {
      if (!jp.is_array()) throw ParseError("grid: each point must be an array");
      UtilityPoint<T> p;
      for (const auto& v : jp) p.push_back(scalar_from_json<T>(v, "grid point"));
      points.push_back(std::move(p));
    }
    const int dim = static_cast<int>(points.front().size());
    return UtilityGrid<T>(dim, std::move(points));
  }
  if (j.contains("rect")) {
    const Json& axes = j.at("rect");
    if (!axes.is_array() || axes.empty()) throw ParseError("grid: 'rect' must be a nonempty array");
    std::vector<std::vector<T>> axis_values;
    for (const auto& ja : axes) {
      require_object(ja, "grid axis");
      AxisSpec<T> spec{scalar_from_json<T>(ja.at("lo"), "lo"), scalar_from_json<T>(ja.at("hi"), "hi"),
                       scalar_from_json<T>(ja.at("step"), "step")};
      axis_values.push_back(UtilityGrid<T>::axis_from_spec(spec));
    }
    return UtilityGrid<T>::rectangular(axis_values);
  }
  throw ParseError("grid: expected 'points' or 'rect'");
}

template <class T>
Json grid_to_json(const UtilityGrid<T>& grid) {
  Json pts = Json::array();
  for (const auto& p : grid.points()) {
    Json jp = Json::array();
    for (const auto& v : p) jp.push_back(scalar_to_json(v));
    pts.push_back(std::move(jp));
  }
  Json j;
  j["points"] = std::move(pts);
  return j;
}

template <class T>
ChoiceProbField<T> field_from_json(const Json& j) {
  require_object(j, "field");
  if (!j.contains("grid")) throw ParseError("field: missing 'grid'");
  UtilityGrid<T> grid = grid_from_json<T>(j.at("grid"));
  if (!j.contains("probs") || !j.at("probs").is_array())
    throw ParseError("field: missing array field 'probs'");
  std::vector<SimplexVector<T>> probs;
  for (const auto& jp : j.at("probs")) {
    if (!jp.is_array()) throw ParseError("field: each probs row must be an array");
    std::vector<T> p;
    for (const auto& v : jp) p.push_back(scalar_from_json<T>(v, "prob"));
    probs.push_back(SimplexVector<T>(std::move(p)));
  }
  return ChoiceProbField<T>(std::move(grid), std::move(probs));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(what + ": invalid JSON");
  return j;
}

template Model<double> model_from_json<double>(const Json&);
template Model<Rational> model_from_json<Rational>(const Json&);
template Json model_to_json<double>(const Model<double>&);
template Json model_to_json<Rational>(const Model<Rational>&);
template UtilityGrid<double> grid_from_json<double>(const Json&);
template UtilityGrid<Rational> grid_from_json<Rational>(const Json&);
template Json grid_to_json<double>(const UtilityGrid<double>&);
template Json grid_to_json<Rational>(const UtilityGrid<Rational>&);
template ChoiceProbField<double> field_from_json<double>(const Json&);
template ChoiceProbField<Rational> field_from_json<Rational>(const Json&);

}  // namespace arum
