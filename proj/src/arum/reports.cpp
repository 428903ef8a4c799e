#include "arum/reports.hpp"

namespace arum {

namespace {

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

CsvBuilder& CsvBuilder::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ",";
    text_ += csv_escape(cells[i]);
  }
  text_ += "\n";
  return *this;
}

std::string indices_joined(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ";";
    out += std::to_string(values[i]);
  }
  return out;
}

Json lp_problem_json(const LpCounterfactualProblem& problem) {
  Json j;
  j["model_class"] = model_class_name(problem.model_class());
  j["grid"] = grid_to_json(problem.grid());
  Json uc = Json::array();
  for (const auto& v : problem.counterfactual_point()) uc.push_back(scalar_to_json(v));
  j["u_c"] = std::move(uc);
  Json field = Json::array();
  for (std::size_t i = 0; i < problem.grid().size(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < problem.field().num_alternatives(); ++k)
      row.push_back(scalar_to_json(problem.field().at(i)[k]));
    field.push_back(std::move(row));
  }
  j["field"] = std::move(field);
  Json fam = Json::array();
  for (const auto& atom : problem.family()) {
    Json ja;
    Json eps = Json::array();
    for (const auto& e : atom.eps) eps.push_back(extended_to_json(e));
    ja["eps"] = std::move(eps);
    if (atom.consideration) ja["S"] = *atom.consideration;
    fam.push_back(std::move(ja));
  }
  j["atom_family"] = std::move(fam);
  return j;
}

Json lp_bounds_json(const LpBoundsResult& result) {
  Json j;
  j["interval"] = Json{{"lo", scalar_to_json(result.interval.lo)},
                       {"hi", scalar_to_json(result.interval.hi)}};
  Json wmin = Json::array();
  for (const auto& w : result.weights_at_min) wmin.push_back(scalar_to_json(w));
  Json wmax = Json::array();
  for (const auto& w : result.weights_at_max) wmax.push_back(scalar_to_json(w));
  j["weights_at_min"] = std::move(wmin);
  j["weights_at_max"] = std::move(wmax);
  return j;
}

}  // namespace arum
