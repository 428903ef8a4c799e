#pragma once

#include <string>
#include <vector>

#include "arum/equivalence.hpp"
#include "arum/identification.hpp"
#include "arum/lp_counterfactual.hpp"
#include "arum/model_json.hpp"

namespace arum {

// Minimal CSV writer: comma separation, "\n" rows, quoting only when a cell
// contains a comma, quote, or newline. Deterministic bytes.
class CsvBuilder {
 public:
  CsvBuilder& row(const std::vector<std::string>& cells);
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

// "a;b;c" (field-internal list separator, avoids CSV quoting).
template <class T>
std::string cells_joined(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ";";
    out += scalar_traits<T>::str(values[i]);
  }
  return out;
}

std::string indices_joined(const std::vector<int>& values);

// verify_equivalence report: one row per grid point.
template <class T>
std::string equivalence_report_csv(const EquivalenceReport<T>& rep, const UtilityGrid<T>& grid,
                                   const std::string& pair_name) {
  CsvBuilder csv;
  csv.row({"pair", "point_index", "point", "discrepancy"});
  for (std::size_t i = 0; i < grid.size(); ++i)
    csv.row({pair_name, std::to_string(i), cells_joined(grid[i]),
             scalar_traits<T>::str(rep.discrepancy[i])});
  return csv.str();
}

template <class T>
Json equivalence_report_json(const EquivalenceReport<T>& rep, const std::string& pair_name) {
  Json j;
  j["pair"] = pair_name;
  j["tolerance"] = scalar_to_json(rep.tolerance);
  j["max_discrepancy"] = scalar_to_json(rep.max_discrepancy);
  j["pass"] = rep.pass;
  Json per = Json::array();
  for (const auto& d : rep.discrepancy) per.push_back(scalar_to_json(d));
  j["per_point"] = std::move(per);
  return j;
}

template <class T>
Json consideration_report_json(const ConsiderationBoundsReport<T>& rep) {
  Json j;
  j["k"] = rep.k;
  j["sup_pk"] = scalar_to_json(rep.sup_pk);
  j["argmax_index"] = rep.argmax_index;
  Json pt = Json::array();
  for (const auto& v : rep.argmax_point) pt.push_back(scalar_to_json(v));
  j["argmax_point"] = std::move(pt);
  j["interval"] = Json{{"lo", scalar_to_json(rep.interval.lo)}, {"hi", scalar_to_json(rep.interval.hi)}};
  j["k_maximal_found"] = rep.k_maximal_found;
  j["sharp"] = rep.sharp;
  j["lower_matches_sup"] = rep.lower_matches_sup;
  return j;
}

template <class T>
Json discontinuity_rows_json(const std::vector<DiscontinuityRow<T>>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["rectangle_index"] = r.rectangle_index;
    j["grid_size"] = r.grid_size;
    j["sup_pk"] = scalar_to_json(r.sup_pk);
    j["width"] = scalar_to_json(r.width);
    arr.push_back(std::move(j));
  }
  return arr;
}

// LP problems and results serialize to JSON for audit trails.
Json lp_problem_json(const LpCounterfactualProblem& problem);
Json lp_bounds_json(const LpBoundsResult& result);

}  // namespace arum
