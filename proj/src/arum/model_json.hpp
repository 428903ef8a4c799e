#pragma once

#include <json.hpp>

#include <string>

#include "arum/domain.hpp"
#include "arum/model.hpp"

namespace arum {

using Json = nlohmann::ordered_json;

// Numeric JSON values may be plain numbers or strings ("0.6", "3/5"); strings
// parse exactly in rational mode. Shocks additionally allow the literal
// string "-inf".
template <class T>
T scalar_from_json(const Json& v, const char* what) {
  if (v.is_string()) return scalar_traits<T>::parse(v.get<std::string>());
  if (v.is_number_integer()) return scalar_traits<T>::from_int(v.get<long>());
  if (v.is_number()) return scalar_traits<T>::from_double(v.get<double>());
  throw ParseError(std::string(what) + ": expected a number or numeric string");
}

template <class T>
ExtendedReal<T> extended_from_json(const Json& v, const char* what) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "-inf" || s == "−inf") return ExtendedReal<T>::neg_infinity();
  }
  return ExtendedReal<T>::finite(scalar_from_json<T>(v, what));
}

template <class T>
Json scalar_to_json(const T& v) {
  if constexpr (scalar_traits<T>::exact) {
    return Json(scalar_traits<T>::str(v));
  } else {
    return Json(v);
  }
}

template <class T>
Json extended_to_json(const ExtendedReal<T>& v) {
  if (!v.is_finite()) return Json("-inf");
  return scalar_to_json(v.value());
}

// Model files: {"schema_version":1, "class":"arum"|"arum_e"|"arum_cs", "K":n,
// "atoms":[{"eps":[...], "S":[...], "w":...}]}. "S" is required for arum_cs
// and rejected otherwise; "-inf" eps entries are allowed only for arum_e.
template <class T>
Model<T> model_from_json(const Json& j);

template <class T>
Json model_to_json(const Model<T>& m);

// Grid specs: {"points": [[...], ...]} or {"rect": [{"lo":..., "hi":...,
// "step":...}, ...]} (Cartesian product, last coordinate fastest).
template <class T>
UtilityGrid<T> grid_from_json(const Json& j);

template <class T>
Json grid_to_json(const UtilityGrid<T>& grid);

// Inline fields: {"grid": <grid spec>, "probs": [[...], ...]} with one
// simplex row per grid point.
template <class T>
ChoiceProbField<T> field_from_json(const Json& j);

std::string read_text_file(const std::string& path);

Json parse_json_text(const std::string& text, const std::string& what);

template <class T>
Model<T> load_model_file(const std::string& path) {
  return model_from_json<T>(parse_json_text(read_text_file(path), path));
}

}  // namespace arum
