#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arum/domain.hpp"
#include "arum/extended.hpp"

namespace arum {

enum class ModelClass { Arum, ArumE, ArumCs };

inline const char* model_class_name(ModelClass c) {
  switch (c) {
    case ModelClass::Arum: return "arum";
    case ModelClass::ArumE: return "arum_e";
    case ModelClass::ArumCs: return "arum_cs";
  }
  return "?";
}

// Weighted support point of a shock distribution. At least one coordinate is
// finite (a maximizer must exist).
template <class T>
struct EpsilonAtom {
  std::vector<ExtendedReal<T>> eps;
  T weight;
};

// Weighted support point of a (shock, consideration set) distribution; shocks
// all finite, consideration set a nonempty sorted index list.
template <class T>
struct ConsiderationAtom {
  std::vector<T> eps;
  std::vector<int> consideration;
  T weight;

  bool considers(int k) const {
    return std::find(consideration.begin(), consideration.end(), k) != consideration.end();
  }
};

namespace detail {

template <class T, class Atom>
void validate_weights(const std::vector<Atom>& atoms, const char* what) {
  if (atoms.empty()) throw ValidationError(std::string(what) + " has no atoms");
  T sum(0);
  for (const auto& a : atoms) {
    if (!(a.weight > T(0))) throw ValidationError(std::string(what) + " atom weight must be positive");
    sum += a.weight;
  }
  if (abs_value<T>(sum - T(1)) > scalar_traits<T>::one_tolerance())
    throw ValidationError(std::string(what) + " atom weights do not sum to 1");
}

template <class T>
void validate_eps_dims(const std::vector<EpsilonAtom<T>>& atoms, const char* what) {
  const std::size_t k = atoms.front().eps.size();
  if (k < 2) throw ValidationError(std::string(what) + " needs K >= 2 alternatives");
  for (const auto& a : atoms) {
    if (a.eps.size() != k) throw ValidationError(std::string(what) + " atoms have mixed dimensions");
    bool any_finite = false;
    for (const auto& e : a.eps) any_finite = any_finite || e.is_finite();
    if (!any_finite)
      throw ValidationError(std::string(what) + " atom has no finite coordinate");
  }
}

}  // namespace detail

// Finite mixture over all-finite shock vectors.
template <class T>
class ArumDistribution {
 public:
  explicit ArumDistribution(std::vector<EpsilonAtom<T>> atoms, std::string provenance = {})
      : atoms_(std::move(atoms)), provenance_(std::move(provenance)) {
    detail::validate_weights<T>(atoms_, "arum");
    detail::validate_eps_dims(atoms_, "arum");
    for (const auto& a : atoms_)
      for (const auto& e : a.eps)
        if (!e.is_finite()) throw ValidationError("arum shocks must all be finite");
  }

  int num_alternatives() const { return static_cast<int>(atoms_.front().eps.size()); }
  const std::vector<EpsilonAtom<T>>& atoms() const { return atoms_; }
  const std::string& provenance() const { return provenance_; }

 private:
  std::vector<EpsilonAtom<T>> atoms_;
  std::string provenance_;
};

// Finite mixture over extended shock vectors; -inf coordinates allowed, at
// least one finite coordinate per atom.
template <class T>
class ArumEDistribution {
 public:
  explicit ArumEDistribution(std::vector<EpsilonAtom<T>> atoms, std::string provenance = {})
      : atoms_(std::move(atoms)), provenance_(std::move(provenance)) {
    detail::validate_weights<T>(atoms_, "arum_e");
    detail::validate_eps_dims(atoms_, "arum_e");
  }

  int num_alternatives() const { return static_cast<int>(atoms_.front().eps.size()); }
  const std::vector<EpsilonAtom<T>>& atoms() const { return atoms_; }
  const std::string& provenance() const { return provenance_; }

 private:
  std::vector<EpsilonAtom<T>> atoms_;
  std::string provenance_;
};

// Finite mixture over (finite shock vector, consideration set) pairs.
template <class T>
class ArumCsDistribution {
 public:
  explicit ArumCsDistribution(std::vector<ConsiderationAtom<T>> atoms, std::string provenance = {})
      : atoms_(std::move(atoms)), provenance_(std::move(provenance)) {
    detail::validate_weights<T>(atoms_, "arum_cs");
    const std::size_t k = atoms_.front().eps.size();
    if (k < 2) throw ValidationError("arum_cs needs K >= 2 alternatives");
    for (auto& a : atoms_) {
      if (a.eps.size() != k) throw ValidationError("arum_cs atoms have mixed dimensions");
      if (a.consideration.empty()) throw ValidationError("arum_cs consideration set is empty");
      std::sort(a.consideration.begin(), a.consideration.end());
      a.consideration.erase(std::unique(a.consideration.begin(), a.consideration.end()),
                            a.consideration.end());
      for (int j : a.consideration)
        if (j < 0 || j >= static_cast<int>(k))
          throw ValidationError("arum_cs consideration index out of range");
    }
  }

  int num_alternatives() const { return static_cast<int>(atoms_.front().eps.size()); }
  const std::vector<ConsiderationAtom<T>>& atoms() const { return atoms_; }
  const std::string& provenance() const { return provenance_; }

 private:
  std::vector<ConsiderationAtom<T>> atoms_;
  std::string provenance_;
};

template <class T>
using Model = std::variant<ArumDistribution<T>, ArumEDistribution<T>, ArumCsDistribution<T>>;

template <class T>
ModelClass model_class(const Model<T>& m) {
  if (std::holds_alternative<ArumDistribution<T>>(m)) return ModelClass::Arum;
  if (std::holds_alternative<ArumEDistribution<T>>(m)) return ModelClass::ArumE;
  return ModelClass::ArumCs;
}

template <class T>
int model_alternatives(const Model<T>& m) {
  return std::visit([](const auto& d) { return d.num_alternatives(); }, m);
}

}  // namespace arum
