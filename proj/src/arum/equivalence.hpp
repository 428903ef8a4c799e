#pragma once

#include <string>
#include <vector>

#include "arum/engine.hpp"
#include "arum/hash.hpp"

namespace arum {

// Masked coordinates are replaced by 0; the consideration set records which
// coordinates were finite. Marginal consideration mass is preserved atomwise:
// Pr(k in S) = Pr(eps_k > -inf).
template <class T>
ArumCsDistribution<T> arum_e_to_cs(const ArumEDistribution<T>& mu) {
  std::vector<ConsiderationAtom<T>> atoms;
  atoms.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) {
    ConsiderationAtom<T> out;
    out.weight = a.weight;
    out.eps.reserve(a.eps.size());
    for (std::size_t j = 0; j < a.eps.size(); ++j) {
      if (a.eps[j].is_finite()) {
        out.eps.push_back(a.eps[j].value());
        out.consideration.push_back(static_cast<int>(j));
      } else {
        out.eps.push_back(T(0));
      }
    }
    atoms.push_back(std::move(out));
  }
  return ArumCsDistribution<T>(std::move(atoms), "arum_e_to_cs(" + model_digest(mu) + ")");
}

// eps_k is kept where k is considered and set to -inf elsewhere.
template <class T>
ArumEDistribution<T> cs_to_arum_e(const ArumCsDistribution<T>& nu) {
  std::vector<EpsilonAtom<T>> atoms;
  atoms.reserve(nu.atoms().size());
  for (const auto& a : nu.atoms()) {
    EpsilonAtom<T> out;
    out.weight = a.weight;
    out.eps.reserve(a.eps.size());
    for (std::size_t j = 0; j < a.eps.size(); ++j)
      out.eps.push_back(a.considers(static_cast<int>(j)) ? ExtendedReal<T>::finite(a.eps[j])
                                                         : ExtendedReal<T>::neg_infinity());
    atoms.push_back(std::move(out));
  }
  return ArumEDistribution<T>(std::move(atoms), "cs_to_arum_e(" + model_digest(nu) + ")");
}

// All-finite rationalization over a finite grid: unconsidered alternatives get
// a shock low enough to never be chosen anywhere on the grid, with a unit
// margin. Alternative 0 serves as the numeraire index.
template <class T>
ArumDistribution<T> cs_to_arum(const ArumCsDistribution<T>& nu, const UtilityGrid<T>& grid) {
  if (grid.dim() != nu.num_alternatives())
    throw InvalidArgumentError("grid dimension does not match model");
  std::vector<EpsilonAtom<T>> atoms;
  atoms.reserve(nu.atoms().size());
  for (const auto& a : nu.atoms()) {
    // min over grid points and considered alternatives of (u_l - u_0 + eps_l)
    bool first = true;
    T considered_floor(0);
    for (const auto& u : grid.points()) {
      for (int l : a.consideration) {
        T v = u[static_cast<std::size_t>(l)] - u[0] + a.eps[static_cast<std::size_t>(l)];
        if (first || v < considered_floor) considered_floor = v;
        first = false;
      }
    }
    EpsilonAtom<T> out;
    out.weight = a.weight;
    out.eps.reserve(a.eps.size());
    for (int k = 0; k < static_cast<int>(a.eps.size()); ++k) {
      if (a.considers(k)) {
        out.eps.push_back(ExtendedReal<T>::finite(a.eps[static_cast<std::size_t>(k)]));
        continue;
      }
      T k_ceiling = grid[0][static_cast<std::size_t>(k)] - grid[0][0];
      for (const auto& u : grid.points()) {
        T v = u[static_cast<std::size_t>(k)] - u[0];
        if (v > k_ceiling) k_ceiling = v;
      }
      out.eps.push_back(ExtendedReal<T>::finite(considered_floor - k_ceiling - T(1)));
    }
    atoms.push_back(std::move(out));
  }
  return ArumDistribution<T>(std::move(atoms), "cs_to_arum(" + model_digest(nu) + ")");
}

template <class T>
struct EquivalenceReport {
  std::vector<T> discrepancy;  // per grid point: max_k |p^A_k - p^B_k|
  T max_discrepancy;
  T tolerance;
  bool pass;
};

// Evaluates both fields on the grid and compares pointwise. tol = 0 in
// rational mode turns this into an exact equality check.
template <class T>
EquivalenceReport<T> verify_equivalence(const Model<T>& a, const Model<T>& b,
                                        const UtilityGrid<T>& grid, const T& tol) {
  if (model_alternatives(a) != model_alternatives(b))
    throw InvalidArgumentError("models have different alternative counts");
  ChoiceProbField<T> fa = choice_prob_field(a, grid);
  ChoiceProbField<T> fb = choice_prob_field(b, grid);
  EquivalenceReport<T> rep;
  rep.tolerance = tol;
  rep.max_discrepancy = T(0);
  rep.discrepancy.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    T d(0);
    for (int k = 0; k < fa.num_alternatives(); ++k) {
      T dk = abs_value<T>(fa.at(i)[k] - fb.at(i)[k]);
      if (dk > d) d = dk;
    }
    if (d > rep.max_discrepancy) rep.max_discrepancy = d;
    rep.discrepancy.push_back(std::move(d));
  }
  rep.pass = !(rep.max_discrepancy > tol);
  return rep;
}

}  // namespace arum
