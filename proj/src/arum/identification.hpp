#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "arum/equivalence.hpp"

namespace arum {

// Maximum of p_k over the grid and the index of the first point attaining it.
template <class T>
std::pair<T, std::size_t> sup_choice_prob(const ChoiceProbField<T>& field, int k) {
  if (k < 0 || k >= field.num_alternatives())
    throw InvalidArgumentError("alternative index out of range");
  T best = field.at(0)[k];
  std::size_t arg = 0;
  for (std::size_t i = 1; i < field.grid().size(); ++i) {
    if (field.at(i)[k] > best) {
      best = field.at(i)[k];
      arg = i;
    }
  }
  return {best, arg};
}

// Probability alternative k is considered: total weight of atoms with eps_k
// finite (extended model) or k in the consideration set. 1 for classic models.
template <class T>
T consideration_prob_of(const Model<T>& model, int k) {
  if (k < 0 || k >= model_alternatives(model))
    throw InvalidArgumentError("alternative index out of range");
  return std::visit(
      [&]<class D>(const D& dist) {
        T sum(0);
        for (const auto& a : dist.atoms()) {
          if constexpr (std::is_same_v<D, ArumCsDistribution<T>>) {
            if (a.considers(k)) sum += a.weight;
          } else {
            if (a.eps[static_cast<std::size_t>(k)].is_finite()) sum += a.weight;
          }
        }
        return sum;
      },
      model);
}

template <class T>
struct ConsiderationBoundsReport {
  int k = 0;
  T sup_pk;
  std::size_t argmax_index = 0;
  UtilityPoint<T> argmax_point;
  Interval<T> interval;
  bool k_maximal_found = false;
  // Sharp (the interval is the full identified set) exactly when the grid
  // contains a k-maximal point; otherwise only the lower bound is certified.
  bool sharp = false;
  // For fields produced by a model engine the k-maximal value always equals
  // the sup; a mismatch flags a field inconsistent with the model family.
  bool lower_matches_sup = true;
};

template <class T>
ConsiderationBoundsReport<T> consideration_identified_set(const ChoiceProbField<T>& field, int k) {
  ConsiderationBoundsReport<T> rep;
  rep.k = k;
  auto [sup, arg] = sup_choice_prob(field, k);
  rep.sup_pk = sup;
  rep.argmax_index = arg;
  rep.argmax_point = field.grid()[arg];
  auto kmax = k_maximal_index(field.grid(), k);
  rep.k_maximal_found = kmax.has_value();
  rep.sharp = kmax.has_value();
  if (kmax) {
    T at_star = field.at(*kmax)[k];
    rep.lower_matches_sup = (at_star == sup);
    rep.interval = Interval<T>{at_star, T(1)};
  } else {
    rep.interval = Interval<T>{sup, T(1)};
  }
  return rep;
}

// The lower-endpoint rationalization: atoms in which k loses at the k-maximal
// point get eps_k = -inf; everything else is kept. The result reproduces the
// field exactly and has Pr(eps_k > -inf) = sup p_k.
template <class T>
ArumEDistribution<T> witness_lower_endpoint(const ArumCsDistribution<T>& nu,
                                            const UtilityGrid<T>& grid, int k) {
  auto kmax = k_maximal_index(grid, k);
  if (!kmax) throw NoKMaximalPointError(k);
  const UtilityPoint<T>& u_star = grid[*kmax];
  ArumEDistribution<T> mu = cs_to_arum_e(nu);
  std::vector<EpsilonAtom<T>> atoms = mu.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atom_choice(atoms[i], u_star, i) != k)
      atoms[i].eps[static_cast<std::size_t>(k)] = ExtendedReal<T>::neg_infinity();
  }
  return ArumEDistribution<T>(std::move(atoms), "witness_lower_endpoint(" + model_digest(nu) + ")");
}

template <class T>
struct DiscontinuityRow {
  std::size_t rectangle_index = 0;
  std::size_t grid_size = 0;
  T sup_pk;
  T width;  // 1 - sup_pk
};

// Identified-interval widths along a growing family of rectangle grids. Each
// grid must be a Cartesian product containing a k-maximal point, and the
// coordinate ranges must be nested.
template <class T>
std::vector<DiscontinuityRow<T>> discontinuity_experiment(const Model<T>& model,
                                                          const std::vector<UtilityGrid<T>>& rectangles,
                                                          int k) {
  if (rectangles.empty()) throw ValidationError("discontinuity experiment needs >= 1 rectangle");
  for (std::size_t s = 0; s < rectangles.size(); ++s) {
    const auto& g = rectangles[s];
    if (!g.is_cartesian_product())
      throw NotCartesianProductError("rectangle " + std::to_string(s) +
                                     " is not a Cartesian product grid");
    if (s + 1 < rectangles.size()) {
      const auto& next = rectangles[s + 1];
      for (int d = 0; d < g.dim(); ++d) {
        T lo = g[0][static_cast<std::size_t>(d)], hi = lo;
        T nlo = next[0][static_cast<std::size_t>(d)], nhi = nlo;
        for (const auto& p : g.points()) {
          if (p[static_cast<std::size_t>(d)] < lo) lo = p[static_cast<std::size_t>(d)];
          if (p[static_cast<std::size_t>(d)] > hi) hi = p[static_cast<std::size_t>(d)];
        }
        for (const auto& p : next.points()) {
          if (p[static_cast<std::size_t>(d)] < nlo) nlo = p[static_cast<std::size_t>(d)];
          if (p[static_cast<std::size_t>(d)] > nhi) nhi = p[static_cast<std::size_t>(d)];
        }
        if (nlo > lo || nhi < hi)
          throw ValidationError("rectangles are not nested at index " + std::to_string(s + 1));
      }
    }
  }
  std::vector<DiscontinuityRow<T>> rows;
  rows.reserve(rectangles.size());
  for (std::size_t s = 0; s < rectangles.size(); ++s) {
    ChoiceProbField<T> field = choice_prob_field(model, rectangles[s]);
    ConsiderationBoundsReport<T> rep = consideration_identified_set(field, k);
    if (!rep.k_maximal_found) throw NoKMaximalPointError(k);
    DiscontinuityRow<T> row;
    row.rectangle_index = s;
    row.grid_size = rectangles[s].size();
    row.sup_pk = rep.sup_pk;
    row.width = T(1) - rep.sup_pk;
    rows.push_back(std::move(row));
  }
  return rows;
}

// max over the grid of sum_{k in B} p_k(u). A value < 1 on a grid approaching
// a simultaneously-extremely-attractive direction for B is evidence against
// full-consideration consistency.
template <class T>
T subset_attractiveness_diagnostic(const ChoiceProbField<T>& field, const std::vector<int>& subset) {
  if (subset.empty()) throw InvalidArgumentError("subset must be nonempty");
  for (int k : subset)
    if (k < 0 || k >= field.num_alternatives())
      throw InvalidArgumentError("subset index out of range");
  T best(0);
  for (std::size_t i = 0; i < field.grid().size(); ++i) {
    T s(0);
    for (int k : subset) s += field.at(i)[k];
    if (i == 0 || s > best) best = s;
  }
  return best;
}

// Identified set [sup_x ptilde_k(x), 1] over a covariate grid; requires the
// grid to be a Cartesian product of finite coordinate sets.
template <class T>
Interval<T> covariate_consideration_bounds(const ChoiceProbField<T>& ptilde, int k) {
  if (!ptilde.grid().is_cartesian_product())
    throw NotCartesianProductError("covariate grid is not a Cartesian product");
  auto [sup, arg] = sup_choice_prob(ptilde, k);
  (void)arg;
  return Interval<T>{sup, T(1)};
}

}  // namespace arum
