#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arum/domain.hpp"
#include "arum/extended.hpp"
#include "arum/model.hpp"
#include "arum/simplex.hpp"

namespace arum {

// A candidate support point whose weight is an LP variable. For the CS class
// the consideration set is present and eps is all-finite; otherwise eps may
// carry -inf coordinates (extended class only).
struct CandidateAtom {
  std::vector<ExtendedReal<Rational>> eps;
  std::optional<std::vector<int>> consideration;
};

// Feasibility system: nonnegative weights over the atom family, summing to 1,
// reproducing the field at every grid point. The objective is the implied
// choice probability of one alternative at the counterfactual point.
class LpCounterfactualProblem {
 public:
  LpCounterfactualProblem(UtilityGrid<Rational> grid, ChoiceProbField<Rational> field,
                          UtilityPoint<Rational> u_c, std::vector<CandidateAtom> family,
                          ModelClass model_class);

  const UtilityGrid<Rational>& grid() const { return grid_; }
  const ChoiceProbField<Rational>& field() const { return field_; }
  const UtilityPoint<Rational>& counterfactual_point() const { return u_c_; }
  const std::vector<CandidateAtom>& family() const { return family_; }
  ModelClass model_class() const { return model_class_; }

  // Chosen alternative of family atom `a` at point u (precomputed; tie-free by
  // construction).
  int choice_at_grid(std::size_t a, std::size_t point_index) const {
    return choices_[a][point_index];
  }
  int choice_at_counterfactual(std::size_t a) const { return choices_[a].back(); }

 private:
  UtilityGrid<Rational> grid_;
  ChoiceProbField<Rational> field_;
  UtilityPoint<Rational> u_c_;
  std::vector<CandidateAtom> family_;
  ModelClass model_class_;
  std::vector<std::vector<int>> choices_;  // per atom: grid points then u_c
};

struct LpBoundsResult {
  Interval<Rational> interval;
  std::vector<Rational> weights_at_min;  // feasible weight vectors attaining each endpoint
  std::vector<Rational> weights_at_max;
};

// [min, max] of the counterfactual choice probability of alternative k over
// all feasible weightings of the atom family. Exact rational simplex with
// Bland's rule; throws InfeasibleError when the family cannot reproduce the
// field (an under-rich support, not a model rejection).
LpBoundsResult lp_counterfactual_bounds(const LpCounterfactualProblem& problem, int k);

// Rectangular atom family: the Cartesian product of the axis values per
// coordinate. For the extended class the family also contains every projection
// with a nonempty proper subset of coordinates masked to -inf; for the CS
// class those projections appear as (eps with zeros, consideration set) pairs.
// Atoms that tie at any grid point or at u_c are filtered out.
std::vector<CandidateAtom> make_rect_atom_family(const std::vector<std::vector<Rational>>& axis_values,
                                                 ModelClass model_class,
                                                 const UtilityGrid<Rational>& grid,
                                                 const UtilityPoint<Rational>& u_c);

}  // namespace arum
