#include "arum/lp_counterfactual.hpp"

#include <algorithm>

#include "arum/engine.hpp"

namespace arum {

namespace {

// Unique argmax of u_j + eps_j over the atom's feasible set; -1 on a tie.
int candidate_choice(const CandidateAtom& atom, const UtilityPoint<Rational>& u) {
  std::vector<int> feasible;
  if (atom.consideration) {
    feasible = *atom.consideration;
  } else {
    for (int j = 0; j < static_cast<int>(atom.eps.size()); ++j)
      if (atom.eps[static_cast<std::size_t>(j)].is_finite()) feasible.push_back(j);
  }
  int best = -1;
  bool tied = false;
  ExtendedReal<Rational> best_val = ExtendedReal<Rational>::neg_infinity();
  for (int j : feasible) {
    ExtendedReal<Rational> v =
        extended_add(atom.eps[static_cast<std::size_t>(j)], u[static_cast<std::size_t>(j)]);
    if (!v.is_finite()) continue;
    if (best < 0 || v > best_val) {
      best = j;
      best_val = v;
      tied = false;
    } else if (v == best_val) {
      tied = true;
    }
  }
  return tied ? -1 : best;
}

void validate_candidate(const CandidateAtom& atom, std::size_t index, ModelClass model_class,
                        int dim) {
  if (static_cast<int>(atom.eps.size()) != dim)
    throw ValidationError("atom family entry " + std::to_string(index) + " has wrong dimension");
  bool any_finite = false;
  for (const auto& e : atom.eps) any_finite = any_finite || e.is_finite();
  if (!any_finite)
    throw ValidationError("atom family entry " + std::to_string(index) + " has no finite coordinate");
  switch (model_class) {
    case ModelClass::Arum:
      for (const auto& e : atom.eps)
        if (!e.is_finite())
          throw ValidationError("arum atom family entry " + std::to_string(index) +
                                " has a -inf coordinate");
      break;
    case ModelClass::ArumE:
      break;
    case ModelClass::ArumCs:
      if (!atom.consideration || atom.consideration->empty())
        throw ValidationError("arum_cs atom family entry " + std::to_string(index) +
                              " needs a nonempty consideration set");
      for (const auto& e : atom.eps)
        if (!e.is_finite())
          throw ValidationError("arum_cs atom family entry " + std::to_string(index) +
                                " must have finite shocks");
      break;
  }
}

}  // namespace

LpCounterfactualProblem::LpCounterfactualProblem(UtilityGrid<Rational> grid,
                                                 ChoiceProbField<Rational> field,
                                                 UtilityPoint<Rational> u_c,
                                                 std::vector<CandidateAtom> family,
                                                 ModelClass model_class)
    : grid_(std::move(grid)),
      field_(std::move(field)),
      u_c_(std::move(u_c)),
      family_(std::move(family)),
      model_class_(model_class) {
  if (!(field_.grid().points() == grid_.points()))
    throw ValidationError("field grid does not match problem grid");
  if (field_.num_alternatives() != grid_.dim())
    throw ValidationError("field alternative count does not match grid dimension");
  if (static_cast<int>(u_c_.size()) != grid_.dim())
    throw ValidationError("counterfactual point has wrong dimension");
  if (grid_.index_of(u_c_))
    throw ValidationError("counterfactual point already lies on the grid");
  if (family_.empty()) throw ValidationError("atom family is empty");

  choices_.reserve(family_.size());
  for (std::size_t a = 0; a < family_.size(); ++a) {
    validate_candidate(family_[a], a, model_class_, grid_.dim());
    std::vector<int> ch;
    ch.reserve(grid_.size() + 1);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      int c = candidate_choice(family_[a], grid_[i]);
      if (c < 0) throw ArgmaxTieError(a, point_to_string(grid_[i]));
      ch.push_back(c);
    }
    int c = candidate_choice(family_[a], u_c_);
    if (c < 0) throw ArgmaxTieError(a, point_to_string(u_c_));
    ch.push_back(c);
    choices_.push_back(std::move(ch));
  }
}

LpBoundsResult lp_counterfactual_bounds(const LpCounterfactualProblem& problem, int k) {
  const int dim = problem.grid().dim();
  if (k < 0 || k >= dim) throw InvalidArgumentError("alternative index out of range");
  const std::size_t n = problem.family().size();
  const std::size_t npts = problem.grid().size();

  // Rows: total mass, then per grid point the first K-1 alternatives (the last
  // one is implied by the simplex identity).
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  a.emplace_back(n, Rational(1));
  b.push_back(Rational(1));
  for (std::size_t i = 0; i < npts; ++i) {
    for (int alt = 0; alt + 1 < dim; ++alt) {
      std::vector<Rational> row(n, Rational(0));
      for (std::size_t j = 0; j < n; ++j)
        if (problem.choice_at_grid(j, i) == alt) row[j] = 1;
      a.push_back(std::move(row));
      b.push_back(problem.field().at(i)[alt]);
    }
  }

  std::vector<Rational> c(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    if (problem.choice_at_counterfactual(j) == k) c[j] = 1;

  LpSolution lo = solve_lp_min(a, b, c);
  if (lo.status == LpStatus::Infeasible)
    throw InfeasibleError("atom family cannot reproduce the field on the grid");
  LpSolution hi = solve_lp_max(a, b, c);
  if (lo.status != LpStatus::Optimal || hi.status != LpStatus::Optimal)
    throw Error(ErrorCode::Internal, "lp: bounded objective reported unbounded");

  LpBoundsResult result;
  result.interval = Interval<Rational>{lo.objective, hi.objective};
  result.weights_at_min = std::move(lo.x);
  result.weights_at_max = std::move(hi.x);
  return result;
}

std::vector<CandidateAtom> make_rect_atom_family(const std::vector<std::vector<Rational>>& axis_values,
                                                 ModelClass model_class,
                                                 const UtilityGrid<Rational>& grid,
                                                 const UtilityPoint<Rational>& u_c) {
  const int dim = static_cast<int>(axis_values.size());
  if (dim != grid.dim()) throw ValidationError("atom family dimension does not match grid");
  for (const auto& vals : axis_values)
    if (vals.empty()) throw ValidationError("atom family axis has no values");

  // Masks in increasing popcount order: the all-finite block first, then the
  // -inf-augmented projections (extended/CS classes only).
  std::vector<unsigned> masks;
  const unsigned full = (1u << dim) - 1u;
  if (model_class == ModelClass::Arum) {
    masks.push_back(full);
  } else {
    std::vector<unsigned> all;
    for (unsigned m = 1; m <= full; ++m) all.push_back(m);
    std::stable_sort(all.begin(), all.end(), [](unsigned x, unsigned y) {
      return __builtin_popcount(x) > __builtin_popcount(y);
    });
    masks = std::move(all);
  }

  std::vector<CandidateAtom> family;
  for (unsigned mask : masks) {
    std::vector<int> live;
    for (int d = 0; d < dim; ++d)
      if (mask & (1u << d)) live.push_back(d);
    // Cartesian product over the live coordinates.
    std::vector<std::size_t> idx(live.size(), 0);
    for (;;) {
      CandidateAtom atom;
      atom.eps.assign(static_cast<std::size_t>(dim), ExtendedReal<Rational>::neg_infinity());
      for (std::size_t t = 0; t < live.size(); ++t)
        atom.eps[static_cast<std::size_t>(live[t])] =
            ExtendedReal<Rational>::finite(axis_values[static_cast<std::size_t>(live[t])][idx[t]]);
      if (model_class == ModelClass::ArumCs) {
        for (auto& e : atom.eps)
          if (!e.is_finite()) e = ExtendedReal<Rational>::finite(Rational(0));
        atom.consideration = live;
      }
      bool ties = candidate_choice(atom, u_c) < 0;
      for (std::size_t i = 0; i < grid.size() && !ties; ++i)
        ties = candidate_choice(atom, grid[i]) < 0;
      if (!ties) family.push_back(std::move(atom));

      bool done = false;
      std::size_t d = live.size();
      for (;;) {
        if (d == 0) {
          done = true;
          break;
        }
        --d;
        if (++idx[d] < axis_values[static_cast<std::size_t>(live[d])].size()) break;
        idx[d] = 0;
      }
      if (done) break;
    }
  }
  return family;
}

}  // namespace arum
