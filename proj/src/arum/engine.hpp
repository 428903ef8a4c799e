#pragma once

#include <cstddef>
#include <vector>

#include "arum/model.hpp"

namespace arum {

namespace detail {

// Unique argmax of u_j + eps_j over the feasible alternatives. Throws
// ArgmaxTieError if two feasible alternatives tie at the max; the instance
// then violates the models' no-ties assumption.
template <class T>
int atom_choice(const std::vector<ExtendedReal<T>>& eps, const std::vector<int>& feasible,
                const UtilityPoint<T>& u, std::size_t atom_index) {
  int best = -1;
  ExtendedReal<T> best_val = ExtendedReal<T>::neg_infinity();
  bool tied = false;
  for (int j : feasible) {
    ExtendedReal<T> v = extended_add(eps[static_cast<std::size_t>(j)], u[static_cast<std::size_t>(j)]);
    if (!v.is_finite()) continue;  // -inf never attains the max (some coordinate is finite)
    if (best < 0 || v > best_val) {
      best = j;
      best_val = v;
      tied = false;
    } else if (v == best_val) {
      tied = true;
    }
  }
  if (tied) throw ArgmaxTieError(atom_index, point_to_string(u));
  return best;  // >= 0: every atom has a finite feasible coordinate
}

template <class T>
std::vector<int> all_alternatives(int k) {
  std::vector<int> v(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

template <class T>
std::vector<ExtendedReal<T>> lift_finite(const std::vector<T>& eps) {
  std::vector<ExtendedReal<T>> out;
  out.reserve(eps.size());
  for (const auto& e : eps) out.push_back(ExtendedReal<T>::finite(e));
  return out;
}

}  // namespace detail

// The alternative an atom picks at u: the unique maximizer of u_j + eps_j over
// the atom's feasible set (finite coordinates; the consideration set for CS).
template <class T>
int atom_choice(const EpsilonAtom<T>& atom, const UtilityPoint<T>& u, std::size_t atom_index) {
  std::vector<int> feasible;
  for (int j = 0; j < static_cast<int>(atom.eps.size()); ++j)
    if (atom.eps[static_cast<std::size_t>(j)].is_finite()) feasible.push_back(j);
  return detail::atom_choice(atom.eps, feasible, u, atom_index);
}

template <class T>
int atom_choice(const ConsiderationAtom<T>& atom, const UtilityPoint<T>& u, std::size_t atom_index) {
  return detail::atom_choice(detail::lift_finite(atom.eps), atom.consideration, u, atom_index);
}

// p_k(u) = total weight of atoms whose unique argmax equals k. Exact in
// rational mode: every atom contributes its weight to exactly one alternative.
template <class T>
SimplexVector<T> choice_prob(const Model<T>& model, const UtilityPoint<T>& u) {
  const int K = model_alternatives(model);
  if (static_cast<int>(u.size()) != K)
    throw InvalidArgumentError("utility point dimension does not match model");
  std::vector<T> p(static_cast<std::size_t>(K), T(0));
  std::visit(
      [&](const auto& dist) {
        const auto& atoms = dist.atoms();
        for (std::size_t i = 0; i < atoms.size(); ++i) {
          int k = atom_choice(atoms[i], u, i);
          p[static_cast<std::size_t>(k)] += atoms[i].weight;
        }
      },
      model);
  return SimplexVector<T>(std::move(p));
}

template <class T>
ChoiceProbField<T> choice_prob_field(const Model<T>& model, const UtilityGrid<T>& grid) {
  if (grid.dim() != model_alternatives(model))
    throw InvalidArgumentError("grid dimension does not match model");
  std::vector<SimplexVector<T>> probs;
  probs.reserve(grid.size());
  for (const auto& u : grid.points()) probs.push_back(choice_prob(model, u));
  return ChoiceProbField<T>(grid, std::move(probs));
}

namespace detail {

template <class T>
T atom_surplus(const EpsilonAtom<T>& atom, const UtilityPoint<T>& u) {
  ExtendedReal<T> best = ExtendedReal<T>::neg_infinity();
  ExtendedReal<T> best_eps = ExtendedReal<T>::neg_infinity();
  for (std::size_t j = 0; j < atom.eps.size(); ++j) {
    ExtendedReal<T> v = extended_add(atom.eps[j], u[j]);
    if (v > best) best = v;
    if (atom.eps[j] > best_eps) best_eps = atom.eps[j];
  }
  return best.value() - best_eps.value();
}

// Inner max restricted to the consideration set; the subtrahend maxes over all
// alternatives.
template <class T>
T atom_surplus(const ConsiderationAtom<T>& atom, const UtilityPoint<T>& u) {
  bool first = true;
  T best(0);
  for (int j : atom.consideration) {
    T v = atom.eps[static_cast<std::size_t>(j)] + u[static_cast<std::size_t>(j)];
    if (first || v > best) best = v;
    first = false;
  }
  T best_eps = atom.eps.front();
  for (const auto& e : atom.eps)
    if (e > best_eps) best_eps = e;
  return best - best_eps;
}

}  // namespace detail

// Social surplus V(u) = E[max_k (u_k + eps_k) - max_k eps_k], the CS variant
// restricting the first max to the consideration set. Exact weighted sum.
template <class T>
T social_surplus(const Model<T>& model, const UtilityPoint<T>& u) {
  if (static_cast<int>(u.size()) != model_alternatives(model))
    throw InvalidArgumentError("utility point dimension does not match model");
  return std::visit(
      [&](const auto& dist) {
        T v(0);
        for (const auto& atom : dist.atoms()) v += atom.weight * detail::atom_surplus(atom, u);
        return v;
      },
      model);
}

}  // namespace arum
