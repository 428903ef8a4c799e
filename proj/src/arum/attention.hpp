#pragma once

#include <optional>
#include <vector>

#include "arum/identification.hpp"

namespace arum {

// k-attention intervention: every consideration set gains k; shocks and
// weights unchanged.
template <class T>
ArumCsDistribution<T> attention_intervention_apply(const ArumCsDistribution<T>& nu, int k) {
  if (k < 0 || k >= nu.num_alternatives())
    throw InvalidArgumentError("alternative index out of range");
  std::vector<ConsiderationAtom<T>> atoms = nu.atoms();
  for (auto& a : atoms)
    if (!a.considers(k)) a.consideration.push_back(k);
  return ArumCsDistribution<T>(std::move(atoms),
                               "attention_intervention(k=" + std::to_string(k) + "," +
                                   model_digest(nu) + ")");
}

template <class T>
struct AttentionChangeReport {
  int k = 0;
  T sup_pk;
  T lower;  // always 0
  T upper;  // 1 - sup p_k
  // Present when a rationalizing distribution was supplied: a rationalization
  // of the same field whose k-attention intervention realizes the upper bound.
  std::optional<ArumCsDistribution<T>> witness;
  std::vector<T> per_point_change;  // witness post-intervention p_k minus field p_k
  std::optional<T> realized_max_change;
};

// Identified set [0, 1 - sup p_k] for the maximal change in p_k under a
// k-attention intervention. With a rationalization nu of the field, also
// constructs the witness: a rationalization with Pr(k in S) = sup p_k whose
// unconsidered atoms get eps_k raised high enough that k wins everywhere on
// the grid once considered (unit margin).
template <class T>
AttentionChangeReport<T> attention_max_change_set(const ChoiceProbField<T>& field, int k,
                                                  const std::optional<ArumCsDistribution<T>>& nu) {
  const UtilityGrid<T>& grid = field.grid();
  if (!k_maximal_index(grid, k)) throw NoKMaximalPointError(k);
  AttentionChangeReport<T> rep;
  rep.k = k;
  rep.sup_pk = sup_choice_prob(field, k).first;
  rep.lower = T(0);
  rep.upper = T(1) - rep.sup_pk;
  if (!nu) return rep;

  if (!(choice_prob_field(Model<T>(*nu), grid) == field))
    throw ValidationError("supplied distribution does not rationalize the field");

  // Rationalization attaining Pr(k in S) = sup p_k.
  ArumCsDistribution<T> base = arum_e_to_cs(witness_lower_endpoint(*nu, grid, k));
  std::vector<ConsiderationAtom<T>> atoms = base.atoms();
  for (auto& a : atoms) {
    if (a.considers(k)) continue;
    // u_k + eps_k > u_j + eps_j for every grid point and considered j.
    bool first = true;
    T needed(0);
    for (const auto& u : grid.points()) {
      for (int j : a.consideration) {
        T v = u[static_cast<std::size_t>(j)] + a.eps[static_cast<std::size_t>(j)] -
              u[static_cast<std::size_t>(k)];
        if (first || v > needed) needed = v;
        first = false;
      }
    }
    a.eps[static_cast<std::size_t>(k)] = needed + T(1);
  }
  ArumCsDistribution<T> witness(std::move(atoms), "attention_witness(" + model_digest(*nu) + ")");

  ChoiceProbField<T> post =
      choice_prob_field(Model<T>(attention_intervention_apply(witness, k)), grid);
  rep.per_point_change.reserve(grid.size());
  T max_change(0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    T d = post.at(i)[k] - field.at(i)[k];
    if (i == 0 || d > max_change) max_change = d;
    rep.per_point_change.push_back(std::move(d));
  }
  rep.realized_max_change = max_change;
  rep.witness = std::move(witness);
  return rep;
}

}  // namespace arum
