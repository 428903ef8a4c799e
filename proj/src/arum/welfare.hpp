#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "arum/attention.hpp"
#include "arum/engine.hpp"
#include "arum/gumbel.hpp"
#include "arum/quadrature.hpp"

namespace arum {

// max_k | p_k(u) - (V(u + h e_k) - V(u - h e_k)) / (2h) |, the envelope-theorem
// residual. In rational mode this is exact and equals 0 for a finite model once
// h is below every winning margin (V is locally linear).
template <class T>
T envelope_deviation(const Model<T>& model, const UtilityPoint<T>& u, const T& h) {
  if (!(h > T(0))) throw InvalidArgumentError("step h must be positive");
  SimplexVector<T> p = choice_prob(model, u);
  T worst(0);
  for (int k = 0; k < p.size(); ++k) {
    UtilityPoint<T> up = u;
    UtilityPoint<T> dn = u;
    up[static_cast<std::size_t>(k)] += h;
    dn[static_cast<std::size_t>(k)] -= h;
    T diff = (social_surplus(model, up) - social_surplus(model, dn)) / (T(2) * h);
    T dev = abs_value<T>(p[k] - diff);
    if (dev > worst) worst = dev;
  }
  return worst;
}

// Gumbel closed-form variant: p = softmax, V = logsumexp - log K.
double envelope_deviation_gumbel(const UtilityPoint<double>& u, double h);

// Direct social-surplus difference V(u_tilde) - V(u).
template <class T>
T welfare_change_exact(const Model<T>& model, const UtilityPoint<T>& u,
                       const UtilityPoint<T>& u_tilde) {
  return social_surplus(model, u_tilde) - social_surplus(model, u);
}

// Composite Gauss-Legendre quadrature of the path integral
//   Delta = int_0^1 p(t u_tilde + (1 - t) u) . (u_tilde - u) dt
// using only a probability evaluator, so it is a functional of the field
// alone: any rationalization of the same probabilities gives the same value.
double welfare_change_path_integral(
    const std::function<std::vector<double>(const std::vector<double>&)>& prob_evaluator,
    const UtilityPoint<double>& u, const UtilityPoint<double>& u_tilde, int panels);

// Exact tie parameters of a finite model along the segment u -> u_tilde:
// values t in (0,1) where some atom's feasible alternatives swap rank. The
// integrand is constant between consecutive kinks.
std::vector<double> path_kinks(const Model<double>& model, const UtilityPoint<double>& u,
                               const UtilityPoint<double>& u_tilde);

// Kink-aware path integral for finite models: panels are split at the exact
// kink parameters, so the piecewise-constant integrand is integrated to
// machine precision.
double welfare_change_path_integral(const Model<double>& model, const UtilityPoint<double>& u,
                                    const UtilityPoint<double>& u_tilde, int panels);

// Identified set for the welfare change of a k-attention intervention.
struct WelfareSet {
  enum class Kind { PointZero, UnboundedAbove } kind;
  // Both carry lower endpoint 0; UnboundedAbove is the tagged set [0, inf).
};

// PointZero iff sup p_k = 1; UnboundedAbove when sup p_k < 1 and the grid has
// a k-maximal point. Throws NoKMaximalPointError when neither hypothesis
// holds.
template <class T>
WelfareSet attention_welfare_set(const ChoiceProbField<T>& field, int k) {
  T sup = sup_choice_prob(field, k).first;
  if (sup == T(1)) return WelfareSet{WelfareSet::Kind::PointZero};
  if (!k_maximal_index(field.grid(), k)) throw NoKMaximalPointError(k);
  return WelfareSet{WelfareSet::Kind::UnboundedAbove};
}

template <class T>
struct UnboundedWitnessReport {
  ArumCsDistribution<T> witness;
  UtilityPoint<T> u_eval;
  T gamma;          // Pr(k not considered) under the witness
  T shift;          // translation m applied to eps_k on {k not in S}
  T achieved_gain;  // V(u_eval, S union {k}) - V(u_eval, S) under the witness
  T gain_lower_bound;  // c * gamma
};

// Witness for the unbounded branch: on the event {k not in S}, eps_k is
// translated up by m = max(0, shift making k win at u_eval with unit margin)
// + c. The pre-intervention field is untouched (eps_k is payoff-irrelevant
// off the consideration set) while the k-attention intervention gains at
// least c per unit of unconsidered mass.
template <class T>
UnboundedWitnessReport<T> unbounded_welfare_witness(const ArumCsDistribution<T>& nu,
                                                    const UtilityGrid<T>& grid, int k, const T& c,
                                                    std::optional<UtilityPoint<T>> u_eval = {}) {
  if (k < 0 || k >= nu.num_alternatives())
    throw InvalidArgumentError("alternative index out of range");
  if (c < T(0)) throw InvalidArgumentError("target gain must be nonnegative");

  UtilityPoint<T> u;
  if (u_eval) {
    u = *u_eval;
    if (static_cast<int>(u.size()) != grid.dim())
      throw InvalidArgumentError("evaluation point has wrong dimension");
  } else if (auto idx = k_maximal_index(grid, k)) {
    u = grid[*idx];
  } else {
    u = grid[0];
  }

  // A rationalization with unconsidered mass for k: nu itself when possible,
  // else the lower-endpoint construction.
  ArumCsDistribution<T> base = nu;
  T considered = consideration_prob_of(Model<T>(base), k);
  if (considered == T(1)) {
    base = arum_e_to_cs(witness_lower_endpoint(nu, grid, k));
    considered = consideration_prob_of(Model<T>(base), k);
    if (considered == T(1)) throw FullConsiderationError(k);
  }
  T gamma = T(1) - considered;

  // Smallest shift making k win at u_eval (unit margin) among atoms with
  // k unconsidered.
  T needed(0);
  for (const auto& a : base.atoms()) {
    if (a.considers(k)) continue;
    for (int j : a.consideration) {
      T v = u[static_cast<std::size_t>(j)] + a.eps[static_cast<std::size_t>(j)] -
            (u[static_cast<std::size_t>(k)] + a.eps[static_cast<std::size_t>(k)]) + T(1);
      if (v > needed) needed = v;
    }
  }
  T shift = (c == T(0)) ? T(0) : needed + c;

  std::vector<ConsiderationAtom<T>> atoms = base.atoms();
  for (auto& a : atoms)
    if (!a.considers(k)) a.eps[static_cast<std::size_t>(k)] += shift;
  ArumCsDistribution<T> witness(std::move(atoms),
                                "unbounded_welfare_witness(k=" + std::to_string(k) + "," +
                                    model_digest(nu) + ")");

  UnboundedWitnessReport<T> rep{
      witness, u, gamma, shift,
      social_surplus(Model<T>(attention_intervention_apply(witness, k)), u) -
          social_surplus(Model<T>(witness), u),
      c * gamma};
  return rep;
}

}  // namespace arum
