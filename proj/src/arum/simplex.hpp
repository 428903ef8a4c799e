#pragma once

#include <vector>

#include "arum/scalar.hpp"

namespace arum {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> x;
};

// min c.x subject to A x = b, x >= 0, in exact rational arithmetic.
// Two-phase tableau simplex with Bland's rule throughout: deterministic,
// cycle-free, bit-exact. Redundant equality rows are detected after phase 1
// and dropped.
LpSolution solve_lp_min(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                        const std::vector<Rational>& c);

LpSolution solve_lp_max(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                        const std::vector<Rational>& c);

}  // namespace arum
