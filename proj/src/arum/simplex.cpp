#include "arum/simplex.hpp"

#include <cstddef>

#include "arum/errors.hpp"

namespace arum {

namespace {

using Row = std::vector<Rational>;

// Tableau layout: n structural columns, then m artificial columns, then the
// right-hand side. basis[i] is the column basic in row i.
struct Tableau {
  std::vector<Row> rows;
  Row cost;  // reduced costs; cost.back() holds minus the objective value
  std::vector<int> basis;
  std::size_t n_struct = 0;

  std::size_t width() const { return cost.size(); }
  std::size_t rhs() const { return cost.size() - 1; }

  void pivot(std::size_t r, std::size_t c) {
    Row& prow = rows[r];
    Rational inv = Rational(1) / prow[c];
    for (auto& v : prow) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      Rational f = rows[i][c];
      if (f == 0) continue;
      for (std::size_t j = 0; j < width(); ++j) rows[i][j] -= f * prow[j];
    }
    Rational f = cost[c];
    if (f != 0)
      for (std::size_t j = 0; j < width(); ++j) cost[j] -= f * prow[j];
    basis[r] = static_cast<int>(c);
  }

  // Bland: lowest-index column with negative reduced cost among the first
  // `allowed` columns; lowest-basic-index tie-break in the ratio test.
  LpStatus iterate(std::size_t allowed) {
    for (;;) {
      std::size_t enter = width();
      for (std::size_t j = 0; j < allowed; ++j) {
        if (cost[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == width()) return LpStatus::Optimal;

      std::size_t leave = rows.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        Rational ratio = rows[i][rhs()] / rows[i][enter];
        if (leave == rows.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows.size()) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution solve_lp_min(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                        const std::vector<Rational>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw InvalidArgumentError("lp: rhs size does not match row count");
  for (const auto& row : a)
    if (row.size() != n) throw InvalidArgumentError("lp: row width does not match cost vector");

  Tableau t;
  t.n_struct = n;
  t.rows.resize(m, Row(n + m + 1, Rational(0)));
  t.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = flip ? -a[i][j] : a[i][j];
    t.rows[i][n + i] = 1;
    t.rows[i][n + m] = flip ? -b[i] : b[i];
    t.basis[i] = static_cast<int>(n + i);
  }

  // Phase 1: minimize the sum of artificials. With the artificial basis the
  // reduced costs are the negated column sums.
  t.cost.assign(n + m + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n + m; ++j)
      if (j < n || j == n + m) t.cost[j] -= t.rows[i][j];
  if (t.iterate(n) == LpStatus::Unbounded)
    throw Error(ErrorCode::Internal, "lp: phase 1 unbounded");
  if (-t.cost[t.rhs()] != 0) {
    LpSolution sol;
    sol.status = LpStatus::Infeasible;
    return sol;
  }

  // Drive basic artificials out; a row with no structural pivot is redundant.
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < static_cast<int>(n)) {
      ++i;
      continue;
    }
    std::size_t piv = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (t.rows[i][j] != 0) {
        piv = j;
        break;
      }
    }
    if (piv < n) {
      t.pivot(i, piv);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  // Phase 2 reduced costs for the structural objective.
  t.cost.assign(n + m + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) t.cost[j] = c[j];
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    Rational cb = c[static_cast<std::size_t>(t.basis[i])];
    if (cb == 0) continue;
    for (std::size_t j = 0; j <= n + m; ++j) t.cost[j] -= cb * t.rows[i][j];
  }
  LpStatus st = t.iterate(n);
  if (st == LpStatus::Unbounded) {
    LpSolution sol;
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.basis[i] < static_cast<int>(n))
      sol.x[static_cast<std::size_t>(t.basis[i])] = t.rows[i][t.rhs()];
  sol.objective = -t.cost[t.rhs()];
  return sol;
}

LpSolution solve_lp_max(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                        const std::vector<Rational>& c) {
  std::vector<Rational> neg(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) neg[j] = -c[j];
  LpSolution sol = solve_lp_min(a, b, neg);
  if (sol.status == LpStatus::Optimal) sol.objective = -sol.objective;
  return sol;
}

}  // namespace arum
