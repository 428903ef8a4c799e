#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arum/errors.hpp"
#include "arum/scalar.hpp"

namespace arum {

// A vector of utility indices; all coordinates finite.
template <class T>
using UtilityPoint = std::vector<T>;

template <class T>
std::string point_to_string(const UtilityPoint<T>& u) {
  std::string out = "(";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += ", ";
    out += scalar_traits<T>::str(u[i]);
  }
  return out + ")";
}

// One axis of a rectangular grid: lo, lo+step, ..., up to hi.
template <class T>
struct AxisSpec {
  T lo;
  T hi;
  T step;
};

// Finite ordered set of utility points sharing one dimension. Order is
// significant: every "first match" tie-break in the library refers to it.
template <class T>
class UtilityGrid {
 public:
  UtilityGrid(int dim, std::vector<UtilityPoint<T>> points) : dim_(dim), points_(std::move(points)) {
    if (dim_ < 1) throw ValidationError("grid dimension must be >= 1");
    if (points_.empty()) throw ValidationError("grid must contain at least one point");
    for (const auto& p : points_) {
      if (static_cast<int>(p.size()) != dim_)
        throw ValidationError("grid point dimension mismatch");
    }
    std::set<std::vector<T>> seen;
    for (const auto& p : points_) {
      if (!seen.insert(p).second) throw ValidationError("duplicate grid point " + point_to_string(p));
    }
  }

  // Cartesian product of the axis value lists, lexicographic order with the
  // last coordinate varying fastest.
  static UtilityGrid rectangular(const std::vector<std::vector<T>>& axis_values) {
    int dim = static_cast<int>(axis_values.size());
    if (dim < 1) throw ValidationError("rectangular grid needs at least one axis");
    std::size_t total = 1;
    for (const auto& vals : axis_values) {
      if (vals.empty()) throw ValidationError("rectangular grid axis has no values");
      total *= vals.size();
    }
    std::vector<UtilityPoint<T>> pts;
    pts.reserve(total);
    std::vector<std::size_t> idx(dim, 0);
    for (std::size_t n = 0; n < total; ++n) {
      UtilityPoint<T> p(dim);
      for (int d = 0; d < dim; ++d) p[d] = axis_values[d][idx[d]];
      pts.push_back(std::move(p));
      for (int d = dim - 1; d >= 0; --d) {
        if (++idx[d] < axis_values[d].size()) break;
        idx[d] = 0;
      }
    }
    return UtilityGrid(dim, std::move(pts));
  }

  static std::vector<T> axis_from_spec(const AxisSpec<T>& spec) {
    if (spec.step <= T(0)) throw ValidationError("axis step must be positive");
    if (spec.hi < spec.lo) throw ValidationError("axis hi < lo");
    std::vector<T> vals;
    for (long i = 0;; ++i) {
      T v = spec.lo + scalar_traits<T>::from_int(i) * spec.step;
      if (v > spec.hi) break;
      vals.push_back(std::move(v));
    }
    return vals;
  }

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const UtilityPoint<T>& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<UtilityPoint<T>>& points() const { return points_; }

  std::optional<std::size_t> index_of(const UtilityPoint<T>& p) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (points_[i] == p) return i;
    return std::nullopt;
  }

  // True iff the point set is exactly the Cartesian product of its
  // per-coordinate value sets.
  bool is_cartesian_product() const {
    std::vector<std::set<T>> values(dim_);
    for (const auto& p : points_)
      for (int d = 0; d < dim_; ++d) values[d].insert(p[d]);
    std::size_t expect = 1;
    for (const auto& vs : values) expect *= vs.size();
    return expect == points_.size();  // points are distinct by construction
  }

 private:
  int dim_;
  std::vector<UtilityPoint<T>> points_;
};

// First grid point u* with u*_k - u*_j >= w_k - w_j for every grid point w and
// every alternative j; nullopt when no point dominates in all differences.
template <class T>
std::optional<std::size_t> k_maximal_index(const UtilityGrid<T>& grid, int k) {
  if (k < 0 || k >= grid.dim()) throw InvalidArgumentError("alternative index out of range");
  std::vector<T> max_diff(grid.dim());
  bool first = true;
  for (const auto& w : grid.points()) {
    for (int j = 0; j < grid.dim(); ++j) {
      T d = w[k] - w[j];
      if (first || d > max_diff[j]) max_diff[j] = d;
    }
    first = false;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& u = grid[i];
    bool ok = true;
    for (int j = 0; j < grid.dim() && ok; ++j) ok = (u[k] - u[j] >= max_diff[j]);
    if (ok) return i;
  }
  return std::nullopt;
}

template <class T>
std::optional<UtilityPoint<T>> k_maximal_point(const UtilityGrid<T>& grid, int k) {
  auto idx = k_maximal_index(grid, k);
  if (!idx) return std::nullopt;
  return grid[*idx];
}

// max over grid points and alternative pairs (j, k) of |u_k - u_j|.
template <class T>
T utility_difference_bound(const UtilityGrid<T>& grid) {
  T best(0);
  for (const auto& u : grid.points())
    for (int k = 0; k < grid.dim(); ++k)
      for (int j = 0; j < grid.dim(); ++j) {
        T d = abs_value<T>(u[k] - u[j]);
        if (d > best) best = d;
      }
  return best;
}

// Choice probabilities at one point: nonnegative, sums to 1 (exactly in
// rational mode, within 1e-12 in float mode).
template <class T>
class SimplexVector {
 public:
  explicit SimplexVector(std::vector<T> p) : p_(std::move(p)) {
    if (p_.empty()) throw ValidationError("empty probability vector");
    T sum(0);
    for (const auto& v : p_) {
      if (v < T(0) || v > T(1)) throw ValidationError("probability outside [0, 1]");
      sum += v;
    }
    if (abs_value<T>(sum - T(1)) > scalar_traits<T>::one_tolerance())
      throw ValidationError("probabilities do not sum to 1");
  }

  int size() const { return static_cast<int>(p_.size()); }
  const T& operator[](int k) const { return p_[static_cast<std::size_t>(k)]; }
  const std::vector<T>& values() const { return p_; }

  friend bool operator==(const SimplexVector& a, const SimplexVector& b) { return a.p_ == b.p_; }

 private:
  std::vector<T> p_;
};

// Map from each grid point to a simplex vector. The grid dimension may differ
// from the alternative count K (covariate fields); model-generated fields have
// both equal.
template <class T>
class ChoiceProbField {
 public:
  ChoiceProbField(UtilityGrid<T> grid, std::vector<SimplexVector<T>> probs)
      : grid_(std::move(grid)), probs_(std::move(probs)) {
    if (probs_.size() != grid_.size())
      throw ValidationError("field needs exactly one probability vector per grid point");
    for (const auto& p : probs_)
      if (p.size() != probs_.front().size())
        throw ValidationError("field probability vectors have mixed sizes");
  }

  const UtilityGrid<T>& grid() const { return grid_; }
  int num_alternatives() const { return probs_.front().size(); }
  const SimplexVector<T>& at(std::size_t i) const { return probs_[i]; }
  const std::vector<SimplexVector<T>>& probs() const { return probs_; }

  friend bool operator==(const ChoiceProbField& a, const ChoiceProbField& b) {
    return a.grid_.points() == b.grid_.points() && a.probs_ == b.probs_;
  }

 private:
  UtilityGrid<T> grid_;
  std::vector<SimplexVector<T>> probs_;
};

template <class T>
struct Interval {
  T lo;
  T hi;
  bool closed_lo = true;
  bool closed_hi = true;
};

}  // namespace arum
