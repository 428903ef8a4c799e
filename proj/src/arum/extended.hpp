#pragma once

#include <compare>
#include <string>

#include "arum/scalar.hpp"

namespace arum {

// A real number or negative infinity. Positive infinity is unrepresentable by
// construction. NegInfinity + finite = NegInfinity; NegInfinity < Finite(x).
template <class T>
class ExtendedReal {
 public:
  ExtendedReal() : finite_(true), value_(T(0)) {}
  static ExtendedReal finite(T v) { return ExtendedReal(true, std::move(v)); }
  static ExtendedReal neg_infinity() { return ExtendedReal(false, T(0)); }

  bool is_finite() const { return finite_; }
  // Only meaningful when is_finite().
  const T& value() const { return value_; }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    if (!a.finite_) return b.finite_;
    if (!b.finite_) return false;
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtendedReal& a, const ExtendedReal& b) { return b < a; }
  friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) { return !(b < a); }
  friend bool operator>=(const ExtendedReal& a, const ExtendedReal& b) { return !(a < b); }
  friend bool operator!=(const ExtendedReal& a, const ExtendedReal& b) { return !(a == b); }

 private:
  ExtendedReal(bool finite, T value) : finite_(finite), value_(std::move(value)) {}
  bool finite_;
  T value_;
};

template <class T>
ExtendedReal<T> extended_add(const ExtendedReal<T>& a, const T& b) {
  if (!a.is_finite()) return ExtendedReal<T>::neg_infinity();
  return ExtendedReal<T>::finite(a.value() + b);
}

template <class T>
std::string extended_to_string(const ExtendedReal<T>& a) {
  return a.is_finite() ? scalar_traits<T>::str(a.value()) : std::string("-inf");
}

}  // namespace arum
