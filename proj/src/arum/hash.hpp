#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "arum/model.hpp"

namespace arum {

// FNV-1a, 64-bit. Used for artifact manifests and provenance tags; not
// collision-resistant and not meant to be.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

inline std::string fnv1a64_hex(std::string_view data) { return hex64(fnv1a64(data)); }

namespace detail {

template <class T>
std::string atom_digest_text(const EpsilonAtom<T>& a) {
  std::string s = "w=" + scalar_traits<T>::str(a.weight) + ";e=";
  for (const auto& e : a.eps) s += extended_to_string(e) + ",";
  return s;
}

template <class T>
std::string atom_digest_text(const ConsiderationAtom<T>& a) {
  std::string s = "w=" + scalar_traits<T>::str(a.weight) + ";e=";
  for (const auto& e : a.eps) s += scalar_traits<T>::str(e) + ",";
  s += ";S=";
  for (int j : a.consideration) s += std::to_string(j) + ",";
  return s;
}

}  // namespace detail

// Short content hash identifying a distribution, used in provenance strings.
template <class D>
std::string model_digest(const D& dist) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& a : dist.atoms()) h = fnv1a64(detail::atom_digest_text(a), h);
  return hex64(h);
}

}  // namespace arum
