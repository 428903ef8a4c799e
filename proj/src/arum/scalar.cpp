#include "arum/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace arum {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// Parses a decimal literal with optional sign, fraction part, and exponent.
Rational parse_decimal(std::string_view s) {
  std::string_view rest = s;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }

  long exp10 = 0;
  if (auto epos = rest.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view es = rest.substr(epos + 1);
    rest = rest.substr(0, epos);
    bool eneg = false;
    if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) throw ParseError("bad exponent in number '" + std::string(s) + "'");
    for (char c : es) exp10 = exp10 * 10 + (c - '0');
    if (eneg) exp10 = -exp10;
  }

  std::string digits;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    std::string_view ip = rest.substr(0, dot);
    std::string_view fp = rest.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw ParseError("malformed number '" + std::string(s) + "'");
    if (!ip.empty() && !all_digits(ip)) throw ParseError("malformed number '" + std::string(s) + "'");
    if (!fp.empty() && !all_digits(fp)) throw ParseError("malformed number '" + std::string(s) + "'");
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(rest)) throw ParseError("malformed number '" + std::string(s) + "'");
    digits = std::string(rest);
  }
  if (digits.empty()) throw ParseError("malformed number '" + std::string(s) + "'");

  // cpp_int reads a leading 0 as an octal prefix; strip redundant zeros.
  std::size_t nz = digits.find_first_not_of('0');
  digits = (nz == std::string::npos) ? "0" : digits.substr(nz);
  BigInt mantissa(digits);
  if (negative) mantissa = -mantissa;
  BigInt num = mantissa;
  BigInt den = 1;
  if (exp10 >= 0) {
    for (long i = 0; i < exp10; ++i) num *= 10;
  } else {
    for (long i = 0; i < -exp10; ++i) den *= 10;
  }
  return Rational(num, den);
}

}  // namespace

Rational rational_from_string(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty number literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(s.substr(0, slash));
    Rational den = parse_decimal(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    return num / den;
  }
  return parse_decimal(s);
}

std::string rational_to_string(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();

  // Terminating decimal iff den = 2^a * 5^b.
  BigInt d = den;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return num.str() + "/" + den.str();

  int shift = std::max(twos, fives);
  BigInt scaled = num;
  for (int i = 0; i < shift - twos; ++i) scaled *= 2;
  for (int i = 0; i < shift - fives; ++i) scaled *= 5;
  // scaled / 10^shift is the exact decimal value.
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  std::string out;
  if (static_cast<int>(digits.size()) <= shift) {
    out = "0." + std::string(shift - digits.size(), '0') + digits;
  } else {
    out = digits.substr(0, digits.size() - shift) + "." + digits.substr(digits.size() - shift);
  }
  // The fraction is in lowest terms, so the last decimal digit is nonzero.
  return negative ? "-" + out : out;
}

double rational_to_double(const Rational& r) {
  return r.convert_to<double>();
}

std::string double_to_string(double v) {
  if (v == 0.0) return "0";  // normalizes -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace arum
