#pragma once

// Scalar policy shared by the exact (GMP rational) and float backends.

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

#include "errors.hpp"

namespace fracgame {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline constexpr double kDefaultTolerance = 1e-9;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
concept Scalar = std::is_same_v<T, Rational> || std::is_same_v<T, double>;

/// `a >= b`, exactly for rationals and as `a >= b - tol` for doubles.
template <Scalar T>
bool geq(const T& a, const T& b, double tol) {
  if constexpr (is_exact_v<T>) {
    return a >= b;
  } else {
    return a >= b - tol;
  }
}

template <Scalar T>
bool leq(const T& a, const T& b, double tol) {
  return geq(b, a, tol);
}

template <Scalar T>
bool approx_equal(const T& a, const T& b, double tol) {
  return geq(a, b, tol) && geq(b, a, tol);
}

template <Scalar T>
bool is_zero(const T& a) {
  return a == T(0);
}

template <Scalar T>
double to_double(const T& a) {
  if constexpr (is_exact_v<T>) {
    return a.template convert_to<double>();
  } else {
    return a;
  }
}

/// "p/q" (or "p" when integral) for rationals; shortest round-trip text for doubles.
template <Scalar T>
std::string to_string(const T& a) {
  if constexpr (is_exact_v<T>) {
    return a.str();
  } else {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, a);
    return std::string(buf, res.ptr);
  }
}

/// Parses "3/2", "-7", "1.25" or "2.5e-3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw ParseError("empty number");
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](char c) { return c >= '0' && c <= '9'; });
  };
  auto integer = [&](std::string_view s) {
    if (!is_int(s)) throw ParseError("malformed number '" + std::string(text) + "'");
    if (s.front() == '+') s.remove_prefix(1);
    return boost::multiprecision::mpz_int(std::string(s));
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = integer(trim(text.substr(0, slash)));
    auto den = integer(trim(text.substr(slash + 1)));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    auto exp_text = text.substr(e + 1);
    auto [ptr, ec] = std::from_chars(exp_text.data() + (exp_text.starts_with('+') ? 1 : 0),
                                     exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size())
      throw ParseError("malformed exponent in '" + std::string(text) + "'");
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    frac_digits = static_cast<long>(mantissa.size() - dot - 1);
    if (digits == "-" || digits == "+" || digits.empty()) throw ParseError("malformed number");
  } else {
    digits = std::string(mantissa);
  }
  Rational value(integer(digits));
  long shift = exponent - frac_digits;
  if (shift > 400 || shift < -400) throw ParseError("exponent out of range");
  Rational scale(boost::multiprecision::pow(boost::multiprecision::mpz_int(10),
                                            static_cast<unsigned>(shift < 0 ? -shift : shift)));
  return shift < 0 ? value / scale : value * scale;
}

/// Exact rational of the shortest decimal that round-trips `x` (0.1 -> 1/10).
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ParseError("non-finite number");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

template <Scalar T>
T scalar_from_rational(const Rational& r) {
  if constexpr (is_exact_v<T>) {
    return r;
  } else {
    return r.convert_to<double>();
  }
}

}  // namespace fracgame
