#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace flatband {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer rational_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer rational_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int rational_sign(const Rational& r) { return r.sign(); }

// Canonical form: lowest terms, positive denominator, "p/q" or plain integer.
inline std::string rational_to_string(const Rational& r) { return r.str(); }

// Strict parser for the wire format: optional '-', digits, optional '/digits'.
inline Rational parse_rational(const std::string& text) {
  const auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed rational: \"" + text + "\"");
  };
  if (text.empty()) fail();
  std::size_t i = 0;
  if (text[0] == '-') i = 1;
  std::size_t digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i, ++digits;
  if (digits == 0) fail();
  if (i == text.size()) return Rational(Integer(text));
  if (text[i] != '/') fail();
  const std::string num = text.substr(0, i);
  const std::string den = text.substr(i + 1);
  if (den.empty()) fail();
  for (char c : den)
    if (c < '0' || c > '9') fail();
  Integer d(den);
  if (d == 0) throw std::invalid_argument("malformed rational (zero denominator): \"" + text + "\"");
  return Rational(Integer(num), d);
}

// Element of Q(i). Arithmetic is exact; used for Hermitian edge weights.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  explicit GaussianRational(Rational real) : re(std::move(real)), im(0) {}
  explicit GaussianRational(long real) : re(real), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return {re, -im}; }

  // |x|^2, always a non-negative rational.
  Rational norm2() const { return re * re + im * im; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    const Rational n = b.norm2();
    if (n == 0) throw std::domain_error("division by zero Gaussian rational");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::string to_string() const {
    if (im == 0) return rational_to_string(re);
    return rational_to_string(re) + (im.sign() >= 0 ? "+" : "") + rational_to_string(im) + "i";
  }
};

}  // namespace flatband
