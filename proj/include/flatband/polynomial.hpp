#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flatband/rational.hpp"

namespace flatband {

// Dense univariate polynomial over the rationals: coeffs[i] is the
// coefficient of x^i, trailing zeros trimmed. The zero polynomial is the
// empty list and has degree -1 (a stand-in for -infinity).
class RationalPolynomial {
 public:
  RationalPolynomial() = default;

  explicit RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static RationalPolynomial zero() { return RationalPolynomial(); }
  static RationalPolynomial constant(Rational c) { return RationalPolynomial({std::move(c)}); }
  static RationalPolynomial one() { return constant(1); }
  // x - r
  static RationalPolynomial linear_root(const Rational& r) { return RationalPolynomial({-r, 1}); }
  static RationalPolynomial x() { return RationalPolynomial({0, 1}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[i];
  }
  const Rational& leading() const {
    if (coeffs_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  Rational evaluate(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  RationalPolynomial derivative() const {
    if (coeffs_.size() <= 1) return zero();
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return RationalPolynomial(std::move(d));
  }

  RationalPolynomial monic() const {
    if (is_zero()) return zero();
    return *this * Rational(1) / leading();
  }

  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return RationalPolynomial(std::move(c));
  }
  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return RationalPolynomial(std::move(c));
  }
  friend RationalPolynomial operator-(const RationalPolynomial& a) {
    std::vector<Rational> c(a.coeffs_);
    for (auto& x : c) x = -x;
    return RationalPolynomial(std::move(c));
  }
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RationalPolynomial(std::move(c));
  }
  friend RationalPolynomial operator*(const RationalPolynomial& a, const Rational& s) {
    if (s == 0) return zero();
    std::vector<Rational> c(a.coeffs_);
    for (auto& x : c) x *= s;
    return RationalPolynomial(std::move(c));
  }
  friend RationalPolynomial operator/(const RationalPolynomial& a, const Rational& s) {
    if (s == 0) throw std::domain_error("polynomial division by zero scalar");
    std::vector<Rational> c(a.coeffs_);
    for (auto& x : c) x /= s;
    return RationalPolynomial(std::move(c));
  }
  RationalPolynomial& operator+=(const RationalPolynomial& o) { return *this = *this + o; }
  RationalPolynomial& operator-=(const RationalPolynomial& o) { return *this = *this - o; }
  RationalPolynomial& operator*=(const RationalPolynomial& o) { return *this = *this * o; }

  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const RationalPolynomial& a, const RationalPolynomial& b) {
    return !(a == b);
  }

  // Euclidean division returning (quotient, remainder); divisor nonzero.
  std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    RationalPolynomial r = *this;
    std::vector<Rational> q;
    const int dd = d.degree();
    if (r.degree() >= dd) q.assign(r.degree() - dd + 1, Rational(0));
    while (!r.is_zero() && r.degree() >= dd) {
      const int k = r.degree() - dd;
      const Rational f = r.leading() / d.leading();
      q[k] = f;
      for (int i = 0; i <= dd; ++i) r.coeffs_[k + i] -= f * d.coeffs_[i];
      r.trim();
    }
    return {RationalPolynomial(std::move(q)), std::move(r)};
  }

  // Division known to be exact; throws if a remainder appears.
  RationalPolynomial divide_exact(const RationalPolynomial& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::logic_error("polynomial division expected to be exact");
    return q;
  }

  bool divisible_by(const RationalPolynomial& d) const {
    if (d.is_zero()) return is_zero();
    return divmod(d).second.is_zero();
  }

  // Clear denominators and divide by the integer content. The scale factor is
  // strictly positive, so signs are preserved (Sturm chains rely on this).
  RationalPolynomial primitive() const {
    if (is_zero()) return zero();
    Integer l(1);
    for (const auto& c : coeffs_) l = boost::multiprecision::lcm(l, rational_den(c));
    Integer g(0);
    for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, Integer(rational_num(c) * (l / rational_den(c))));
    if (g == 0) g = 1;
    if (g < 0) g = -g;
    return *this * Rational(l, g);
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      const bool first = out.empty();
      const Rational a = c < 0 ? Rational(-c) : c;
      if (c < 0)
        out += first ? "-" : " - ";
      else if (!first)
        out += " + ";
      const bool unit = (a == 1) && i > 0;
      if (!unit) out += rational_to_string(a);
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

// Monic gcd over the rationals; gcd(p, 0) = monic(p), gcd(0, 0) = 0.
inline RationalPolynomial poly_gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    RationalPolynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
    // Primitive normalization keeps intermediate coefficients small; scaling
    // by a positive rational does not change the gcd.
    if (!b.is_zero()) b = b.primitive();
  }
  return a.monic();
}

// Polynomial with Gaussian-rational coefficients; the intermediate carrier
// for determinant expansions before realness is asserted.
class GaussianPolynomial {
 public:
  GaussianPolynomial() = default;
  explicit GaussianPolynomial(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }
  explicit GaussianPolynomial(const RationalPolynomial& p) {
    coeffs_.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) coeffs_.emplace_back(c);
  }

  static GaussianPolynomial zero() { return GaussianPolynomial(); }
  static GaussianPolynomial constant(GaussianRational c) {
    return GaussianPolynomial(std::vector<GaussianRational>{std::move(c)});
  }
  static GaussianPolynomial one() { return constant(GaussianRational(1)); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  GaussianRational coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return GaussianRational(0);
    return coeffs_[i];
  }
  const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
  const GaussianRational& leading() const {
    if (coeffs_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  GaussianPolynomial conj() const {
    std::vector<GaussianRational> c(coeffs_);
    for (auto& x : c) x = x.conj();
    return GaussianPolynomial(std::move(c));
  }

  bool all_real() const {
    for (const auto& c : coeffs_)
      if (c.im != 0) return false;
    return true;
  }

  // Conversion back to a rational polynomial; the imaginary part must have
  // cancelled exactly, otherwise this is an invariant violation.
  RationalPolynomial real_polynomial() const {
    std::vector<Rational> c;
    c.reserve(coeffs_.size());
    for (const auto& x : coeffs_) {
      if (x.im != 0)
        throw std::logic_error("nonzero imaginary part in a coefficient expected to be real");
      c.push_back(x.re);
    }
    return RationalPolynomial(std::move(c));
  }

  friend GaussianPolynomial operator+(const GaussianPolynomial& a, const GaussianPolynomial& b) {
    std::vector<GaussianRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return GaussianPolynomial(std::move(c));
  }
  friend GaussianPolynomial operator-(const GaussianPolynomial& a, const GaussianPolynomial& b) {
    std::vector<GaussianRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return GaussianPolynomial(std::move(c));
  }
  friend GaussianPolynomial operator*(const GaussianPolynomial& a, const GaussianPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    std::vector<GaussianRational> c(a.coeffs_.size() + b.coeffs_.size() - 1, GaussianRational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return GaussianPolynomial(std::move(c));
  }
  friend GaussianPolynomial operator*(const GaussianPolynomial& a, const GaussianRational& s) {
    std::vector<GaussianRational> c(a.coeffs_);
    for (auto& x : c) x *= s;
    return GaussianPolynomial(std::move(c));
  }
  GaussianPolynomial& operator+=(const GaussianPolynomial& o) { return *this = *this + o; }
  GaussianPolynomial& operator-=(const GaussianPolynomial& o) { return *this = *this - o; }

  friend bool operator==(const GaussianPolynomial& a, const GaussianPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  // Exact long division (the coefficient ring is a field).
  GaussianPolynomial divide_exact(const GaussianPolynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    GaussianPolynomial r = *this;
    std::vector<GaussianRational> q;
    const int dd = d.degree();
    if (r.degree() >= dd) q.assign(r.degree() - dd + 1, GaussianRational(0));
    while (!r.is_zero() && r.degree() >= dd) {
      const int k = r.degree() - dd;
      const GaussianRational f = r.leading() / d.leading();
      q[k] = f;
      for (int i = 0; i <= dd; ++i) r.coeffs_[k + i] -= f * d.coeffs_[i];
      r.trim();
    }
    if (!r.is_zero()) throw std::logic_error("polynomial division expected to be exact");
    return GaussianPolynomial(std::move(q));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<GaussianRational> coeffs_;
};

}  // namespace flatband
