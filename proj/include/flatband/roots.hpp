#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flatband/polynomial.hpp"

namespace flatband {

// --- square-free machinery -------------------------------------------------

// Yun's algorithm: p = c * prod f_i^i with the f_i square-free and pairwise
// coprime. Returns the (f_i, i) pairs with nonconstant f_i.
inline std::vector<std::pair<RationalPolynomial, int>> squarefree_decomposition(
    const RationalPolynomial& p) {
  std::vector<std::pair<RationalPolynomial, int>> out;
  if (p.degree() < 1) return out;
  const RationalPolynomial a = p.monic();
  const RationalPolynomial g = poly_gcd(a, a.derivative());
  if (g.is_one()) {
    out.emplace_back(a, 1);
    return out;
  }
  RationalPolynomial w = a.divide_exact(g);
  RationalPolynomial z = a.derivative().divide_exact(g) - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    const RationalPolynomial f = poly_gcd(w, z);
    if (f.degree() > 0) out.emplace_back(f, i);
    w = w.divide_exact(f);
    z = z.divide_exact(f) - w.derivative();
    ++i;
  }
  return out;
}

// Product of the distinct irreducible factors of p (monic).
inline RationalPolynomial squarefree_part(const RationalPolynomial& p) {
  if (p.degree() < 1) return p.is_zero() ? RationalPolynomial::zero() : RationalPolynomial::one();
  return p.monic().divide_exact(poly_gcd(p, p.derivative()));
}

// --- rational roots ---------------------------------------------------------

namespace detail {

// Divisors by trial division; gives up (nullopt) past the effort cap so huge
// constants degrade to interval-only isolation instead of stalling.
inline std::optional<std::vector<Integer>> positive_divisors(Integer n, long effort = 2000000) {
  if (n < 0) n = -n;
  if (n == 0) return std::nullopt;
  std::vector<std::pair<Integer, int>> factors;
  Integer m = n;
  Integer d = 2;
  long steps = 0;
  while (d * d <= m) {
    if (++steps > effort) return std::nullopt;
    if (m % d == 0) {
      int e = 0;
      while (m % d == 0) {
        m /= d;
        ++e;
      }
      factors.emplace_back(d, e);
    }
    d += (d == 2) ? 1 : 2;
  }
  if (m > 1) factors.emplace_back(m, 1);
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [prime, exp] : factors) {
    const std::size_t base = divs.size();
    Integer pw(1);
    for (int e = 1; e <= exp; ++e) {
      pw *= prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace detail

// All rational roots of p with multiplicities, plus the exact deflation of p
// by the corresponding linear factors. Roots sorted ascending.
struct RationalRootResult {
  std::vector<std::pair<Rational, int>> roots;
  RationalPolynomial deflated;
};

inline RationalRootResult extract_rational_roots(const RationalPolynomial& p) {
  RationalRootResult res;
  res.deflated = p;
  if (p.degree() < 1) return res;

  // Root 0 first: strip the power of x.
  int zero_mult = 0;
  while (res.deflated.degree() >= 1 && res.deflated.coeff(0) == 0) {
    res.deflated = res.deflated.divide_exact(RationalPolynomial::x());
    ++zero_mult;
  }
  if (zero_mult > 0) res.roots.emplace_back(Rational(0), zero_mult);

  if (res.deflated.degree() >= 1) {
    const RationalPolynomial prim = res.deflated.primitive();
    const auto ds0 = detail::positive_divisors(prim.coeff(0) == 0 ? Integer(1)
                                                                  : rational_num(prim.coeff(0)));
    const auto dsn = detail::positive_divisors(rational_num(prim.leading()));
    if (ds0 && dsn) {
      std::vector<Rational> candidates;
      for (const auto& a : *ds0)
        for (const auto& b : *dsn) {
          candidates.emplace_back(a, b);
          candidates.emplace_back(-Rational(a, b));
        }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      for (const auto& cand : candidates) {
        if (res.deflated.degree() < 1) break;
        if (res.deflated.evaluate(cand) != 0) continue;
        int mult = 0;
        const RationalPolynomial lin = RationalPolynomial::linear_root(cand);
        while (res.deflated.degree() >= 1 && res.deflated.evaluate(cand) == 0) {
          res.deflated = res.deflated.divide_exact(lin);
          ++mult;
        }
        res.roots.emplace_back(cand, mult);
      }
    }
    // Divisor enumeration beyond the cap: any remaining rational roots are
    // simply reported as isolating intervals by the caller.
  }

  std::sort(res.roots.begin(), res.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return res;
}

// --- Sturm sequences ---------------------------------------------------------

class SturmChain {
 public:
  // p should be square-free for root counting; the chain itself is defined
  // for any nonzero polynomial.
  explicit SturmChain(const RationalPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm chain of the zero polynomial");
    chain_.push_back(p.primitive());
    if (p.degree() >= 1) {
      chain_.push_back(p.derivative().primitive());
      while (chain_.back().degree() >= 1) {
        RationalPolynomial r = chain_[chain_.size() - 2].divmod(chain_.back()).second;
        if (r.is_zero()) break;
        chain_.push_back((-r).primitive());
      }
    }
  }

  // Number of sign changes of the chain at x (zeros skipped).
  int variations(const Rational& x) const {
    int count = 0;
    int prev = 0;
    for (const auto& q : chain_) {
      const int s = rational_sign(q.evaluate(x));
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }

  // Distinct real roots in the open interval (lo, hi); endpoints must not be
  // roots of the leading chain element.
  int count_open(const Rational& lo, const Rational& hi) const {
    return variations(lo) - variations(hi);
  }

  const RationalPolynomial& base() const { return chain_.front(); }

 private:
  std::vector<RationalPolynomial> chain_;
};

// Strict bound B with every real root of p inside (-B, B). Cauchy bound.
inline Rational cauchy_root_bound(const RationalPolynomial& p) {
  if (p.degree() < 1) return Rational(1);
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rational a = p.coeff(i) / p.leading();
    if (a < 0) a = -a;
    if (a > m) m = a;
  }
  return m + 1;
}

// Number of distinct real roots of p in the half-open interval (lo, hi].
inline int count_roots_in_interval(const RationalPolynomial& p, const Rational& lo,
                                   const Rational& hi) {
  if (p.is_zero())
    throw std::invalid_argument("count_roots_in_interval: zero polynomial has infinitely many roots");
  if (!(lo < hi)) throw std::invalid_argument("count_roots_in_interval: requires lo < hi");
  if (p.degree() < 1) return 0;
  RationalPolynomial s = squarefree_part(p);
  const bool hi_is_root = s.evaluate(hi) == 0;
  // Deflate rational roots sitting exactly on the endpoints, so that Sturm's
  // theorem applies to what remains.
  for (const Rational& endpoint : {lo, hi}) {
    if (s.degree() >= 1 && s.evaluate(endpoint) == 0)
      s = s.divide_exact(RationalPolynomial::linear_root(endpoint));
  }
  int inside = 0;
  if (s.degree() >= 1) inside = SturmChain(s).count_open(lo, hi);
  return inside + (hi_is_root ? 1 : 0);
}

// --- real root isolation ------------------------------------------------------

struct IsolatingInterval {
  Rational lo;
  Rational hi;
  int multiplicity;  // multiplicity of the enclosed root in the original polynomial
};

// Exact description of the real roots of a polynomial: rational roots with
// multiplicities, one interval per remaining (irrational) real root of the
// square-free part, and the residual degree attributable to non-real roots.
struct RootIsolation {
  std::vector<std::pair<Rational, int>> rational_roots;
  std::vector<IsolatingInterval> irrational_intervals;
  int residual_nonreal_degree = 0;
};

namespace detail {

// Isolating intervals for all real roots of a square-free polynomial with no
// rational roots, each refined to width <= target_width.
inline std::vector<std::pair<Rational, Rational>> isolate_squarefree(
    const RationalPolynomial& f, const Rational& target_width) {
  std::vector<std::pair<Rational, Rational>> out;
  if (f.degree() < 1) return out;
  const SturmChain chain(f);
  const Rational bound = cauchy_root_bound(f);
  struct Item {
    Rational lo, hi;
    int roots;
  };
  std::vector<Item> work;
  {
    const int total = chain.count_open(-bound, bound);
    if (total > 0) work.push_back({-bound, bound, total});
  }
  while (!work.empty()) {
    Item it = work.back();
    work.pop_back();
    if (it.roots == 1 && it.hi - it.lo <= target_width) {
      out.emplace_back(it.lo, it.hi);
      continue;
    }
    // f normally has no rational roots, so the midpoint is not a root; when
    // rational-root extraction gave up on huge constants, fall back to a
    // nearby split point where f does not vanish.
    Rational mid = (it.lo + it.hi) / 2;
    for (int k = 1; f.evaluate(mid) == 0; ++k) {
      if (k > 16) throw std::logic_error("could not find a non-root split point");
      mid = it.lo + (it.hi - it.lo) * Rational(2 * k + 1, 2 * k + 3);
    }
    const int left = chain.count_open(it.lo, mid);
    const int right = it.roots - left;
    if (left > 0) work.push_back({it.lo, mid, left});
    if (right > 0) work.push_back({mid, it.hi, right});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Default isolation width 2^-20: a reporting granularity, far below any
// tolerance used in the acceptance checks.
inline Rational default_isolation_width() { return Rational(Integer(1), Integer(1) << 20); }

inline RootIsolation sturm_isolate(const RationalPolynomial& p,
                                   Rational target_width = default_isolation_width()) {
  RootIsolation iso;
  if (p.degree() < 1) return iso;

  RationalRootResult rr = extract_rational_roots(p);
  iso.rational_roots = std::move(rr.roots);
  const RationalPolynomial& r = rr.deflated;
  if (r.degree() < 1) return iso;

  // Isolate per square-free factor so that each interval's multiplicity in
  // the original polynomial is known.
  struct Found {
    Rational lo, hi;
    int mult;
    const RationalPolynomial* factor;
  };
  std::vector<Found> found;
  auto factors = squarefree_decomposition(r);
  int real_degree = 0;
  for (const auto& [f, mult] : factors) {
    for (auto& [lo, hi] : detail::isolate_squarefree(f, target_width)) {
      found.push_back({lo, hi, mult, &f});
      real_degree += mult;
    }
  }
  iso.residual_nonreal_degree = r.degree() - real_degree;

  // Roots of distinct square-free factors are distinct; bisect overlapping
  // intervals until pairwise disjoint.
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.lo < b.lo; });
  bool changed = true;
  int guard = 0;
  while (changed) {
    if (++guard > 10000) throw std::logic_error("root isolation failed to separate intervals");
    changed = false;
    std::sort(found.begin(), found.end(),
              [](const Found& a, const Found& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i + 1 < found.size(); ++i) {
      if (found[i].hi > found[i + 1].lo) {
        for (auto* item : {&found[i], &found[i + 1]}) {
          const SturmChain chain(*item->factor);
          const Rational mid = (item->lo + item->hi) / 2;
          if (chain.count_open(item->lo, mid) == 1)
            item->hi = mid;
          else
            item->lo = mid;
        }
        changed = true;
      }
    }
  }
  for (const auto& f : found) iso.irrational_intervals.push_back({f.lo, f.hi, f.mult});
  return iso;
}

}  // namespace flatband
