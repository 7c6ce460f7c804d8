#pragma once

#include <stdexcept>
#include <vector>

#include "flatband/matrix.hpp"
#include "flatband/polynomial.hpp"

namespace flatband {

// det(lambda*I - M) by the Faddeev-LeVerrier recurrence: exact over the
// Gaussian rationals, divisions only by the integers 1..n. Coefficients are
// returned as Gaussian rationals; callers assert realness where Hermiticity
// guarantees it.
inline GaussianPolynomial char_poly_gaussian(const GaussianMatrix& m) {
  const int n = m.size();
  std::vector<GaussianRational> c(static_cast<std::size_t>(n) + 1);
  c[n] = GaussianRational(1);
  GaussianMatrix mk(n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    // M_k = A * M_{k-1} + c_{n-k+1} * I
    GaussianMatrix next = m * mk;
    const GaussianRational& shift = c[n - k + 1];
    for (int i = 0; i < n; ++i) next.at(i, i) += shift;
    mk = std::move(next);
    // c_{n-k} = -tr(A * M_k) / k
    GaussianRational t = (m * mk).trace();
    c[n - k] = -(t / GaussianRational(Rational(k), Rational(0)));
  }
  return GaussianPolynomial(std::move(c));
}

// Characteristic polynomial of a Hermitian matrix: monic of degree n with
// all-real coefficients. A nonzero imaginary residue is reported, never
// silently truncated.
inline RationalPolynomial char_poly(const GaussianMatrix& m) {
  if (!m.is_hermitian()) throw std::invalid_argument("char_poly: matrix is not Hermitian");
  return char_poly_gaussian(m).real_polynomial();
}

}  // namespace flatband
