#pragma once

#include <stdexcept>
#include <vector>

#include "flatband/multigraph.hpp"
#include "flatband/rational.hpp"

namespace flatband {

// Dense square matrix over the Gaussian rationals.
class GaussianMatrix {
 public:
  explicit GaussianMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {}

  int size() const { return n_; }

  GaussianRational& at(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const GaussianRational& at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }

  bool is_hermitian() const {
    for (int i = 0; i < n_; ++i) {
      if (at(i, i).im != 0) return false;
      for (int j = i + 1; j < n_; ++j)
        if (at(i, j) != at(j, i).conj()) return false;
    }
    return true;
  }

  friend GaussianMatrix operator*(const GaussianMatrix& a, const GaussianMatrix& b) {
    GaussianMatrix c(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const GaussianRational& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < a.n_; ++j) c.at(i, j) += aik * b.at(k, j);
      }
    return c;
  }

  GaussianRational trace() const {
    GaussianRational t(0);
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

 private:
  int n_;
  std::vector<GaussianRational> data_;
};

// The Schrödinger matrix: entry (u,v) sums the weights of directed edges
// u -> v; each self-loop contributes w + conj(w) to its diagonal entry; the
// diagonal additionally carries the potential. Exactly Hermitian.
inline GaussianMatrix hamiltonian_matrix(const Multigraph& g, const SchrodingerWeights& w) {
  w.require_cover(g);
  GaussianMatrix h(g.vertex_count());
  for (const auto& e : g.edges()) {
    const GaussianRational& we = w.stored_weight(e.id);
    if (e.is_loop()) {
      h.at(e.u, e.u) += we + we.conj();
    } else {
      h.at(e.u, e.v) += we;
      h.at(e.v, e.u) += we.conj();
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) h.at(v, v) += GaussianRational(w.potential(v));
  return h;
}

}  // namespace flatband
