#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "flatband/matching.hpp"
#include "flatband/multigraph.hpp"
#include "flatband/rng.hpp"

namespace flatband {

using Complex = std::complex<double>;

// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}
  int size() const { return n_; }
  Complex& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const Complex& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  int n_;
  std::vector<Complex> a_;
};

// The Bloch fiber H(z) = A(z) + V: entry (i,j) accumulates z_e w_e over
// stored-orientation edges i -> j and the conjugate over reversed ones; a
// self-loop contributes 2 Re(z_e w_e) to its diagonal entry.
inline ComplexMatrix floquet_matrix(const Multigraph& g, const SchrodingerWeights& w,
                                    const std::vector<Complex>& z) {
  w.require_cover(g);
  if (static_cast<int>(z.size()) != g.edge_count())
    throw std::invalid_argument("floquet_matrix: z must have one entry per edge");
  for (const Complex& zi : z)
    if (std::abs(std::abs(zi) - 1.0) > 1e-9)
      throw std::invalid_argument("floquet_matrix: z entries must lie on the unit circle");

  ComplexMatrix h(g.vertex_count());
  for (const auto& e : g.edges()) {
    const GaussianRational& wt = w.stored_weight(e.id);
    const Complex we(wt.re.convert_to<double>(), wt.im.convert_to<double>());
    const Complex zw = z[e.id] * we;
    if (e.is_loop())
      h.at(e.u, e.u) += zw + std::conj(zw);
    else {
      h.at(e.u, e.v) += zw;
      h.at(e.v, e.u) += std::conj(zw);
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    h.at(v, v) += Complex(w.potential(v).convert_to<double>(), 0.0);
  return h;
}

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, sorted
// ascending. Plain, portable, and accurate to ~1e-13 at this scale.
inline std::vector<double> hermitian_eigenvalues(ComplexMatrix a) {
  const int n = a.size();
  if (n == 0) return {};
  double norm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) norm += std::norm(a.at(i, j));
  norm = std::sqrt(norm);
  const double tol = 1e-14 * (norm + 1.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * std::norm(a.at(i, j));
    if (std::sqrt(off) <= tol) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a.at(p, q);
        const double g = std::abs(apq);
        if (g <= tol * 1e-2) continue;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        // Phase that makes the (p,q) entry real, then a real Jacobi rotation.
        const Complex u = std::conj(apq) / g;
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Columns: (p q) <- (p q) * [[c, s],[-s*u, c*u]]
        for (int k = 0; k < n; ++k) {
          const Complex tp = a.at(k, p);
          const Complex tq = a.at(k, q);
          a.at(k, p) = c * tp - s * u * tq;
          a.at(k, q) = s * tp + c * u * tq;
        }
        // Rows: conjugate-transposed update.
        for (int k = 0; k < n; ++k) {
          const Complex tp = a.at(p, k);
          const Complex tq = a.at(q, k);
          a.at(p, k) = c * tp - s * std::conj(u) * tq;
          a.at(q, k) = s * tp + c * std::conj(u) * tq;
        }
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
      }
    }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a.at(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

// Torus points for floquet sampling: sample k uses draws k*|E| .. (k+1)*|E|
// of the seeded SplitMix64 unit stream, angle = 2*pi*u per edge.
inline std::vector<std::vector<double>> sample_torus_angles(int edge_count, int samples,
                                                            std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> out(samples, std::vector<double>(edge_count));
  for (auto& row : out)
    for (double& theta : row) theta = 2.0 * M_PI * rng.next_unit();
  return out;
}

inline std::vector<Complex> angles_to_z(const std::vector<double>& angles) {
  std::vector<Complex> z(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) z[i] = std::polar(1.0, angles[i]);
  return z;
}

// max over samples of min_i |eig_i(H(z)) - lambda|. Vanishing (<= 1e-9)
// across all samples is the numeric signature of a flat band at lambda; a
// value bounded away from zero at any single sample certifies non-flatness.
inline double sample_flatband_numeric(const Multigraph& g, const SchrodingerWeights& w,
                                      const Rational& lambda, int samples, std::uint64_t seed,
                                      int threads = 1) {
  if (samples < 1) throw std::invalid_argument("sample_flatband_numeric: samples must be >= 1");
  w.require_cover(g);
  const double target = lambda.convert_to<double>();
  const auto angle_rows = sample_torus_angles(g.edge_count(), samples, seed);

  auto min_distance = [&](const std::vector<double>& angles) {
    const std::vector<double> eig = hermitian_eigenvalues(floquet_matrix(g, w, angles_to_z(angles)));
    double best = std::numeric_limits<double>::infinity();
    for (double e : eig) best = std::min(best, std::abs(e - target));
    return best;
  };

  double worst = 0.0;
  if (threads <= 1) {
    for (const auto& row : angle_rows) worst = std::max(worst, min_distance(row));
  } else {
    std::vector<double> results(angle_rows.size());
    std::vector<std::thread> workers;
    for (int t = 0; t < threads; ++t)
      workers.emplace_back([&, t]() {
        for (std::size_t i = static_cast<std::size_t>(t); i < angle_rows.size();
             i += static_cast<std::size_t>(threads))
          results[i] = min_distance(angle_rows[i]);
      });
    for (auto& th : workers) th.join();
    for (double r : results) worst = std::max(worst, r);  // order-independent reduction
  }
  return worst;
}

// A vertex of the Z^|E|-periodic realization: a cell in the free abelian
// group on the edge coordinates (sparse: only nonzero shifts stored) and a
// base-graph site.
struct PeriodicVertex {
  std::map<int, int> cell;
  int site = 0;

  friend bool operator==(const PeriodicVertex& a, const PeriodicVertex& b) {
    return a.site == b.site && a.cell == b.cell;
  }
  friend bool operator<(const PeriodicVertex& a, const PeriodicVertex& b) {
    if (a.site != b.site) return a.site < b.site;
    return a.cell < b.cell;
  }

  PeriodicVertex shifted(int coordinate, int delta) const {
    PeriodicVertex out = *this;
    out.cell[coordinate] += delta;
    if (out.cell[coordinate] == 0) out.cell.erase(coordinate);
    return out;
  }
};

// One neighbor per directed edge at the site; the cell shifts by +1 in the
// edge's coordinate along the stored orientation and -1 against it, and the
// weight is the directed-edge weight. |neighbors| = degree(site).
inline std::vector<std::pair<PeriodicVertex, GaussianRational>> periodic_neighbors(
    const Multigraph& g, const SchrodingerWeights& w, const PeriodicVertex& pv) {
  w.require_cover(g);
  if (pv.site < 0 || pv.site >= g.vertex_count())
    throw std::invalid_argument("periodic_neighbors: invalid site");
  std::vector<std::pair<PeriodicVertex, GaussianRational>> out;
  for (const auto& e : g.edges()) {
    if (e.u == pv.site) {
      PeriodicVertex nb = pv.shifted(e.id, +1);
      nb.site = e.v;
      out.emplace_back(std::move(nb), w.weight({e.id, true}));
    }
    if (e.v == pv.site) {
      PeriodicVertex nb = pv.shifted(e.id, -1);
      nb.site = e.u;
      out.emplace_back(std::move(nb), w.weight({e.id, false}));
    }
  }
  return out;
}

// A finitely supported exact eigenfunction on the periodic realization.
struct CompactEigenfunction {
  Rational lambda;
  std::vector<std::pair<PeriodicVertex, GaussianRational>> support;  // nonzero values only
};

// Searches for a nonzero function supported in the radius-R ball around
// (0, site 0) with (H - lambda) psi = 0 everywhere. The eigenvector equation
// is imposed at every vertex of the radius-(R+1) ball; outside it the
// equation holds automatically because psi vanishes on all neighbors. Exact
// Gaussian elimination over the Gaussian rationals; returns nullopt when the
// only solution is zero. A nullopt at radius R is inconclusive for larger
// supports.
inline std::optional<CompactEigenfunction> find_compact_eigenfunction(
    const Multigraph& g, const SchrodingerWeights& w, const Rational& lambda, int radius) {
  if (radius < 1) throw std::invalid_argument("find_compact_eigenfunction: radius must be >= 1");
  if (g.vertex_count() == 0) throw std::invalid_argument("find_compact_eigenfunction: empty graph");
  w.require_cover(g);

  // Breadth-first ball of radius R+1 around (0, site 0).
  std::map<PeriodicVertex, int> index;      // vertex -> column (support) or -1
  std::vector<PeriodicVertex> order;        // all vertices of B_{R+1}
  std::vector<int> depth;
  {
    PeriodicVertex origin;
    origin.site = 0;
    index.emplace(origin, 0);
    order.push_back(origin);
    depth.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
      if (depth[head] == radius + 1) continue;
      for (auto& [nb, wt] : periodic_neighbors(g, w, order[head])) {
        (void)wt;
        if (index.emplace(nb, static_cast<int>(order.size())).second) {
          order.push_back(nb);
          depth.push_back(depth[head] + 1);
        }
      }
    }
  }

  // Columns: support vertices (depth <= R). Rows: one constraint per vertex
  // of B_{R+1}.
  std::vector<int> column(order.size(), -1);
  int cols = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (depth[i] <= radius) column[i] = cols++;
  const int rows = static_cast<int>(order.size());

  std::vector<std::vector<GaussianRational>> mat(
      rows, std::vector<GaussianRational>(cols, GaussianRational(0)));
  for (int r = 0; r < rows; ++r) {
    if (column[r] >= 0) {
      mat[r][column[r]] += GaussianRational(w.potential(order[r].site) - lambda);
    }
    for (auto& [nb, wt] : periodic_neighbors(g, w, order[r])) {
      auto it = index.find(nb);
      if (it == index.end()) continue;   // outside B_{R+1}: psi = 0 there anyway
      const int c = column[it->second];
      if (c >= 0) mat[r][c] += wt;
    }
  }

  // Exact elimination to reduced row echelon form.
  std::vector<int> pivot_of_col(cols, -1);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pr = -1;
    for (int r = rank; r < rows; ++r)
      if (!mat[r][c].is_zero()) {
        pr = r;
        break;
      }
    if (pr == -1) continue;
    std::swap(mat[rank], mat[pr]);
    const GaussianRational inv = GaussianRational(1) / mat[rank][c];
    for (int j = c; j < cols; ++j) mat[rank][j] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || mat[r][c].is_zero()) continue;
      const GaussianRational f = mat[r][c];
      for (int j = c; j < cols; ++j) mat[r][j] -= f * mat[rank][j];
    }
    pivot_of_col[c] = rank;
    ++rank;
  }

  int free_col = -1;
  for (int c = 0; c < cols; ++c)
    if (pivot_of_col[c] == -1) {
      free_col = c;
      break;
    }
  if (free_col == -1) return std::nullopt;

  // psi: free variable = 1, pivots from back-substitution (rref already).
  std::vector<GaussianRational> psi(cols, GaussianRational(0));
  psi[free_col] = GaussianRational(1);
  for (int c = 0; c < cols; ++c) {
    const int pr = pivot_of_col[c];
    if (pr == -1) continue;
    psi[c] = -mat[pr][free_col];
  }

  CompactEigenfunction out;
  out.lambda = lambda;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int c = column[i];
    if (c >= 0 && !psi[c].is_zero()) out.support.emplace_back(order[i], psi[c]);
  }
  if (out.support.empty()) return std::nullopt;
  return out;
}

// Exact residual (H psi - lambda psi)(x); zero at every vertex for a genuine
// compact eigenfunction.
inline GaussianRational compact_eigenfunction_residual(const Multigraph& g,
                                                       const SchrodingerWeights& w,
                                                       const CompactEigenfunction& f,
                                                       const PeriodicVertex& x) {
  std::map<PeriodicVertex, GaussianRational> values(f.support.begin(), f.support.end());
  auto value_of = [&](const PeriodicVertex& pv) {
    auto it = values.find(pv);
    return it == values.end() ? GaussianRational(0) : it->second;
  };
  GaussianRational acc = GaussianRational(w.potential(x.site) - f.lambda) * value_of(x);
  for (auto& [nb, wt] : periodic_neighbors(g, w, x)) acc += wt * value_of(nb);
  return acc;
}

}  // namespace flatband
