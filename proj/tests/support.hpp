#pragma once

// Test-only oracles. These deliberately avoid the library code paths they
// are used to check (plain loops over group tables and matrix entries).

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "frametrace/commutant.hpp"
#include "frametrace/gabor.hpp"
#include "frametrace/sampling.hpp"

namespace frametrace::testing {

inline CMatrix naive_matmul(const CMatrix& a, const CMatrix& b) {
  CMatrix c = CMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

inline CMatrix random_hermitian(Rng& rng, Eigen::Index n) {
  const CMatrix a = random_matrix(rng, n, n);
  return (a + a.adjoint()) / 2.0;
}

/// U diag(spectrum) U* for a random unitary U.
inline CMatrix psd_with_spectrum(Rng& rng, const std::vector<double>& spectrum) {
  const auto n = static_cast<Eigen::Index>(spectrum.size());
  const CMatrix u = random_unitary(rng, n);
  CVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = spectrum[static_cast<std::size_t>(i)];
  return u * d.asDiagonal() * u.adjoint();
}

inline int element_order(const FiniteGroup& g, int x) {
  int k = 1;
  for (int y = x; y != g.identity(); y = g.mul(y, x)) ++k;
  return k;
}

inline std::multiset<int> element_orders(const FiniteGroup& g) {
  std::multiset<int> out;
  for (int x = 0; x < static_cast<int>(g.order()); ++x) out.insert(element_order(g, x));
  return out;
}

inline std::size_t conjugacy_class_count(const FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  int count = 0;
  for (int x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    for (int y = 0; y < n; ++y) cls[g.mul(g.mul(y, x), g.inverse(y))] = count;
    ++count;
  }
  return static_cast<std::size_t>(count);
}

inline std::size_t center_size(const FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  std::size_t c = 0;
  for (int x = 0; x < n; ++x) {
    bool central = true;
    for (int y = 0; y < n && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    if (central) ++c;
  }
  return c;
}

/// (f*g)(x) = sum_{y,z : yz = x} f(y) g(z), by enumerating all pairs.
inline CVector convolution_oracle(const FiniteGroup& G, const CVector& f, const CVector& g) {
  CVector out = CVector::Zero(f.size());
  const int n = static_cast<int>(G.order());
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) out(G.mul(y, z)) += f(y) * g(z);
  return out;
}

/// Left translation by x applied entrywise: (lambda(x) f)(y) = f(x^-1 y).
inline CVector translate_oracle(const FiniteGroup& G, int x, const CVector& f) {
  CVector out(f.size());
  for (int y = 0; y < static_cast<int>(G.order()); ++y) out(y) = f(G.mul(G.inverse(x), y));
  return out;
}

/// sum_x pi(x) psi (pi(x) eta)^*, assembled as a sum of rank-one terms.
inline CMatrix synthesis_analysis_oracle(const Rep& rep, const CVector& eta, const CVector& psi) {
  CMatrix s = CMatrix::Zero(rep.dim(), rep.dim());
  for (const auto& m : rep.matrices()) {
    const CVector a = m * psi, b = m * eta;
    for (Eigen::Index i = 0; i < s.rows(); ++i)
      for (Eigen::Index j = 0; j < s.cols(); ++j) s(i, j) += a(i) * std::conj(b(j));
  }
  return s;
}

/// Gabor analysis T_g* T_f by summing rank-one terms over the lattice,
/// shifting and modulating entrywise.
inline CMatrix gabor_oracle(int L, int a, int b, const CVector& f, const CVector& g) {
  CMatrix s = CMatrix::Zero(L, L);
  const double pi2 = 2.0 * 3.14159265358979323846;
  auto shifted = [&](const CVector& w, int m, int n) {
    CVector out(L);
    for (int j = 0; j < L; ++j)
      out(j) = std::polar(1.0, pi2 * ((1LL * m * b * j) % L) / L) * w(((j - n * a) % L + L) % L);
    return out;
  };
  for (int m = 0; m < L / b; ++m)
    for (int n = 0; n < L / a; ++n) {
      const CVector gm = shifted(g, m, n), fm = shifted(f, m, n);
      for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) s(i, j) += gm(i) * std::conj(fm(j));
    }
  return s;
}

/// The 2-dim isotypic block of lambda_G for a table: e = (d/|G|) chi_s.
inline InvariantProjection isotypic_projection(const IrrepTable& table, std::size_t s) {
  std::vector<CMatrix> blocks;
  for (std::size_t t = 0; t < table.size(); ++t) {
    const auto d = table.irreps()[t].dim;
    blocks.push_back(t == s ? CMatrix(CMatrix::Identity(d, d)) : CMatrix(CMatrix::Zero(d, d)));
  }
  return projection_from_fibers(table, blocks);
}

inline std::size_t first_irrep_of_dim(const IrrepTable& table, Eigen::Index d) {
  for (std::size_t s = 0; s < table.size(); ++s)
    if (table.irreps()[s].dim == d) return s;
  return table.size();
}

/// Block-diagonal direct sum of representations of the same group.
inline Rep direct_sum(const std::vector<Rep>& parts) {
  Eigen::Index d = 0;
  for (const auto& r : parts) d += r.dim();
  const auto& g = parts.front().group();
  std::vector<CMatrix> ms;
  for (int x = 0; x < static_cast<int>(g->order()); ++x) {
    CMatrix m = CMatrix::Zero(d, d);
    Eigen::Index off = 0;
    for (const auto& r : parts) {
      m.block(off, off, r.dim(), r.dim()) = r(x);
      off += r.dim();
    }
    ms.push_back(std::move(m));
  }
  return Rep::make(g, std::move(ms));
}

/// Orthonormal basis of W = {w : V_w* V_eta = 0}, from the SVD of the
/// linear map w -> sum_x pi(x) w (pi(x) eta)^*.
inline CMatrix null_set_basis(const Rep& rep, const CVector& eta) {
  const Eigen::Index d = rep.dim();
  CMatrix m(d * d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const CMatrix s = synthesis_analysis_oracle(rep, eta, CVector::Unit(d, j));
    m.col(j) = s.reshaped();
  }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = 1e-10 * (sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixV().rightCols(d - rank);
}

}  // namespace frametrace::testing
