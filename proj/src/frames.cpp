#include "frametrace/frames.hpp"

#include <cmath>

namespace frametrace {

CoefficientOperator coefficient_operator(const Rep& rep, const CVector& eta) {
  if (eta.size() != rep.dim())
    throw DimensionMismatch("coefficient_operator: window length " + std::to_string(eta.size()) +
                            " != representation dimension " + std::to_string(rep.dim()));
  const int n = static_cast<int>(rep.group()->order());
  CMatrix v(n, rep.dim());
  for (int x = 0; x < n; ++x) v.row(x) = (rep(x) * eta).adjoint();
  return {rep, eta, std::move(v)};
}

double intertwining_residual(const CoefficientOperator& v) {
  const auto& G = *v.rep.group();
  const int n = static_cast<int>(G.order());
  double worst = 0.0;
  for (int x = 0; x < n; ++x) {
    const CMatrix lhs = v.matrix * v.rep(x);
    // (lambda(x) V)[y, :] = V[x^-1 y, :]
    CMatrix rhs(n, v.matrix.cols());
    const int xinv = G.inverse(x);
    for (int y = 0; y < n; ++y) rhs.row(y) = v.matrix.row(G.mul(xinv, y));
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

CMatrix frame_operator(const CoefficientOperator& v) { return v.matrix.adjoint() * v.matrix; }

double frame_condition_ratio(const CoefficientOperator& v) {
  const auto e = eig_hermitian<double>(frame_operator(v));
  const Eigen::Index d = e.eigenvalues.size();
  if (d == 0) return 1.0;
  const double hi = e.eigenvalues(d - 1);
  if (!(hi > 0.0)) return 0.0;
  return std::max(0.0, e.eigenvalues(0) / hi);
}

bool is_frame_vector(const CoefficientOperator& v, double floor) {
  return frame_condition_ratio(v) > floor;
}

CVector canonical_dual(const CoefficientOperator& v, double floor) {
  return inv_psd<double>(frame_operator(v), floor) * v.window;
}

CVector tighten(const CoefficientOperator& v, double floor) {
  return inv_sqrt_psd<double>(frame_operator(v), floor) * v.window;
}

CheckRecord is_admissible_pair(const Rep& rep, const CVector& eta, const CVector& psi, double tol) {
  const auto ve = coefficient_operator(rep, eta);
  const auto vp = coefficient_operator(rep, psi);
  const double r = identity_residual<double>(vp.matrix.adjoint() * ve.matrix);
  return make_check("admissible_pair", r, tol);
}

Complex natural_trace(const CMatrix& t, const FiniteGroup& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  if (t.rows() != n || t.cols() != n)
    throw DimensionMismatch("natural_trace: operator is not |G| x |G|");
  return TraceFunctional::for_group(g)(t);
}

InvariantProjection InvariantProjection::make(GroupPtr group, CMatrix p, double tol) {
  const auto& G = *group;
  const int n = static_cast<int>(G.order());
  if (p.rows() != n || p.cols() != n)
    throw DimensionMismatch("InvariantProjection: matrix is not |G| x |G|");
  const double scale = tol * std::max(1.0, p.norm());
  if ((p * p - p).norm() > scale) throw InvariantViolated("InvariantProjection: p^2 != p");
  if ((p - p.adjoint()).norm() > scale) throw InvariantViolated("InvariantProjection: p* != p");
  for (int x = 0; x < n; ++x) {
    const int xinv = G.inverse(x);
    double defect = 0.0;
    // (lambda(x) p)[y, w] = p[x^-1 y, w] and (p lambda(x))[y, w] = p[y, x w].
    for (int y = 0; y < n; ++y)
      for (int w = 0; w < n; ++w) defect += std::norm(p(G.mul(xinv, y), w) - p(y, G.mul(x, w)));
    if (std::sqrt(defect) > scale)
      throw InvariantViolated("InvariantProjection: p does not commute with lambda(" +
                              std::to_string(x) + ")");
  }
  return InvariantProjection(std::move(group), std::move(p));
}

CMatrix InvariantProjection::range_basis() const { return orthonormal_range<double>(p_); }

Eigen::Index InvariantProjection::rank() const { return range_basis().cols(); }

InvariantProjection projection_from_spanning(const Rep& regular,
                                             const std::vector<CVector>& vectors) {
  const auto& G = regular.group();
  const auto n = static_cast<Eigen::Index>(G->order());
  if (regular.dim() != n)
    throw DimensionMismatch("projection_from_spanning: representation must act on l2(G)");
  if (vectors.empty()) return InvariantProjection::make(G, CMatrix::Zero(n, n));
  CMatrix orbit(n, n * static_cast<Eigen::Index>(vectors.size()));
  Eigen::Index col = 0;
  for (const auto& v : vectors) {
    if (v.size() != n) throw DimensionMismatch("projection_from_spanning: vector length");
    for (int x = 0; x < static_cast<int>(n); ++x) orbit.col(col++) = regular(x) * v;
  }
  const CMatrix q = orthonormal_range<double>(orbit);
  return InvariantProjection::make(G, q * q.adjoint());
}

CVector admissible_vector_for_projection(const InvariantProjection& p) {
  // p lies in VN_r(G), so p = U_h with h = p delta_e, and h* = h because p
  // is self-adjoint. Then V_h = U_{h*} = p and V_h* V_h = p.
  return p.matrix().col(p.group()->identity());
}

double trace_of_projection(const InvariantProjection& p) {
  return natural_trace(p.matrix(), *p.group()).real();
}

}  // namespace frametrace
