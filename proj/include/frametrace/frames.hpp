#pragma once

// Coefficient operators, frame operators, dual and admissible vectors,
// invariant projections and the natural trace on VN_r(G).
//
// For a finite group every vector is bounded, so no separate notion of
// "bounded vector" appears in the API.

#include "frametrace/group.hpp"
#include "frametrace/report.hpp"

namespace frametrace {

/// The analysis map V_eta : H_pi -> l2(G), (V_eta phi)(x) = <phi, pi(x) eta>.
/// Row x of `matrix` is (pi(x) eta)^*.
struct CoefficientOperator {
  Rep rep;
  CVector window;
  CMatrix matrix;  // |G| x d
};

CoefficientOperator coefficient_operator(const Rep& rep, const CVector& eta);

/// max over x of ||V pi(x) - lambda(x) V||_F.
double intertwining_residual(const CoefficientOperator& v);

/// S = V* V.
CMatrix frame_operator(const CoefficientOperator& v);

/// lambda_min(S) / lambda_max(S), or 0 when S = 0.
double frame_condition_ratio(const CoefficientOperator& v);

bool is_frame_vector(const CoefficientOperator& v, double floor = kInvertibilityFloor);

/// S^-1 eta, the minimal-norm dual. Throws NotInvertible if eta is not a frame vector.
CVector canonical_dual(const CoefficientOperator& v, double floor = kInvertibilityFloor);

/// S^-1/2 eta, which is self-dual. Throws NotInvertible.
CVector tighten(const CoefficientOperator& v, double floor = kInvertibilityFloor);

/// Residual ||V_psi* V_eta - Id||_F / sqrt(d); symmetric in (eta, psi).
CheckRecord is_admissible_pair(const Rep& rep, const CVector& eta, const CVector& psi,
                               double tol = kDefaultTol);

/// Linear functional T -> normalization * trace(T). For VN_r(G) and its
/// reduced algebras the normalization is 1/|G|.
struct TraceFunctional {
  double normalization = 1.0;

  Complex operator()(const CMatrix& t) const { return normalization * t.trace(); }

  static TraceFunctional for_group(const FiniteGroup& g) {
    return {1.0 / static_cast<double>(g.order())};
  }
};

/// trace(T)/|G| for T acting on l2(G).
Complex natural_trace(const CMatrix& t, const FiniteGroup& g);

/// An orthogonal projection on l2(G) commuting with left translations.
class InvariantProjection {
 public:
  /// Throws InvariantViolated unless p^2 = p, p* = p and lambda(x) p = p lambda(x).
  static InvariantProjection make(GroupPtr group, CMatrix p, double tol = kDefaultTol);

  const CMatrix& matrix() const noexcept { return p_; }
  const GroupPtr& group() const noexcept { return group_; }
  /// Orthonormal basis of range(p), stable for a given p.
  CMatrix range_basis() const;
  Eigen::Index rank() const;

 private:
  InvariantProjection(GroupPtr g, CMatrix p) : group_(std::move(g)), p_(std::move(p)) {}

  GroupPtr group_;
  CMatrix p_;
};

/// Projection onto span{lambda(x) v : x in G, v in vectors}.
InvariantProjection projection_from_spanning(const Rep& regular, const std::vector<CVector>& vectors);

/// v = p delta_e, which satisfies V_v* V_v = p, so v is admissible for the
/// restriction of lambda_G to range(p).
CVector admissible_vector_for_projection(const InvariantProjection& p);

double trace_of_projection(const InvariantProjection& p);

}  // namespace frametrace
