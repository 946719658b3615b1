#pragma once

// Finite Plancherel transform and the central decomposition of lambda_G.
//
// Conventions (normative):
//   transform   f^(s) = sum_x f(x) s(x)^*           (d_s x d_s block)
//   inverse     f(x)  = sum_s (d_s/|G|) trace(f^(s) s(x))
//   Parseval    sum_s (d_s/|G|) ||f^(s)||_F^2 = ||f||^2
//   convolution (f * g)^(s) = g^(s) f^(s)
//
// Under this transform U_h (right convolution) acts on the blocks by left
// multiplication with h^(s), and lambda(x) by right multiplication with
// s(x)^*. The fiber element of f at s is therefore taken to be
// F_s(f) = f^(s)^*, on which lambda acts as s(x) (.) from the left and an
// invariant projection p = U_e acts as F -> F P_s with P_s = e^(s).
// The columns of F_s are indexed by the d_s-dimensional multiplicity space.

#include <string>
#include <vector>

#include "frametrace/frames.hpp"

namespace frametrace {

struct Irrep {
  std::string label;
  Eigen::Index dim = 0;
  Rep rep;
};

/// Unitary dual of a finite group with Plancherel weights d_s/|G|.
class IrrepTable {
 public:
  /// Checks, in order: homomorphism/unitarity, irreducibility (commutant
  /// dimension 1), pairwise inequivalence and completeness sum d^2 = |G|.
  /// Throws IrrepError naming the fault and the offending label.
  static IrrepTable validate(GroupPtr group, std::vector<Irrep> irreps, double tol = kDefaultTol);

  const GroupPtr& group() const noexcept { return group_; }
  const std::vector<Irrep>& irreps() const noexcept { return irreps_; }
  std::size_t size() const noexcept { return irreps_.size(); }
  double weight(std::size_t s) const {
    return static_cast<double>(irreps_[s].dim) / static_cast<double>(group_->order());
  }

 private:
  IrrepTable(GroupPtr g, std::vector<Irrep> irreps) : group_(std::move(g)), irreps_(std::move(irreps)) {}

  GroupPtr group_;
  std::vector<Irrep> irreps_;
};

/// Builds unvalidated irrep data from raw matrices (used by file input).
Irrep make_irrep(GroupPtr group, std::string label, std::vector<CMatrix> matrices);

/// Irreps for groups from builtin_group: cyclic:n, dihedral:n, heisenberg:p
/// for prime p, and 'x'-products of these (tensor products of factor irreps).
/// Throws UnsupportedGroup otherwise.
IrrepTable builtin_irreps(const GroupPtr& group);

IrrepTable validate_irreps(GroupPtr group, std::vector<Irrep> irreps, double tol = kDefaultTol);

struct PlancherelCoefficients {
  const IrrepTable* table = nullptr;
  std::vector<CMatrix> blocks;
};

PlancherelCoefficients plancherel_transform(const IrrepTable& table, const GroupVector& f);
GroupVector inverse_plancherel(const PlancherelCoefficients& coeffs);

/// |sum_s (d_s/|G|) ||f^(s)||_F^2 - ||f||^2|.
double parseval_residual(const IrrepTable& table, const GroupVector& f);

/// max_s ||(f*g)^(s) - g^(s) f^(s)||_F.
CheckRecord convolution_to_product_check(const IrrepTable& table, const GroupVector& f,
                                         const GroupVector& g, double tol = kDefaultTol);

/// Per-irrep projections P_s (d_s x d_s, rank m_s) on the multiplicity space.
struct FiberProjectionField {
  const IrrepTable* table = nullptr;
  std::vector<CMatrix> projections;

  std::vector<Eigen::Index> ranks() const;
};

/// P_s = e^(s) with e = p delta_e. Verifies each P_s is a Hermitian
/// idempotent and that p is recovered as U_e; throws NotInvariant otherwise.
FiberProjectionField fiber_projections(const IrrepTable& table, const InvariantProjection& p,
                                       double tol = kDefaultTol);

/// Inverse direction: the invariant projection U_e with e^(s) = blocks[s].
InvariantProjection projection_from_fibers(const IrrepTable& table,
                                           const std::vector<CMatrix>& blocks,
                                           double tol = kDefaultTol);

/// Multiplicity-space coordinates of f at s: F_s(f) E_s, a d_s x m_s matrix,
/// where E_s is an orthonormal basis of range(P_s).
CMatrix fiber_coordinates(const PlancherelCoefficients& coeffs, const FiberProjectionField& field,
                          std::size_t s);

/// max_s ||F_s(psi)^* F_s(eta) - P_s||_F. Throws NotInRange unless eta and
/// psi lie in range(p).
CheckRecord fiber_admissibility_check(const IrrepTable& table, const InvariantProjection& p,
                                      const CVector& eta, const CVector& psi,
                                      double tol = kDefaultTol);

/// sum_s (d_s/|G|) rank(P_s), counting eigenvalues above 1/2.
double rank_measure(const FiberProjectionField& field);

}  // namespace frametrace
