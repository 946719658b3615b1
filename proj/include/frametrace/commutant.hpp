#pragma once

// Numerical commutant pi(G)' and the traciality criterion for admissibility.

#include <vector>

#include "frametrace/frames.hpp"

namespace frametrace {

/// Frobenius-orthonormal basis of the commutant of `rep`.
///
/// `embedding` is the isometry from the rep space into the space the
/// algebra was originally computed on: the identity for commutant_basis, the
/// range basis of p for reduced_commutant.
struct CommutantBasis {
  Rep rep;
  CMatrix embedding;
  std::vector<CMatrix> elements;

  std::size_t dimension() const noexcept { return elements.size(); }
};

/// Null space of T -> (T pi(x) - pi(x) T)_x over all group elements, taken
/// from the eigendecomposition of the normal equations.
CommutantBasis commutant_basis(const Rep& rep, double cutoff = kRankCutoff);

/// (1/|G|) sum_x |trace pi(x)|^2, which equals dim pi(G)' for a unitary rep.
double commutant_dimension_by_characters(const Rep& rep);

/// max over basis elements T and x of ||T pi(x) - pi(x) T||_F.
double commutation_residual(const CommutantBasis& basis);

/// Frobenius-orthonormal basis of span(ops); linearly dependent members are dropped.
std::vector<CMatrix> orthonormalize_operators(const std::vector<CMatrix>& ops,
                                              double cutoff = kRankCutoff);

/// max over a in `of` of ||a - P a||_F / ||a||_F, where P projects onto span(onto).
double span_residual(const std::vector<CMatrix>& of, const std::vector<CMatrix>& onto);

/// Basis of {p T p : T in span(basis)} acting on range(p), expressed in the
/// coordinates of p's range basis. Throws NotInvariant if p does not
/// commute with the representation.
CommutantBasis reduced_commutant(const CommutantBasis& basis, const CMatrix& p,
                                 double tol = kDefaultTol);

/// Traciality of (eta, psi): max_i |<T_i eta, psi> - tr(T_i)| over the basis.
/// The finite trace is linear, so checking a spanning set suffices.
CheckRecord is_tracial_pair(const CommutantBasis& basis, const TraceFunctional& trace,
                            const CVector& eta, const CVector& psi, double tol = kDefaultTol);

/// Compares <T_i eta, psi> with <T_i eta0, psi0> for every generator.
/// Throws ReferencePairNotAdmissible if (eta0, psi0) fails is_admissible_pair.
CheckRecord generalized_biorthogonality(const Rep& rep, const std::vector<CMatrix>& generators,
                                        const CVector& eta0, const CVector& psi0,
                                        const CVector& eta, const CVector& psi,
                                        double tol = kDefaultTol);

}  // namespace frametrace
