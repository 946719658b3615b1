#pragma once

// Seeded random sampling used by the CLI checks and the test suites.
//
// The generator is std::mt19937_64 seeded directly with the user seed;
// complex samples have independent standard normal real and imaginary parts.

#include <random>

#include "frametrace/plancherel.hpp"

namespace frametrace {

using Rng = std::mt19937_64;

CVector random_vector(Rng& rng, Eigen::Index n);
CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
/// Haar-like random unitary (QR of a Gaussian matrix with phase fix).
CMatrix random_unitary(Rng& rng, Eigen::Index n);
/// Orthonormal columns spanning a random k-dimensional subspace of C^n.
CMatrix random_isometry(Rng& rng, Eigen::Index n, Eigen::Index k);

/// Random invariant projection assembled fiber by fiber: every irrep gets a
/// random rank m in [0, d] and a random rank-m projection on its
/// multiplicity space. At least one fiber is nonzero.
InvariantProjection random_isotypic_projection(const IrrepTable& table, Rng& rng);

/// Random nonzero invariant projection without irrep data: a random union
/// of eigenspaces of U_h* U_h for random h. Those spectral projections lie
/// in VN_r(G), hence commute with lambda.
InvariantProjection random_spectral_projection(const GroupPtr& group, Rng& rng);

}  // namespace frametrace
