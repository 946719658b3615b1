#pragma once

// Finite Weyl-Heisenberg (Gabor) systems on C^L.
//
// Dictionary with the continuous setting: time step a (translations T_{na}),
// modulation step b (modulations M_{mb}), alpha*beta <-> ab/L, and the
// adjoint lattice uses time step L/b and modulation step L/a.
//
//   (T_x f)(j) = f(j - x mod L)     (M_w f)(j) = exp(2 pi i w j / L) f(j)
//   T_x M_w = exp(-2 pi i x w / L) M_w T_x

#include <vector>

#include "frametrace/frames.hpp"

namespace frametrace {

struct GaborLattice {
  int L = 1;
  int a = 1;  // time step, a | L
  int b = 1;  // modulation step, b | L

  int time_points() const { return L / a; }
  int freq_points() const { return L / b; }
  int size() const { return time_points() * freq_points(); }
  double redundancy() const { return static_cast<double>(L) / (static_cast<double>(a) * b); }
  /// Finite analog of alpha*beta.
  double density() const { return static_cast<double>(a) * b / static_cast<double>(L); }
  /// The swapped lattice: time step L/b, modulation step L/a.
  GaborLattice adjoint() const { return {L, L / b, L / a}; }
};

/// Throws InvalidParameter unless L >= 1, a | L and b | L.
GaborLattice make_lattice(int L, int a, int b);

struct GaborSystem {
  GaborLattice lattice;
  CVector window;
};

GaborSystem make_gabor_system(GaborLattice lattice, CVector window);

CMatrix translation(int L, int x);
CMatrix modulation(int L, int w);

/// M_{mb} T_{na} for m in Z_{L/b}, n in Z_{L/a}, in row order m (L/a) + n.
std::vector<CMatrix> lattice_operators(const GaborLattice& lat);

/// (L/a)(L/b) x L analysis matrix; row (m,n) is (M_{mb} T_{na} g)^*.
CMatrix gabor_coefficient_map(const GaborSystem& sys);

/// S = T* T.
CMatrix gabor_frame_operator(const GaborSystem& sys);

/// S^-1 g. Throws NotAFrame when S fails the eigenvalue floor.
CVector gabor_canonical_dual(const GaborSystem& sys, double floor = kInvertibilityFloor);

/// ||T_gamma* T_g - Id||_F / sqrt(L).
CheckRecord gabor_reconstruction_check(const GaborSystem& sys, const CVector& gamma,
                                       double tol = kDefaultTol);

/// sqrt(b/L) chi_[0,a), which is tight with S = Id. Requires ab <= L.
CVector reference_window(int L, int a, int b);

/// M_{s L/a} T_{t L/b} for s in Z_a, t in Z_b: the operators commuting with
/// every lattice operator.
std::vector<CMatrix> adjoint_lattice_ops(int L, int a, int b);

/// max over adjoint-lattice operators A of |<A gamma, g> - (ab/L) [A = Id]|.
CheckRecord wexler_raz_check(const GaborSystem& sys, const CVector& gamma,
                             double tol = kDefaultTol);

/// ||T_f* T_g h - (L/ab) T'_h* T'_g f|| with T' on the adjoint lattice.
CheckRecord wr_fundamental_relation_check(int L, int a, int b, const CVector& f,
                                          const CVector& g, const CVector& h,
                                          double tol = kDefaultTol);

/// The finite Weyl-Heisenberg group: elements (m, n, k) with m in Z_{L/b},
/// n in Z_{L/a}, k in Z_q, law
///   (m,n,k)(m',n',k') = (m+m', n+n', k + k' - r m' n),   r = ab q / L,
/// i.e. the central factor z = exp(2 pi i k / q) picks up omega^{-m'n} with
/// omega = exp(2 pi i ab/L). Element index (m (L/a) + n) q + k.
struct WHGroup {
  GaborLattice lattice;
  int q = 1;
  GroupPtr group;
  Rep rep;  // pi(m,n,k) = exp(2 pi i k/q) M_{mb} T_{na} on C^L
};

/// Uses q = L / gcd(L, ab).
WHGroup wh_group_build(int L, int a, int b);
/// Explicit q; throws NotAGroup if omega is not a q-th root of unity.
WHGroup wh_group_build(int L, int a, int b, int q);

/// ||(1/q) V_g* V_f - T_g* T_f||_F, the central average standing in for the
/// integral over the circle.
CheckRecord wh_bridge_check(const WHGroup& wh, const CVector& f, const CVector& g,
                            double tol = kDefaultTol);

}  // namespace frametrace
