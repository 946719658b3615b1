#include "frametrace/gabor.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace frametrace {

namespace {

Complex phase(long long k, long long n) {
  const long long r = ((k % n) + n) % n;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

}  // namespace

GaborLattice make_lattice(int L, int a, int b) {
  if (L < 1 || a < 1 || b < 1)
    throw InvalidParameter("gabor: L, a, b must be positive");
  if (L % a != 0) throw InvalidParameter("gabor: time step a must divide L");
  if (L % b != 0) throw InvalidParameter("gabor: modulation step b must divide L");
  return {L, a, b};
}

GaborSystem make_gabor_system(GaborLattice lattice, CVector window) {
  make_lattice(lattice.L, lattice.a, lattice.b);
  if (window.size() != lattice.L)
    throw DimensionMismatch("gabor: window length " + std::to_string(window.size()) +
                            " != L = " + std::to_string(lattice.L));
  if (!all_finite(window)) throw NotFinite("gabor: window has non-finite entries");
  return {lattice, std::move(window)};
}

CMatrix translation(int L, int x) {
  CMatrix t = CMatrix::Zero(L, L);
  for (int j = 0; j < L; ++j) t(((j + x) % L + L) % L, j) = 1.0;
  return t;
}

CMatrix modulation(int L, int w) {
  CMatrix m = CMatrix::Zero(L, L);
  for (int j = 0; j < L; ++j) m(j, j) = phase(1LL * w * j, L);
  return m;
}

std::vector<CMatrix> lattice_operators(const GaborLattice& lat) {
  std::vector<CMatrix> ops;
  ops.reserve(static_cast<std::size_t>(lat.size()));
  for (int m = 0; m < lat.freq_points(); ++m) {
    const CMatrix mod = modulation(lat.L, m * lat.b);
    for (int n = 0; n < lat.time_points(); ++n) ops.push_back(mod * translation(lat.L, n * lat.a));
  }
  return ops;
}

CMatrix gabor_coefficient_map(const GaborSystem& sys) {
  const auto ops = lattice_operators(sys.lattice);
  CMatrix t(static_cast<Eigen::Index>(ops.size()), sys.lattice.L);
  for (std::size_t r = 0; r < ops.size(); ++r)
    t.row(static_cast<Eigen::Index>(r)) = (ops[r] * sys.window).adjoint();
  return t;
}

CMatrix gabor_frame_operator(const GaborSystem& sys) {
  const CMatrix t = gabor_coefficient_map(sys);
  return t.adjoint() * t;
}

CVector gabor_canonical_dual(const GaborSystem& sys, double floor) {
  try {
    return inv_psd<double>(gabor_frame_operator(sys), floor) * sys.window;
  } catch (const NotInvertible& e) {
    throw NotAFrame(std::string("NotAFrame: ") + e.what());
  }
}

CheckRecord gabor_reconstruction_check(const GaborSystem& sys, const CVector& gamma, double tol) {
  const CMatrix tg = gabor_coefficient_map(sys);
  const CMatrix tgamma = gabor_coefficient_map(make_gabor_system(sys.lattice, gamma));
  return make_check("gabor_reconstruction", identity_residual<double>(tgamma.adjoint() * tg), tol);
}

CVector reference_window(int L, int a, int b) {
  const auto lat = make_lattice(L, a, b);
  if (1LL * a * b > L)
    throw InvalidParameter("reference_window: needs ab <= L (redundancy >= 1)");
  CVector g = CVector::Zero(lat.L);
  const double height = std::sqrt(static_cast<double>(b) / static_cast<double>(L));
  for (int j = 0; j < a; ++j) g(j) = height;
  return g;
}

std::vector<CMatrix> adjoint_lattice_ops(int L, int a, int b) {
  const auto lat = make_lattice(L, a, b);
  std::vector<CMatrix> ops;
  ops.reserve(static_cast<std::size_t>(a * b));
  for (int s = 0; s < a; ++s) {
    const CMatrix mod = modulation(lat.L, s * (L / a));
    for (int t = 0; t < b; ++t) ops.push_back(mod * translation(lat.L, t * (L / b)));
  }
  return ops;
}

CheckRecord wexler_raz_check(const GaborSystem& sys, const CVector& gamma, double tol) {
  const auto& lat = sys.lattice;
  if (gamma.size() != lat.L) throw DimensionMismatch("wexler_raz_check: candidate length");
  const auto ops = adjoint_lattice_ops(lat.L, lat.a, lat.b);
  const double constant = lat.density();
  double worst = 0.0;
  // ops[0] is M_0 T_0 = Id.
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const Complex target = k == 0 ? Complex(constant) : Complex(0.0);
    worst = std::max(worst, std::abs(inner<double>(ops[k] * gamma, sys.window) - target));
  }
  return make_check("wexler_raz", worst, tol);
}

CheckRecord wr_fundamental_relation_check(int L, int a, int b, const CVector& f, const CVector& g,
                                          const CVector& h, double tol) {
  const auto lat = make_lattice(L, a, b);
  const auto adj = lat.adjoint();
  const CMatrix tf = gabor_coefficient_map(make_gabor_system(lat, f));
  const CMatrix tg = gabor_coefficient_map(make_gabor_system(lat, g));
  const CMatrix th_adj = gabor_coefficient_map(make_gabor_system(adj, h));
  const CMatrix tg_adj = gabor_coefficient_map(make_gabor_system(adj, g));
  const CVector lhs = tf.adjoint() * (tg * h);
  const CVector rhs = lat.redundancy() * (th_adj.adjoint() * (tg_adj * f));
  const double r = (lhs - rhs).norm() / std::max(1.0, lhs.norm());
  return make_check("wr_fundamental_relation", r, tol);
}

WHGroup wh_group_build(int L, int a, int b) {
  return wh_group_build(L, a, b, L / std::gcd(L, a * b));
}

WHGroup wh_group_build(int L, int a, int b, int q) {
  const auto lat = make_lattice(L, a, b);
  if (q < 1) throw InvalidParameter("wh_group_build: q must be positive");
  if ((1LL * a * b * q) % L != 0)
    throw NotAGroup("cocycle: exp(2 pi i ab/L) is not a " + std::to_string(q) +
                    "-th root of unity");
  const long long r = 1LL * a * b * q / L;
  const int M = lat.freq_points(), N = lat.time_points();
  const int order = M * N * q;
  auto index = [&](int m, int n, int k) { return (m * N + n) * q + k; };

  FiniteGroup::Table table(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  for (int x = 0; x < order; ++x) {
    const int m = x / (N * q), n = (x / q) % N, k = x % q;
    for (int y = 0; y < order; ++y) {
      const int m2 = y / (N * q), n2 = (y / q) % N, k2 = y % q;
      const long long kk = ((k + k2 - r * m2 * n) % q + q) % q;
      table[x][y] = index((m + m2) % M, (n + n2) % N, static_cast<int>(kk));
    }
  }
  auto group = group_from_cayley(std::move(table), "wh:" + std::to_string(L) + ":" +
                                                       std::to_string(a) + ":" + std::to_string(b));

  const auto ops = lattice_operators(lat);  // index m N + n
  std::vector<CMatrix> mats;
  mats.reserve(static_cast<std::size_t>(order));
  for (int x = 0; x < order; ++x) mats.push_back(phase(x % q, q) * ops[static_cast<std::size_t>(x / q)]);
  auto rep = Rep::make(group, std::move(mats));
  return {lat, q, std::move(group), std::move(rep)};
}

CheckRecord wh_bridge_check(const WHGroup& wh, const CVector& f, const CVector& g, double tol) {
  const auto vf = coefficient_operator(wh.rep, f);
  const auto vg = coefficient_operator(wh.rep, g);
  const CMatrix averaged = vg.matrix.adjoint() * vf.matrix / static_cast<double>(wh.q);
  const CMatrix tf = gabor_coefficient_map(make_gabor_system(wh.lattice, f));
  const CMatrix tg = gabor_coefficient_map(make_gabor_system(wh.lattice, g));
  return make_check("wh_bridge", (averaged - tg.adjoint() * tf).norm(), tol);
}

}  // namespace frametrace
