#include <doctest.h>

#include <numbers>

#include "support.hpp"

using namespace frametrace;
namespace ft = frametrace::testing;

namespace {

CVector dirac(int L, int j) { return CVector::Unit(L, j); }

/// Orthonormal basis of (span{A g : A adjoint lattice})^perp, the set of w
/// with T_w* T_g = 0.
CMatrix wr_null_set(int L, int a, int b, const CVector& g) {
  const auto ops = adjoint_lattice_ops(L, a, b);
  CMatrix span(L, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) span.col(static_cast<Eigen::Index>(k)) = ops[k] * g;
  const CMatrix q = orthonormal_range<double>(CMatrix(span * span.adjoint()));
  return null_space_psd<double>(CMatrix(q * q.adjoint()));
}

}  // namespace

TEST_CASE("translation and modulation") {
  const int L = 12;
  CHECK((translation(L, 3) * dirac(L, 0) - dirac(L, 3)).norm() == 0.0);
  CHECK((modulation(L, 2) * modulation(L, 11) - modulation(L, 1)).norm() < 1e-14);
  for (int x : {0, 1, 5})
    for (int w : {0, 2, 7}) {
      const CMatrix lhs = translation(L, x) * modulation(L, w);
      const Complex c = std::polar(1.0, -2.0 * std::numbers::pi * x * w / L);
      CHECK((lhs - c * modulation(L, w) * translation(L, x)).norm() < 1e-12);
      CHECK((lhs.adjoint() * lhs - CMatrix::Identity(L, L)).norm() < 1e-12);
    }
  // (T_x f)(j) = f(j - x)
  Rng rng(71);
  const CVector f = random_vector(rng, L);
  const CVector tf = translation(L, 5) * f;
  for (int j = 0; j < L; ++j) CHECK(tf(j) == f(((j - 5) % L + L) % L));
}

TEST_CASE("gabor_coefficient_map") {
  CVector c(1);
  c << Complex(0.3, 0.8);
  const CMatrix t1 = gabor_coefficient_map(make_gabor_system(make_lattice(1, 1, 1), c));
  CHECK(t1.rows() == 1);
  CHECK(t1(0, 0) == std::conj(c(0)));

  Rng rng(72);
  const int L = 6;
  const CVector g = random_vector(rng, L);
  const CMatrix s = gabor_frame_operator(make_gabor_system(make_lattice(L, 1, 1), g));
  CHECK((s - L * g.squaredNorm() * CMatrix::Identity(L, L)).norm() < 1e-11);
  CHECK((s - ft::gabor_oracle(L, 1, 1, g, g)).norm() < 1e-11);

  CVector g0 = CVector::Zero(4);
  g0(0) = g0(1) = std::sqrt(0.5);
  CHECK((gabor_frame_operator(make_gabor_system(make_lattice(4, 2, 2), g0)) -
         CMatrix::Identity(4, 4))
            .norm() < 1e-14);

  const auto lat = make_lattice(12, 3, 2);
  const CVector h = random_vector(rng, 12);
  const CMatrix tm = gabor_coefficient_map(make_gabor_system(lat, h));
  CHECK(tm.rows() == 24);
  CHECK((tm.adjoint() * tm - ft::gabor_oracle(12, 3, 2, h, h)).norm() < 1e-10);

  CHECK_THROWS_AS(make_lattice(12, 5, 2), InvalidParameter);
  CHECK_THROWS_AS(make_lattice(12, 3, 0), InvalidParameter);
  CHECK_THROWS_AS(make_gabor_system(lat, CVector::Zero(5)), DimensionMismatch);
}

TEST_CASE("gabor_canonical_dual") {
  const auto lat = make_lattice(12, 3, 2);
  const CVector g = 2.0 * reference_window(12, 3, 2);
  const auto sys = make_gabor_system(lat, g);
  CHECK((gabor_frame_operator(sys) - 4.0 * CMatrix::Identity(12, 12)).norm() < 1e-12);
  CHECK((gabor_canonical_dual(sys) - g / 4.0).norm() < 1e-13);

  Rng rng(73);
  const auto rsys = make_gabor_system(lat, random_vector(rng, 12));
  const CVector gamma = gabor_canonical_dual(rsys);
  const auto r = gabor_reconstruction_check(rsys, gamma);
  CHECK(r.pass);
  CHECK(r.residual <= 1e-9);
  // Oracle: sum of rank-one terms over the lattice.
  CHECK((ft::gabor_oracle(12, 3, 2, rsys.window, gamma) - CMatrix::Identity(12, 12)).norm() <= 1e-9);

  const auto bad = make_gabor_system(make_lattice(4, 2, 4), random_vector(rng, 4));
  CHECK(gabor_coefficient_map(bad).rows() == 2);
  CHECK_THROWS_AS(gabor_canonical_dual(bad), NotAFrame);
  CHECK_THROWS_AS(gabor_canonical_dual(bad), NotInvertible);
}

TEST_CASE("reference_window") {
  const CVector w4 = reference_window(4, 2, 2);
  CVector expect(4);
  expect << std::sqrt(0.5), std::sqrt(0.5), 0.0, 0.0;
  CHECK((w4 - expect).norm() < 1e-15);

  const CVector w12 = reference_window(12, 3, 2);
  for (int j = 0; j < 12; ++j) CHECK(std::abs(w12(j) - (j < 3 ? std::sqrt(1.0 / 6.0) : 0.0)) < 1e-15);

  for (auto [L, a, b] : {std::array{4, 2, 2}, std::array{12, 3, 2}, std::array{12, 2, 2},
                         std::array{12, 4, 3}, std::array{8, 1, 2}}) {
    const CVector w = reference_window(L, a, b);
    const CMatrix s = ft::gabor_oracle(L, a, b, w, w);
    CHECK((s - CMatrix::Identity(L, L)).norm() <= 1e-10);
  }
  CHECK_THROWS_AS(reference_window(4, 2, 4), InvalidParameter);
}

TEST_CASE("adjoint_lattice_ops") {
  const auto one = adjoint_lattice_ops(7, 1, 1);
  REQUIRE(one.size() == 1);
  CHECK((one[0] - CMatrix::Identity(7, 7)).norm() == 0.0);

  const auto lat = make_lattice(12, 3, 2);
  const auto ops = lattice_operators(lat);
  const auto adj = adjoint_lattice_ops(12, 3, 2);
  CHECK(ops.size() == 24);
  CHECK(adj.size() == 6);
  double worst = 0.0;
  for (const auto& a : adj)
    for (const auto& m : ops) worst = std::max(worst, (a * m - m * a).norm());
  CHECK(worst <= 1e-12);

  const auto wh = wh_group_build(12, 3, 2);
  const auto comm = commutant_basis(wh.rep);
  CHECK(comm.dimension() == adj.size());
  CHECK(commutant_dimension_by_characters(wh.rep) == doctest::Approx(6.0));
  CHECK(span_residual(adj, comm.elements) <= 1e-9);
  CHECK(span_residual(comm.elements, adj) <= 1e-9);
}

TEST_CASE("wexler_raz_check") {
  Rng rng(74);
  const auto lat = make_lattice(12, 3, 2);
  const auto sys = make_gabor_system(lat, random_vector(rng, 12));
  const CVector gamma = gabor_canonical_dual(sys);
  auto r = wexler_raz_check(sys, gamma);
  CHECK(r.pass);
  CHECK(r.name == "wexler_raz");
  CHECK(lat.density() == 0.5);
  CHECK(std::abs(inner<double>(gamma, sys.window) - 0.5) < 1e-9);

  const auto ref = make_gabor_system(lat, reference_window(12, 3, 2));
  CHECK(wexler_raz_check(ref, ref.window).pass);
  r = wexler_raz_check(ref, CVector(2.0 * ref.window));
  CHECK_FALSE(r.pass);
  CHECK(r.residual == doctest::Approx(0.5));

  // Critical density: constant 1.
  const auto crit = make_gabor_system(make_lattice(4, 2, 2), random_vector(rng, 4));
  const CVector gc = gabor_canonical_dual(crit);
  CHECK(wexler_raz_check(crit, gc).pass);
  CHECK(std::abs(inner<double>(gc, crit.window) - 1.0) < 1e-9);
}

TEST_CASE("Wexler-Raz and reconstruction agree") {
  Rng rng(75);
  const auto sys = make_gabor_system(make_lattice(12, 3, 2), random_vector(rng, 12));
  const CVector gamma = gabor_canonical_dual(sys);
  const CMatrix w = wr_null_set(12, 3, 2, sys.window);
  CHECK(w.cols() == 6);
  for (int k = 0; k < 20; ++k) {
    const CVector wk = w * random_vector(rng, w.cols());
    CVector cand = gamma + wk;
    // Minimality of the canonical dual.
    CHECK(std::abs(inner<double>(gamma, wk)) <= 1e-9 * gamma.norm() * wk.norm());
    if (k % 2) cand += 1e-6 * cand.norm() * random_vector(rng, 12).normalized();
    const bool wr = wexler_raz_check(sys, cand).pass;
    const bool rec = gabor_reconstruction_check(sys, cand).pass;
    CHECK(wr == rec);
    CHECK(wr == (k % 2 == 0));
  }
}

TEST_CASE("wr_fundamental_relation_check") {
  const CVector d = dirac(4, 0);
  auto r = wr_fundamental_relation_check(4, 2, 2, d, d, d);
  CHECK(r.residual <= 1e-12);

  Rng rng(76);
  for (auto [L, a, b] : {std::array{12, 3, 2}, std::array{12, 1, 1}, std::array{8, 2, 4}}) {
    const CVector f = random_vector(rng, L), g = random_vector(rng, L), h = random_vector(rng, L);
    r = wr_fundamental_relation_check(L, a, b, f, g, h);
    CHECK(r.pass);
    CHECK(r.name == "wr_fundamental_relation");
    // Oracle for the left-hand side.
    const CVector lhs = ft::gabor_oracle(L, a, b, g, f) * h;
    CHECK((lhs - gabor_coefficient_map(make_gabor_system(make_lattice(L, a, b), f)).adjoint() *
                     (gabor_coefficient_map(make_gabor_system(make_lattice(L, a, b), g)) * h))
              .norm() < 1e-10);
  }
  // a = b = 1: the adjoint lattice is {Id} and both sides reduce to L <f, g> h.
  const int L = 5;
  const CVector f = random_vector(rng, L), g = random_vector(rng, L), h = random_vector(rng, L);
  const CVector lhs = ft::gabor_oracle(L, 1, 1, g, f) * h;
  CHECK((lhs - static_cast<double>(L) * inner<double>(f, g) * h).norm() < 1e-10);
  CHECK(wr_fundamental_relation_check(L, 1, 1, f, g, h).pass);

}

TEST_CASE("wh_group_build and wh_bridge_check") {
  const auto small = wh_group_build(4, 2, 2);
  CHECK(small.q == 1);
  CHECK(small.group->order() == 4);
  CHECK(small.group->is_abelian());
  CHECK(ft::element_orders(*small.group) == std::multiset<int>{1, 2, 2, 2});

  const auto wh = wh_group_build(12, 3, 2);
  CHECK(wh.q == 2);
  CHECK(wh.group->order() == 48);
  CHECK_FALSE(wh.group->is_abelian());
  CHECK(wh.rep.homomorphism_residual() < 1e-12);
  CHECK(wh.group->label() == "wh:12:3:2");
  CHECK_THROWS_AS(wh_group_build(12, 3, 2, 1), NotAGroup);
  CHECK(wh_group_build(12, 3, 2, 4).group->order() == 96);

  Rng rng(77);
  for (int k = 0; k < 5; ++k) {
    const CVector f = random_vector(rng, 12), g = random_vector(rng, 12);
    const auto r = wh_bridge_check(wh, f, g);
    CHECK(r.pass);
    CHECK(r.name == "wh_bridge");
    // Oracle: average of V_g* V_f by rank-one sums.
    const CMatrix avg = ft::synthesis_analysis_oracle(wh.rep, f, g) / 2.0;
    CHECK((avg - ft::gabor_oracle(12, 3, 2, f, g)).norm() <= 1e-9);
  }
}
