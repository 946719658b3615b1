#pragma once

// Dense complex linear-algebra kernels shared by every other module.
//
// Everything here is a free function over Eigen dense types, templated on the
// underlying real scalar. The rest of the library instantiates Real = double
// through the CMatrix / CVector aliases.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>

#include "frametrace/errors.hpp"

namespace frametrace {

template <typename Real>
using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using Vector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using CMatrix = Matrix<double>;
using CVector = Vector<double>;
using RVector = RealVector<double>;

/// Relative tolerance for operator identities unless a caller supplies one.
inline constexpr double kDefaultTol = 1e-9;
/// Positive operators with lambda_min <= floor * lambda_max are treated as singular.
inline constexpr double kInvertibilityFloor = 1e-12;
/// Relative eigenvalue cutoff separating a null space from its complement.
inline constexpr double kRankCutoff = 1e-9;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const auto z = a(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

/// Builds a matrix from row-major entries, rejecting NaN/Inf.
template <typename Real>
Matrix<Real> make_matrix(Eigen::Index rows, Eigen::Index cols,
                         std::span<const std::complex<Real>> row_major) {
  if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != row_major.size())
    throw DimensionMismatch("make_matrix: entry count " + std::to_string(row_major.size()) +
                            " != " + std::to_string(rows) + "x" + std::to_string(cols));
  Matrix<Real> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = row_major[i * cols + j];
  if (!all_finite(m)) throw NotFinite("make_matrix: non-finite entry");
  return m;
}

template <typename Real>
Matrix<Real> matmul(const Matrix<Real>& a, const Matrix<Real>& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  return a * b;
}

template <typename Real>
Matrix<Real> adjoint(const Matrix<Real>& a) {
  return a.adjoint();
}

/// Sum_ij a_ij conj(b_ij).
template <typename Real>
std::complex<Real> frob_inner(const Matrix<Real>& a, const Matrix<Real>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("frob_inner: shape mismatch");
  return (a.array() * b.array().conjugate()).sum();
}

/// <x, y> = sum x_i conj(y_i); linear in the first slot.
template <typename Real>
std::complex<Real> inner(const Vector<Real>& x, const Vector<Real>& y) {
  if (x.size() != y.size()) throw DimensionMismatch("inner: length mismatch");
  return y.dot(x);
}

template <typename Real>
struct HermEig {
  RealVector<Real> eigenvalues;  // ascending
  Matrix<Real> eigenvectors;     // columns, unitary
};

template <typename Real>
Real hermitian_defect(const Matrix<Real>& a) {
  return (a - a.adjoint()).norm();
}

template <typename Real>
HermEig<Real> eig_hermitian(const Matrix<Real>& a, Real tol = Real(kDefaultTol)) {
  if (a.rows() != a.cols()) throw DimensionMismatch("eig_hermitian: matrix not square");
  if (hermitian_defect(a) > tol * a.norm())
    throw NotHermitian("eig_hermitian: ||A - A*||_F exceeds tolerance");
  if (a.rows() == 0) return {RealVector<Real>(0), Matrix<Real>(0, 0)};
  const Matrix<Real> sym = (a + a.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("eig_hermitian: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Real>
Matrix<Real> reconstruct(const HermEig<Real>& e) {
  return e.eigenvectors * e.eigenvalues.template cast<std::complex<Real>>().asDiagonal() *
         e.eigenvectors.adjoint();
}

namespace detail {

template <typename Real, typename Fn>
Matrix<Real> psd_spectral_map(const Matrix<Real>& a, Real floor, Fn&& fn, const char* who) {
  const auto e = eig_hermitian(a);
  const Eigen::Index n = e.eigenvalues.size();
  if (n == 0) return Matrix<Real>(0, 0);
  const Real lo = e.eigenvalues(0);
  const Real hi = e.eigenvalues(n - 1);
  if (!(hi > Real(0)) || lo <= floor * hi)
    throw NotInvertible(std::string(who) + ": lambda_min=" + std::to_string(lo) +
                        " below floor relative to lambda_max=" + std::to_string(hi));
  Vector<Real> d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = fn(e.eigenvalues(i));
  return e.eigenvectors * d.asDiagonal() * e.eigenvectors.adjoint();
}

}  // namespace detail

template <typename Real>
Matrix<Real> inv_psd(const Matrix<Real>& a, Real floor = Real(kInvertibilityFloor)) {
  return detail::psd_spectral_map<Real>(a, floor, [](Real l) { return Real(1) / l; }, "inv_psd");
}

template <typename Real>
Matrix<Real> inv_sqrt_psd(const Matrix<Real>& a, Real floor = Real(kInvertibilityFloor)) {
  return detail::psd_spectral_map<Real>(
      a, floor, [](Real l) { return Real(1) / std::sqrt(l); }, "inv_sqrt_psd");
}

/// Orthonormal basis (columns) of the null space of a Hermitian PSD matrix:
/// eigenvectors whose eigenvalue is <= cutoff * lambda_max.
template <typename Real>
Matrix<Real> null_space_psd(const Matrix<Real>& n, Real cutoff = Real(kRankCutoff)) {
  const auto e = eig_hermitian(n);
  const Eigen::Index dim = e.eigenvalues.size();
  if (dim == 0) return Matrix<Real>(0, 0);
  const Real hi = std::max(std::abs(e.eigenvalues(dim - 1)), std::abs(e.eigenvalues(0)));
  Eigen::Index k = 0;
  while (k < dim && e.eigenvalues(k) <= cutoff * hi) ++k;
  if (hi == Real(0)) k = dim;
  return e.eigenvectors.leftCols(k);
}

/// Orthonormal basis of the column span of `a`, computed from the spectrum of a a*.
template <typename Real>
Matrix<Real> orthonormal_range(const Matrix<Real>& a, Real cutoff = Real(kRankCutoff)) {
  const Matrix<Real> gram = a * a.adjoint();
  const auto e = eig_hermitian(gram);
  const Eigen::Index dim = e.eigenvalues.size();
  if (dim == 0) return Matrix<Real>(a.rows(), 0);
  const Real hi = e.eigenvalues(dim - 1);
  if (!(hi > Real(0))) return Matrix<Real>(a.rows(), 0);
  Eigen::Index first = dim;
  while (first > 0 && e.eigenvalues(first - 1) > cutoff * hi) --first;
  // Highest eigenvalues first keeps the basis order stable under small perturbations.
  return e.eigenvectors.rightCols(dim - first).rowwise().reverse();
}

/// ||a - Id||_F / sqrt(n): RMS deviation from the identity, so a scalar
/// multiple c*Id scores |c - 1| regardless of dimension.
template <typename Real>
Real identity_residual(const Matrix<Real>& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("identity_residual: matrix not square");
  if (a.rows() == 0) return Real(0);
  return (a - Matrix<Real>::Identity(a.rows(), a.cols())).norm() /
         std::sqrt(static_cast<Real>(a.rows()));
}

}  // namespace frametrace
