#include "frametrace/commutant.hpp"

#include <cmath>

namespace frametrace {

namespace {

// vec is column-major: vec(T)[i + d j] = T(i, j), so vec(A X B) = (B^T kron A) vec(X).
void add_kron(CMatrix& out, const CMatrix& a, const CMatrix& b, Complex scale) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j) {
      const Complex s = scale * a(i, j);
      if (s == Complex(0)) continue;
      out.block(i * rb, j * cb, rb, cb) += s * b;
    }
}

CMatrix vectorize(const std::vector<CMatrix>& ops) {
  if (ops.empty()) return CMatrix(0, 0);
  const Eigen::Index len = ops.front().size();
  CMatrix cols(len, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].size() != len) throw DimensionMismatch("operator list of mixed shapes");
    cols.col(static_cast<Eigen::Index>(k)) =
        Eigen::Map<const CVector>(ops[k].data(), ops[k].size());
  }
  return cols;
}

// Orthonormal basis of the column span via the Gram matrix A*A (cheap when
// there are fewer columns than rows), followed by a QR pass to restore
// orthonormality lost to the 1/sqrt(lambda) rescaling.
CMatrix orthonormal_columns(const CMatrix& a, double cutoff) {
  if (a.cols() == 0) return CMatrix(a.rows(), 0);
  const auto e = eig_hermitian<double>(a.adjoint() * a);
  const Eigen::Index k = e.eigenvalues.size();
  const double hi = e.eigenvalues(k - 1);
  if (!(hi > 0.0)) return CMatrix(a.rows(), 0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = k - 1; i >= 0; --i)
    if (e.eigenvalues(i) > cutoff * hi) keep.push_back(i);
  CMatrix u(a.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const Eigen::Index i = keep[c];
    u.col(static_cast<Eigen::Index>(c)) =
        a * e.eigenvectors.col(i) / std::sqrt(e.eigenvalues(i));
  }
  Eigen::HouseholderQR<CMatrix> qr(u);
  CMatrix q = qr.householderQ() * CMatrix::Identity(u.rows(), u.cols());
  // Undo the phase freedom of QR so that q stays close to u column by column.
  const CMatrix r = qr.matrixQR().topRows(u.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    const Complex d = r(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

std::vector<CMatrix> unvectorize(const CMatrix& cols, Eigen::Index rows, Eigen::Index ncols) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(cols.cols()));
  for (Eigen::Index k = 0; k < cols.cols(); ++k)
    out.push_back(Eigen::Map<const CMatrix>(cols.col(k).data(), rows, ncols));
  return out;
}

}  // namespace

CommutantBasis commutant_basis(const Rep& rep, double cutoff) {
  const Eigen::Index d = rep.dim();
  const Eigen::Index dd = d * d;
  // sum_x K_x* K_x with K_x = pi^T kron I - I kron pi expands to
  // (sum conj(pi) pi^T) kron I + I kron (sum pi* pi) - C - C*,
  // where C = sum conj(pi) kron pi.
  CMatrix left = CMatrix::Zero(d, d);
  CMatrix right = CMatrix::Zero(d, d);
  CMatrix cross = CMatrix::Zero(dd, dd);
  for (const auto& m : rep.matrices()) {
    left += m.conjugate() * m.transpose();
    right += m.adjoint() * m;
    add_kron(cross, m.conjugate(), m, 1.0);
  }
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix normal = -cross - cross.adjoint();
  add_kron(normal, left, id, 1.0);
  add_kron(normal, id, right, 1.0);

  const CMatrix null = null_space_psd<double>(normal, cutoff);
  return {rep, CMatrix::Identity(d, d), unvectorize(null, d, d)};
}

double commutant_dimension_by_characters(const Rep& rep) {
  double sum = 0.0;
  for (const auto& m : rep.matrices()) sum += std::norm(m.trace());
  return sum / static_cast<double>(rep.group()->order());
}

double commutation_residual(const CommutantBasis& basis) {
  double worst = 0.0;
  for (const auto& t : basis.elements)
    for (const auto& m : basis.rep.matrices()) worst = std::max(worst, (t * m - m * t).norm());
  return worst;
}

std::vector<CMatrix> orthonormalize_operators(const std::vector<CMatrix>& ops, double cutoff) {
  if (ops.empty()) return {};
  const CMatrix q = orthonormal_columns(vectorize(ops), cutoff);
  return unvectorize(q, ops.front().rows(), ops.front().cols());
}

double span_residual(const std::vector<CMatrix>& of, const std::vector<CMatrix>& onto) {
  if (of.empty()) return 0.0;
  const CMatrix a = vectorize(of);
  const CMatrix q = onto.empty() ? CMatrix(a.rows(), 0)
                                 : orthonormal_columns(vectorize(onto), kRankCutoff);
  if (q.rows() != a.rows() && q.cols() > 0) throw DimensionMismatch("span_residual: shapes differ");
  double worst = 0.0;
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    const CVector v = a.col(k);
    const double nv = v.norm();
    if (nv == 0.0) continue;
    const CVector r = q.cols() > 0 ? CVector(v - q * (q.adjoint() * v)) : v;
    worst = std::max(worst, r.norm() / nv);
  }
  return worst;
}

CommutantBasis reduced_commutant(const CommutantBasis& basis, const CMatrix& p, double tol) {
  const Eigen::Index d = basis.rep.dim();
  if (p.rows() != d || p.cols() != d) throw DimensionMismatch("reduced_commutant: p has wrong shape");
  const double scale = tol * std::max(1.0, p.norm());
  if ((p * p - p).norm() > scale || (p - p.adjoint()).norm() > scale)
    throw NotInvariant("reduced_commutant: p is not an orthogonal projection");
  for (const auto& m : basis.rep.matrices())
    if ((m * p - p * m).norm() > scale)
      throw NotInvariant("reduced_commutant: p does not commute with the representation");
  const CMatrix range = orthonormal_range<double>(p);
  if (range.cols() == 0) throw InvalidParameter("reduced_commutant: p is zero");

  std::vector<CMatrix> compressed;
  compressed.reserve(basis.elements.size());
  for (const auto& t : basis.elements) compressed.push_back(range.adjoint() * t * range);
  return {restrict_rep(basis.rep, range, tol), basis.embedding * range,
          orthonormalize_operators(compressed)};
}

CheckRecord is_tracial_pair(const CommutantBasis& basis, const TraceFunctional& trace,
                            const CVector& eta, const CVector& psi, double tol) {
  if (eta.size() != basis.rep.dim() || psi.size() != basis.rep.dim())
    throw DimensionMismatch("is_tracial_pair: vectors not in the representation space");
  double worst = 0.0;
  for (const auto& t : basis.elements)
    worst = std::max(worst, std::abs(inner<double>(t * eta, psi) - trace(t)));
  return make_check("tracial_pair", worst, tol);
}

CheckRecord generalized_biorthogonality(const Rep& rep, const std::vector<CMatrix>& generators,
                                        const CVector& eta0, const CVector& psi0,
                                        const CVector& eta, const CVector& psi, double tol) {
  if (const auto ref = is_admissible_pair(rep, eta0, psi0, tol); !ref.pass)
    throw ReferencePairNotAdmissible("reference pair residual " + std::to_string(ref.residual));
  double worst = 0.0;
  for (const auto& t : generators)
    worst = std::max(worst, std::abs(inner<double>(t * eta, psi) - inner<double>(t * eta0, psi0)));
  return make_check("generalized_biorthogonality", worst, tol);
}

}  // namespace frametrace
