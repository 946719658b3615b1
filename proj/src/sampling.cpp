#include "frametrace/sampling.hpp"

#include <cmath>

namespace frametrace {

CVector random_vector(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = {re, im};
  }
  return v;
}

CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = {re, im};
    }
  return m;
}

CMatrix random_isometry(Rng& rng, Eigen::Index n, Eigen::Index k) {
  if (k == 0) return CMatrix(n, 0);
  const CMatrix g = random_matrix(rng, n, k);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const Complex d = qr.matrixQR()(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

CMatrix random_unitary(Rng& rng, Eigen::Index n) { return random_isometry(rng, n, n); }

InvariantProjection random_isotypic_projection(const IrrepTable& table, Rng& rng) {
  std::vector<CMatrix> blocks;
  std::vector<Eigen::Index> ranks;
  bool any = false;
  for (const auto& ir : table.irreps()) {
    std::uniform_int_distribution<Eigen::Index> pick(0, ir.dim);
    const Eigen::Index m = pick(rng);
    ranks.push_back(m);
    any = any || m > 0;
  }
  if (!any) {
    std::uniform_int_distribution<std::size_t> pick(0, table.size() - 1);
    ranks[pick(rng)] = 1;
  }
  for (std::size_t s = 0; s < table.size(); ++s) {
    const CMatrix q = random_isometry(rng, table.irreps()[s].dim, ranks[s]);
    blocks.push_back(q * q.adjoint());
  }
  return projection_from_fibers(table, blocks);
}

InvariantProjection random_spectral_projection(const GroupPtr& group, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(group->order());
  const GroupVector h{group, random_vector(rng, n)};
  const CMatrix u = convolution_operator(h, Side::Right);
  const auto e = eig_hermitian<double>(u.adjoint() * u);
  const double hi = e.eigenvalues(n - 1);

  // Cluster numerically equal eigenvalues; exact multiplicities come from
  // the irreducible dimensions and sit far below this gap.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // [begin, end)
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i <= n; ++i)
    if (i == n || e.eigenvalues(i) - e.eigenvalues(i - 1) > 1e-7 * hi) {
      clusters.emplace_back(begin, i);
      begin = i;
    }

  std::bernoulli_distribution coin(0.5);
  std::vector<char> take(clusters.size());
  bool any = false;
  for (auto& t : take) any = (t = coin(rng)) || any;
  if (!any) take[std::uniform_int_distribution<std::size_t>(0, clusters.size() - 1)(rng)] = 1;

  CMatrix p = CMatrix::Zero(n, n);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (!take[c]) continue;
    const auto [b, end] = clusters[c];
    const CMatrix q = e.eigenvectors.middleCols(b, end - b);
    p += q * q.adjoint();
  }
  return InvariantProjection::make(group, std::move(p));
}

}  // namespace frametrace
