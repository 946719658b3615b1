#include "frametrace/group.hpp"

#include <cmath>

namespace frametrace {

namespace {

std::string cell(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Greedy generating set: add the first element outside the subgroup generated
// so far. At most log2|G| elements.
std::vector<int> generators(const FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  std::vector<char> in(static_cast<std::size_t>(n));
  std::vector<int> members{g.identity()}, gens;
  in[static_cast<std::size_t>(g.identity())] = 1;
  for (int x = 0; x < n; ++x) {
    if (in[static_cast<std::size_t>(x)]) continue;
    gens.push_back(x);
    // Close under right multiplication by the generators.
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int s : gens) {
        const int y = g.mul(members[i], s);
        if (!in[static_cast<std::size_t>(y)]) {
          in[static_cast<std::size_t>(y)] = 1;
          members.push_back(y);
        }
      }
  }
  return gens;
}

}  // namespace

FiniteGroup FiniteGroup::from_cayley(Table cayley, std::string label) {
  const std::size_t n = cayley.size();
  if (n == 0) throw NotAGroup("Latin square: empty table");
  if (n > kMaxGroupOrder)
    throw NotAGroup("order " + std::to_string(n) + " exceeds the supported maximum " +
                    std::to_string(kMaxGroupOrder));
  for (std::size_t i = 0; i < n; ++i) {
    if (cayley[i].size() != n)
      throw NotAGroup("Latin square: row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j)
      if (cayley[i][j] < 0 || static_cast<std::size_t>(cayley[i][j]) >= n)
        throw NotAGroup("Latin square: entry " + cell(i, j) + " out of range");
  }

  std::vector<char> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      auto& s = seen[static_cast<std::size_t>(cayley[i][j])];
      if (s) throw NotAGroup("Latin square: row " + std::to_string(i) + " repeats an element");
      s = 1;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto& s = seen[static_cast<std::size_t>(cayley[i][j])];
      if (s) throw NotAGroup("Latin square: column " + std::to_string(j) + " repeats an element");
      s = 1;
    }
  }

  int identity = -1;
  for (std::size_t e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      ok = cayley[e][x] == static_cast<int>(x) && cayley[x][e] == static_cast<int>(x);
    if (ok) identity = static_cast<int>(e);
  }
  if (identity < 0) throw NotAGroup("identity: no two-sided identity element");

  std::vector<int> inverses(n, -1);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y)
      if (cayley[x][y] == identity && cayley[y][x] == identity) {
        inverses[x] = static_cast<int>(y);
        break;
      }
    if (inverses[x] < 0) throw NotAGroup("inverses: element " + std::to_string(x) + " has none");
  }

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto xy = static_cast<std::size_t>(cayley[x][y]);
      for (std::size_t z = 0; z < n; ++z)
        if (cayley[xy][z] != cayley[x][static_cast<std::size_t>(cayley[y][z])])
          throw NotAGroup("associativity: fails at (" + std::to_string(x) + "," +
                          std::to_string(y) + "," + std::to_string(z) + ")");
    }

  return FiniteGroup(std::move(cayley), std::move(label), identity, std::move(inverses));
}

bool FiniteGroup::is_abelian() const {
  const std::size_t n = order();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (cayley_[x][y] != cayley_[y][x]) return false;
  return true;
}

GroupPtr group_from_cayley(FiniteGroup::Table table, std::string label) {
  return std::make_shared<const FiniteGroup>(
      FiniteGroup::from_cayley(std::move(table), std::move(label)));
}

GroupVector make_group_vector(GroupPtr g, CVector data) {
  if (!g) throw Error("make_group_vector: null group");
  if (static_cast<std::size_t>(data.size()) != g->order())
    throw DimensionMismatch("group vector length " + std::to_string(data.size()) +
                            " != group order " + std::to_string(g->order()));
  if (!all_finite(data)) throw NotFinite("group vector has non-finite entries");
  return {std::move(g), std::move(data)};
}

GroupVector delta(GroupPtr g, int x) {
  CVector d = CVector::Zero(static_cast<Eigen::Index>(g->order()));
  d(x) = 1.0;
  return {std::move(g), std::move(d)};
}

GroupVector zero_vector(GroupPtr g) {
  CVector d = CVector::Zero(static_cast<Eigen::Index>(g->order()));
  return {std::move(g), std::move(d)};
}

namespace {

void require_same_group(const GroupVector& f, const GroupVector& g, const char* who) {
  if (f.group != g.group && (f.group->label() != g.group->label() ||
                             f.group->cayley() != g.group->cayley()))
    throw GroupMismatch(std::string(who) + ": vectors live on different groups");
}

}  // namespace

Complex inner(const GroupVector& f, const GroupVector& g) {
  require_same_group(f, g, "inner");
  return inner<double>(f.data, g.data);
}

double norm(const GroupVector& f) { return f.data.norm(); }

GroupVector convolve(const GroupVector& f, const GroupVector& g) {
  require_same_group(f, g, "convolve");
  const auto& G = *f.group;
  const int n = static_cast<int>(G.order());
  CVector out = CVector::Zero(n);
  for (int y = 0; y < n; ++y) {
    if (f.data(y) == Complex(0)) continue;
    const int yinv = G.inverse(y);
    for (int x = 0; x < n; ++x) out(x) += f.data(y) * g.data(G.mul(yinv, x));
  }
  return {f.group, std::move(out)};
}

GroupVector involution(const GroupVector& f) {
  const auto& G = *f.group;
  const int n = static_cast<int>(G.order());
  CVector out(n);
  for (int x = 0; x < n; ++x) out(x) = std::conj(f.data(G.inverse(x)));
  return {f.group, std::move(out)};
}

Rep Rep::make(GroupPtr group, std::vector<CMatrix> matrices, double tol) {
  if (!group) throw NotARepresentation("null group");
  if (matrices.size() != group->order())
    throw NotARepresentation("expected " + std::to_string(group->order()) + " matrices, got " +
                             std::to_string(matrices.size()));
  const Eigen::Index d = matrices.front().rows();
  for (const auto& m : matrices) {
    if (m.rows() != d || m.cols() != d) throw NotARepresentation("matrices of inconsistent shape");
    if (!all_finite(m)) throw NotARepresentation("non-finite matrix entry");
  }
  Rep rep(std::move(group), std::move(matrices), d);
  const double scale = tol * std::max(1.0, std::sqrt(static_cast<double>(d)));
  const auto& G = *rep.group_;
  if ((rep(G.identity()) - CMatrix::Identity(d, d)).norm() > scale)
    throw NotARepresentation("pi(e) is not the identity");
  if (const double u = rep.unitarity_residual(); u > scale)
    throw NotARepresentation("not unitary, residual " + std::to_string(u));
  if (const double h = rep.homomorphism_residual(); h > scale)
    throw NotARepresentation("not a homomorphism, residual " + std::to_string(h));
  return rep;
}

double Rep::homomorphism_residual() const {
  const auto& G = *group_;
  const int n = static_cast<int>(G.order());
  double worst = 0.0;
  for (int s : generators(G))
    for (int y = 0; y < n; ++y)
      worst = std::max(worst, ((*this)(s) * (*this)(y) - (*this)(G.mul(s, y))).norm());
  return worst;
}

double Rep::unitarity_residual() const {
  double worst = 0.0;
  for (const auto& m : *matrices_)
    worst = std::max(worst, (m.adjoint() * m - CMatrix::Identity(dim_, dim_)).norm());
  return worst;
}

Rep left_regular_rep(GroupPtr g) {
  const int n = static_cast<int>(g->order());
  std::vector<CMatrix> mats;
  mats.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    CMatrix m = CMatrix::Zero(n, n);
    // (lambda(x) f)(y) = f(x^-1 y): column w is sent to row x w.
    for (int w = 0; w < n; ++w) m(g->mul(x, w), w) = 1.0;
    mats.push_back(std::move(m));
  }
  // Permutation matrices of a validated group table; nothing to check.
  return Rep(std::move(g), std::move(mats), n);
}

CMatrix convolution_operator(const GroupVector& f, Side side) {
  const auto& G = *f.group;
  const int n = static_cast<int>(G.order());
  CMatrix m(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (side == Side::Right)
        m(x, y) = f.data(G.mul(G.inverse(y), x));  // (g*f)(x) = sum_y g(y) f(y^-1 x)
      else
        m(x, y) = f.data(G.mul(x, G.inverse(y)));  // (f*g)(x) = sum_y f(x y^-1) g(y)
    }
  return m;
}

Rep restrict_rep(const Rep& rep, const CMatrix& basis, double tol) {
  if (basis.rows() != rep.dim())
    throw DimensionMismatch("restrict_rep: basis vectors have wrong length");
  const Eigen::Index k = basis.cols();
  if (k == 0) throw InvalidParameter("restrict_rep: empty basis");
  if (identity_residual<double>(basis.adjoint() * basis) > tol)
    throw InvalidParameter("restrict_rep: basis is not orthonormal");
  const CMatrix complement = CMatrix::Identity(rep.dim(), rep.dim()) - basis * basis.adjoint();
  const double scale = tol * std::sqrt(static_cast<double>(k));
  std::vector<CMatrix> mats;
  mats.reserve(rep.matrices().size());
  for (const auto& m : rep.matrices()) {
    const CMatrix image = m * basis;
    if ((complement * image).norm() > scale)
      throw NotInvariant("restrict_rep: span is not invariant under the representation");
    mats.push_back(basis.adjoint() * image);
  }
  return Rep::make(rep.group(), std::move(mats), tol);
}

}  // namespace frametrace
