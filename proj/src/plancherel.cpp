#include "frametrace/plancherel.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "frametrace/commutant.hpp"

namespace frametrace {

namespace {

using MatrixList = std::vector<CMatrix>;

struct RawIrrep {
  std::string label;
  MatrixList matrices;  // one per element of the factor group
};

Complex root_of_unity(long long k, long long n) {
  const long long r = ((k % n) + n) % n;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

CMatrix scalar(Complex z) {
  CMatrix m(1, 1);
  m(0, 0) = z;
  return m;
}

std::vector<RawIrrep> cyclic_irreps(int n) {
  std::vector<RawIrrep> out;
  for (int j = 0; j < n; ++j) {
    RawIrrep r{"chi_" + std::to_string(j), {}};
    for (int k = 0; k < n; ++k) r.matrices.push_back(scalar(root_of_unity(1LL * j * k, n)));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RawIrrep> dihedral_irreps(int n) {
  // Element r^k s^f sits at index k + n f.
  auto build = [n](const CMatrix& r, const CMatrix& s) {
    MatrixList mats;
    const Eigen::Index d = r.rows();
    for (int f = 0; f < 2; ++f) {
      CMatrix power = CMatrix::Identity(d, d);
      for (int k = 0; k < n; ++k) {
        mats.push_back(f == 0 ? power : CMatrix(power * s));
        power = power * r;
      }
    }
    return mats;
  };
  std::vector<RawIrrep> out;
  out.push_back({"trivial", build(scalar(1.0), scalar(1.0))});
  out.push_back({"sign", build(scalar(1.0), scalar(-1.0))});
  if (n % 2 == 0) {
    out.push_back({"alt_r", build(scalar(-1.0), scalar(1.0))});
    out.push_back({"alt_rs", build(scalar(-1.0), scalar(-1.0))});
  }
  CMatrix s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  for (int h = 1; 2 * h < n; ++h) {
    CMatrix r = CMatrix::Zero(2, 2);
    r(0, 0) = root_of_unity(h, n);
    r(1, 1) = root_of_unity(-h, n);
    out.push_back({"rho_" + std::to_string(h), build(r, s)});
  }
  return out;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::vector<RawIrrep> heisenberg_irreps(int p) {
  const int order = p * p * p;
  auto coords = [p](int idx) {
    return std::array<int, 3>{idx / (p * p), (idx / p) % p, idx % p};
  };
  std::vector<RawIrrep> out;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      RawIrrep r{"chi_" + std::to_string(a) + "_" + std::to_string(b), {}};
      for (int idx = 0; idx < order; ++idx) {
        const auto [x, y, z] = coords(idx);
        r.matrices.push_back(scalar(root_of_unity(1LL * a * x + 1LL * b * y, p)));
      }
      out.push_back(std::move(r));
    }
  // pi_c(x,y,z) = zeta^{cz} B^y A^x with (A f)(j) = f(j+1), B = diag(zeta^{cj}),
  // so that A B = zeta^c B A matches the law z'' = z + z' + x y'.
  for (int c = 1; c < p; ++c) {
    CMatrix shift = CMatrix::Zero(p, p);
    CMatrix phase = CMatrix::Zero(p, p);
    for (int j = 0; j < p; ++j) {
      shift(j, (j + 1) % p) = 1.0;
      phase(j, j) = root_of_unity(1LL * c * j, p);
    }
    RawIrrep r{"schrodinger_" + std::to_string(c), {}};
    for (int idx = 0; idx < order; ++idx) {
      const auto [x, y, z] = coords(idx);
      CMatrix m = CMatrix::Identity(p, p);
      for (int i = 0; i < y; ++i) m = m * phase;
      for (int i = 0; i < x; ++i) m = m * shift;
      r.matrices.push_back(root_of_unity(1LL * c * z, p) * m);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RawIrrep> factor_irreps(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UnsupportedGroup("no builtin irreps for '" + spec + "'");
  const std::string family = spec.substr(0, colon);
  int n = 0;
  const std::string digits = spec.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || n < 1)
    throw UnsupportedGroup("no builtin irreps for '" + spec + "'");
  if (family == "cyclic") return cyclic_irreps(n);
  if (family == "dihedral") return dihedral_irreps(n);
  if (family == "heisenberg") {
    if (!is_prime(n)) throw UnsupportedGroup("heisenberg irreps are built in for prime n only");
    return heisenberg_irreps(n);
  }
  throw UnsupportedGroup("no builtin irreps for family '" + family + "'");
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Element (g1, g2) of the product sits at index i1 |G2| + i2.
std::vector<RawIrrep> product_irreps(const std::vector<RawIrrep>& a, const std::vector<RawIrrep>& b) {
  std::vector<RawIrrep> out;
  for (const auto& ra : a)
    for (const auto& rb : b) {
      RawIrrep r{ra.label + "|" + rb.label, {}};
      for (const auto& ma : ra.matrices)
        for (const auto& mb : rb.matrices) r.matrices.push_back(kron(ma, mb));
      out.push_back(std::move(r));
    }
  return out;
}

Complex character_inner(const Rep& a, const Rep& b) {
  Complex s = 0.0;
  const int n = static_cast<int>(a.group()->order());
  for (int x = 0; x < n; ++x) s += a(x).trace() * std::conj(b(x).trace());
  return s / static_cast<double>(n);
}

void require_table_group(const IrrepTable& table, const FiniteGroup& g, const char* who) {
  if (table.group().get() != &g &&
      (table.group()->label() != g.label() || table.group()->cayley() != g.cayley()))
    throw GroupMismatch(std::string(who) + ": irrep table belongs to a different group");
}

}  // namespace

Irrep make_irrep(GroupPtr group, std::string label, std::vector<CMatrix> matrices) {
  try {
    const Eigen::Index d = matrices.empty() ? 0 : matrices.front().rows();
    return {label, d, Rep::make(std::move(group), std::move(matrices))};
  } catch (const NotARepresentation& e) {
    throw IrrepError(IrrepFault::NotHomomorphism, std::move(label), e.what());
  }
}

IrrepTable IrrepTable::validate(GroupPtr group, std::vector<Irrep> irreps, double tol) {
  const auto order = group->order();
  for (const auto& ir : irreps) {
    if (ir.rep.group()->order() != order || ir.rep.dim() != ir.dim)
      throw IrrepError(IrrepFault::NotHomomorphism, ir.label, "inconsistent group or dimension");
    const double scale = tol * std::max(1.0, std::sqrt(static_cast<double>(ir.dim)));
    if (ir.rep.homomorphism_residual() > scale || ir.rep.unitarity_residual() > scale)
      throw IrrepError(IrrepFault::NotHomomorphism, ir.label, "not a unitary homomorphism");
  }
  for (const auto& ir : irreps) {
    const auto dim = commutant_basis(ir.rep).dimension();
    if (dim != 1)
      throw IrrepError(IrrepFault::NotIrreducible, ir.label,
                       "commutant dimension " + std::to_string(dim));
  }
  for (std::size_t i = 0; i < irreps.size(); ++i)
    for (std::size_t j = i + 1; j < irreps.size(); ++j) {
      // For irreducibles <chi_i, chi_j> is the dimension of the intertwiner space.
      const double intertwiners = std::abs(character_inner(irreps[i].rep, irreps[j].rep));
      if (intertwiners > 0.5)
        throw IrrepError(IrrepFault::NotInequivalent, irreps[j].label,
                         "equivalent to " + irreps[i].label);
    }
  std::size_t sum = 0;
  for (const auto& ir : irreps) sum += static_cast<std::size_t>(ir.dim * ir.dim);
  if (sum != order)
    throw IrrepError(IrrepFault::NotComplete, group->label(),
                     "sum of squared dimensions " + std::to_string(sum) + " != |G| = " +
                         std::to_string(order));
  return IrrepTable(std::move(group), std::move(irreps));
}

IrrepTable validate_irreps(GroupPtr group, std::vector<Irrep> irreps, double tol) {
  return IrrepTable::validate(std::move(group), std::move(irreps), tol);
}

IrrepTable builtin_irreps(const GroupPtr& group) {
  const auto parts = split_product_spec(group->label());
  auto raw = factor_irreps(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) raw = product_irreps(raw, factor_irreps(parts[i]));
  // Make sure the label really describes this table.
  if (builtin_group(group->label())->cayley() != group->cayley())
    throw UnsupportedGroup("group '" + group->label() + "' does not match its builtin spec");
  std::vector<Irrep> irreps;
  irreps.reserve(raw.size());
  for (auto& r : raw) irreps.push_back(make_irrep(group, std::move(r.label), std::move(r.matrices)));
  return IrrepTable::validate(group, std::move(irreps));
}

PlancherelCoefficients plancherel_transform(const IrrepTable& table, const GroupVector& f) {
  require_table_group(table, *f.group, "plancherel_transform");
  const int n = static_cast<int>(f.group->order());
  PlancherelCoefficients out{&table, {}};
  out.blocks.reserve(table.size());
  for (const auto& ir : table.irreps()) {
    CMatrix block = CMatrix::Zero(ir.dim, ir.dim);
    for (int x = 0; x < n; ++x)
      if (f.data(x) != Complex(0)) block += f.data(x) * ir.rep(x).adjoint();
    out.blocks.push_back(std::move(block));
  }
  return out;
}

GroupVector inverse_plancherel(const PlancherelCoefficients& coeffs) {
  const auto& table = *coeffs.table;
  if (coeffs.blocks.size() != table.size())
    throw DimensionMismatch("inverse_plancherel: one block per irrep expected");
  const int n = static_cast<int>(table.group()->order());
  CVector f = CVector::Zero(n);
  for (std::size_t s = 0; s < table.size(); ++s) {
    const auto& ir = table.irreps()[s];
    const auto& block = coeffs.blocks[s];
    if (block.rows() != ir.dim || block.cols() != ir.dim)
      throw DimensionMismatch("inverse_plancherel: block " + ir.label + " has wrong shape");
    const double w = table.weight(s);
    // trace(B s(x)) = sum_ij B_ij s(x)_ji
    for (int x = 0; x < n; ++x) f(x) += w * (block.transpose().array() * ir.rep(x).array()).sum();
  }
  return {table.group(), std::move(f)};
}

double parseval_residual(const IrrepTable& table, const GroupVector& f) {
  const auto coeffs = plancherel_transform(table, f);
  double sum = 0.0;
  for (std::size_t s = 0; s < table.size(); ++s)
    sum += table.weight(s) * coeffs.blocks[s].squaredNorm();
  return std::abs(sum - f.data.squaredNorm());
}

CheckRecord convolution_to_product_check(const IrrepTable& table, const GroupVector& f,
                                         const GroupVector& g, double tol) {
  const auto fg = plancherel_transform(table, convolve(f, g));
  const auto fh = plancherel_transform(table, f);
  const auto gh = plancherel_transform(table, g);
  double worst = 0.0;
  for (std::size_t s = 0; s < table.size(); ++s)
    worst = std::max(worst, (fg.blocks[s] - gh.blocks[s] * fh.blocks[s]).norm());
  return make_check("convolution_to_product", worst, tol);
}

std::vector<Eigen::Index> FiberProjectionField::ranks() const {
  std::vector<Eigen::Index> out;
  out.reserve(projections.size());
  for (const auto& p : projections) {
    Eigen::Index r = 0;
    if (p.size() > 0) {
      // Fibers are validated Hermitian; symmetrize so roundoff on tiny blocks is harmless.
      const auto e = eig_hermitian<double>(CMatrix((p + p.adjoint()) / 2.0));
      for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i)
        if (e.eigenvalues(i) > 0.5) ++r;
    }
    out.push_back(r);
  }
  return out;
}

FiberProjectionField fiber_projections(const IrrepTable& table, const InvariantProjection& p,
                                       double tol) {
  require_table_group(table, *p.group(), "fiber_projections");
  const GroupVector e{table.group(), p.matrix().col(table.group()->identity())};
  auto coeffs = plancherel_transform(table, e);
  for (std::size_t s = 0; s < table.size(); ++s) {
    const auto& b = coeffs.blocks[s];
    const double scale = tol * std::max(1.0, b.norm());
    if ((b * b - b).norm() > scale || (b - b.adjoint()).norm() > scale)
      throw NotInvariant("fiber_projections: fiber " + table.irreps()[s].label +
                         " is not an orthogonal projection");
  }
  const CMatrix rebuilt = convolution_operator(inverse_plancherel(coeffs), Side::Right);
  if ((rebuilt - p.matrix()).norm() > tol * std::max(1.0, p.matrix().norm()))
    throw NotInvariant("fiber_projections: p is not recovered from its fibers");
  return {&table, std::move(coeffs.blocks)};
}

InvariantProjection projection_from_fibers(const IrrepTable& table,
                                           const std::vector<CMatrix>& blocks, double tol) {
  const auto e = inverse_plancherel(PlancherelCoefficients{&table, blocks});
  return InvariantProjection::make(table.group(), convolution_operator(e, Side::Right), tol);
}

CMatrix fiber_coordinates(const PlancherelCoefficients& coeffs, const FiberProjectionField& field,
                          std::size_t s) {
  const CMatrix basis = orthonormal_range<double>(field.projections[s]);
  return coeffs.blocks[s].adjoint() * basis;
}

CheckRecord fiber_admissibility_check(const IrrepTable& table, const InvariantProjection& p,
                                      const CVector& eta, const CVector& psi, double tol) {
  const auto& P = p.matrix();
  if (eta.size() != P.rows() || psi.size() != P.rows())
    throw DimensionMismatch("fiber_admissibility_check: vectors must live on l2(G)");
  const double range_tol = tol * std::max(1.0, std::max(eta.norm(), psi.norm()));
  if ((P * eta - eta).norm() > range_tol || (P * psi - psi).norm() > range_tol)
    throw NotInRange("fiber_admissibility_check: vectors are not in range(p)");
  const auto field = fiber_projections(table, p, tol);
  const auto eh = plancherel_transform(table, GroupVector{table.group(), eta});
  const auto ph = plancherel_transform(table, GroupVector{table.group(), psi});
  double worst = 0.0;
  for (std::size_t s = 0; s < table.size(); ++s) {
    // F_s(psi)^* F_s(eta) = psi^(s) eta^(s)^*
    const CMatrix lhs = ph.blocks[s] * eh.blocks[s].adjoint();
    worst = std::max(worst, (lhs - field.projections[s]).norm());
  }
  return make_check("fiber_criterion", worst, tol);
}

double rank_measure(const FiberProjectionField& field) {
  const auto ranks = field.ranks();
  double sum = 0.0;
  for (std::size_t s = 0; s < ranks.size(); ++s)
    sum += field.table->weight(s) * static_cast<double>(ranks[s]);
  return sum;
}

}  // namespace frametrace
