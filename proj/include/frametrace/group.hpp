#pragma once

// Finite groups, l2(G) with counting measure, convolution, the involution
// f*(x) = conj(f(x^-1)), and unitary representations.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "frametrace/numerics.hpp"

namespace frametrace {

/// Groups above this order are refused (associativity is checked exhaustively).
inline constexpr std::size_t kMaxGroupOrder = 512;

/// A validated finite group given by its Cayley table over element indices 0..n-1.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<int>>;

  /// Validates Latin square, identity, inverses and associativity (in that
  /// order) and throws NotAGroup naming the first violated axiom.
  static FiniteGroup from_cayley(Table cayley, std::string label);

  std::size_t order() const noexcept { return cayley_.size(); }
  int identity() const noexcept { return identity_; }
  int inverse(int x) const { return inverses_[static_cast<std::size_t>(x)]; }
  int mul(int x, int y) const {
    return cayley_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  }
  const Table& cayley() const noexcept { return cayley_; }
  const std::vector<int>& inverses() const noexcept { return inverses_; }
  const std::string& label() const noexcept { return label_; }

  bool is_abelian() const;

 private:
  FiniteGroup(Table cayley, std::string label, int identity, std::vector<int> inverses)
      : cayley_(std::move(cayley)),
        label_(std::move(label)),
        identity_(identity),
        inverses_(std::move(inverses)) {}

  Table cayley_;
  std::string label_;
  int identity_;
  std::vector<int> inverses_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr group_from_cayley(FiniteGroup::Table table, std::string label);

/// Builtin families: "cyclic:n", "dihedral:n" (order 2n), "heisenberg:n"
/// (unitriangular 3x3 over Z_n, order n^3) and direct products joined by
/// 'x', e.g. "cyclic:2xdihedral:3". The returned label is the spec string.
///
/// Element enumeration:
///   cyclic     k                          index k
///   dihedral   r^k s^f                    index k + n f
///   heisenberg [[1,x,z],[0,1,y],[0,0,1]]  index (x n + y) n + z
///   product    (g1, g2)                   index i1 |G2| + i2
GroupPtr builtin_group(std::string_view spec);

/// Splits a product spec into its factors ("cyclic:2xcyclic:3" -> two parts).
std::vector<std::string> split_product_spec(std::string_view spec);

/// A complex function on a finite group: an element of l2(G).
struct GroupVector {
  GroupPtr group;
  CVector data;

  std::size_t size() const { return static_cast<std::size_t>(data.size()); }
};

GroupVector make_group_vector(GroupPtr g, CVector data);
GroupVector delta(GroupPtr g, int x);
GroupVector zero_vector(GroupPtr g);

Complex inner(const GroupVector& f, const GroupVector& g);
double norm(const GroupVector& f);

/// (f*g)(x) = sum_y f(y) g(y^-1 x).
GroupVector convolve(const GroupVector& f, const GroupVector& g);

/// f*(x) = conj(f(x^-1)).
GroupVector involution(const GroupVector& f);

/// A unitary representation: one d x d matrix per group element. Copies share storage.
class Rep {
 public:
  /// Validates pi(e) = Id, pi(xy) = pi(x)pi(y) and unitarity within `tol`
  /// (relative to the dimension); throws NotARepresentation otherwise.
  static Rep make(GroupPtr group, std::vector<CMatrix> matrices, double tol = kDefaultTol);

  const GroupPtr& group() const noexcept { return group_; }
  Eigen::Index dim() const noexcept { return dim_; }
  const CMatrix& operator()(int x) const { return (*matrices_)[static_cast<std::size_t>(x)]; }
  const std::vector<CMatrix>& matrices() const noexcept { return *matrices_; }

  /// max of ||pi(s)pi(y) - pi(sy)||_F over s in a generating set and all y.
  /// Zero exactly when pi is a homomorphism.
  double homomorphism_residual() const;
  /// max over x of ||pi(x)* pi(x) - Id||_F.
  double unitarity_residual() const;

 private:
  friend Rep left_regular_rep(GroupPtr g);

  Rep(GroupPtr group, std::vector<CMatrix> matrices, Eigen::Index dim)
      : group_(std::move(group)),
        matrices_(std::make_shared<const std::vector<CMatrix>>(std::move(matrices))),
        dim_(dim) {}

  GroupPtr group_;
  // Immutable and shared, so copies of a Rep are cheap.
  std::shared_ptr<const std::vector<CMatrix>> matrices_;
  Eigen::Index dim_;
};

/// (lambda(x) f)(y) = f(x^-1 y), realized as permutation matrices.
Rep left_regular_rep(GroupPtr g);

enum class Side {
  Right,  // g -> g * f  (the operator U_f, an element of VN_r(G))
  Left,   // g -> f * g
};

CMatrix convolution_operator(const GroupVector& f, Side side);

/// Compresses `rep` to the span of the orthonormal columns of `basis`.
/// Throws NotInvariant if the span is not invariant within `tol`.
Rep restrict_rep(const Rep& rep, const CMatrix& basis, double tol = kDefaultTol);

}  // namespace frametrace
