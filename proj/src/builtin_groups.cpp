#include <charconv>

#include "frametrace/group.hpp"

namespace frametrace {

namespace {

using Table = FiniteGroup::Table;

Table cyclic_table(int n) {
  Table t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

// r^k s^f at index k + n f; s r s = r^-1.
Table dihedral_table(int n) {
  const int order = 2 * n;
  Table t(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int k = a % n, f = a / n, l = b % n, g = b / n;
      const int rot = f == 0 ? (k + l) % n : ((k - l) % n + n) % n;
      t[a][b] = rot + n * ((f + g) % 2);
    }
  return t;
}

// (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y') at index (x n + y) n + z.
Table heisenberg_table(int n) {
  const int order = n * n * n;
  Table t(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int x = a / (n * n), y = (a / n) % n, z = a % n;
      const int x2 = b / (n * n), y2 = (b / n) % n, z2 = b % n;
      const int X = (x + x2) % n, Y = (y + y2) % n, Z = (z + z2 + x * y2) % n;
      t[a][b] = (X * n + Y) * n + Z;
    }
  return t;
}

Table product_table(const Table& a, const Table& b) {
  const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  const int order = na * nb;
  Table t(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  for (int p = 0; p < order; ++p)
    for (int q = 0; q < order; ++q)
      t[p][q] = a[p / nb][q / nb] * nb + b[p % nb][q % nb];
  return t;
}

int parse_param(std::string_view spec, std::string_view digits) {
  int n = 0;
  const auto* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, n);
  if (ec != std::errc() || ptr != end || digits.empty())
    throw UnknownGroupSpec("bad parameter in group spec '" + std::string(spec) + "'");
  if (n < 1) throw UnknownGroupSpec("group parameter must be >= 1 in '" + std::string(spec) + "'");
  return n;
}

Table factor_table(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw UnknownGroupSpec("group spec '" + std::string(spec) + "' lacks ':<n>'");
  const auto family = spec.substr(0, colon);
  const int n = parse_param(spec, spec.substr(colon + 1));
  // Guard before building O(order^2) tables.
  auto check_order = [&](long long order) {
    if (order > static_cast<long long>(kMaxGroupOrder))
      throw NotAGroup("order " + std::to_string(order) + " of '" + std::string(spec) +
                      "' exceeds the supported maximum " + std::to_string(kMaxGroupOrder));
  };
  if (family == "cyclic") {
    check_order(n);
    return cyclic_table(n);
  }
  if (family == "dihedral") {
    check_order(2LL * n);
    return dihedral_table(n);
  }
  if (family == "heisenberg") {
    check_order(1LL * n * n * n);
    return heisenberg_table(n);
  }
  throw UnknownGroupSpec("unknown group family '" + std::string(family) + "'");
}

}  // namespace

std::vector<std::string> split_product_spec(std::string_view spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = spec.find('x', start);
    parts.emplace_back(spec.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

GroupPtr builtin_group(std::string_view spec) {
  const auto parts = split_product_spec(spec);
  Table table = factor_table(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    Table next = factor_table(parts[i]);
    if (table.size() * next.size() > kMaxGroupOrder)
      throw NotAGroup("product order exceeds the supported maximum");
    table = product_table(table, next);
  }
  return group_from_cayley(std::move(table), std::string(spec));
}

}  // namespace frametrace
