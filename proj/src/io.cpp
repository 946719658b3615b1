#include "frametrace/io.hpp"

#include <fstream>
#include <sstream>

namespace frametrace::io {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(what + ": missing field '" + key + "'");
  return *it;
}

int int_field(const json& j, const char* key, const std::string& what) {
  const auto& v = field(j, key, what);
  if (!v.is_number_integer()) throw ParseError(what + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

std::string string_field(const json& j, const char* key, const std::string& what) {
  const auto& v = field(j, key, what);
  if (!v.is_string()) throw ParseError(what + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

Complex complex_value(const json& p, const std::string& what) {
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
    throw ParseError(what + ": complex entries must be [re, im] pairs");
  return {p[0].get<double>(), p[1].get<double>()};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error("write to '" + path + "' failed");
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

CVector complex_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected a list of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_value(j[i], what);
  if (!all_finite(v)) throw NotFinite(what + ": non-finite value");
  return v;
}

json complex_list_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

GroupPtr group_from_json(const json& j) {
  const std::string what = "group file";
  const std::string label = string_field(j, "label", what);
  const int order = int_field(j, "order", what);
  const auto& rows = field(j, "cayley", what);
  if (!rows.is_array()) throw ParseError(what + ": 'cayley' must be a list of rows");
  FiniteGroup::Table table;
  table.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParseError(what + ": 'cayley' rows must be lists");
    std::vector<int> r;
    r.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ParseError(what + ": cayley entries must be integers");
      r.push_back(v.get<int>());
    }
    table.push_back(std::move(r));
  }
  if (order < 0 || static_cast<std::size_t>(order) != table.size())
    throw NotAGroup("Latin square: 'order' " + std::to_string(order) + " disagrees with table size " +
                    std::to_string(table.size()));
  return group_from_cayley(std::move(table), label);
}

json group_to_json(const FiniteGroup& g) {
  json j;
  j["label"] = g.label();
  j["order"] = g.order();
  j["cayley"] = g.cayley();
  return j;
}

LabeledVector vector_from_json(const json& j) {
  const std::string what = "vector file";
  return {string_field(j, "group", what), complex_list(field(j, "data", what), what)};
}

json vector_to_json(const std::string& group, const CVector& v) {
  json j;
  j["group"] = group;
  j["data"] = complex_list_json(v);
  return j;
}

LabeledVectors vectors_from_json(const json& j) {
  const std::string what = "vectors file";
  LabeledVectors out{string_field(j, "group", what), {}};
  const auto& list = field(j, "vectors", what);
  if (!list.is_array()) throw ParseError(what + ": 'vectors' must be a list");
  for (const auto& v : list) out.vectors.push_back(complex_list(v, what));
  return out;
}

IrrepTable irreps_from_json(const json& j, const GroupPtr& group) {
  const std::string what = "irrep file";
  const std::string label = string_field(j, "group", what);
  if (label != group->label())
    throw GroupMismatch(what + ": irreps are for '" + label + "', group is '" + group->label() + "'");
  const auto& list = field(j, "irreps", what);
  if (!list.is_array()) throw ParseError(what + ": 'irreps' must be a list");
  std::vector<Irrep> irreps;
  for (const auto& entry : list) {
    const std::string name = string_field(entry, "label", what);
    const int d = int_field(entry, "dim", what);
    if (d < 1) throw ParseError(what + ": irrep '" + name + "' has dim < 1");
    const auto& mats = field(entry, "matrices", what);
    if (!mats.is_array() || mats.size() != group->order())
      throw ParseError(what + ": irrep '" + name + "' needs one matrix per group element");
    std::vector<CMatrix> matrices;
    matrices.reserve(mats.size());
    for (const auto& m : mats) {
      const CVector flat = complex_list(m, what);
      if (flat.size() != static_cast<Eigen::Index>(d) * d)
        throw ParseError(what + ": irrep '" + name + "' matrix has wrong entry count");
      matrices.push_back(make_matrix<double>(d, d, std::span<const Complex>(flat.data(), flat.size())));
    }
    irreps.push_back(make_irrep(group, name, std::move(matrices)));
  }
  return validate_irreps(group, std::move(irreps));
}

json irreps_to_json(const IrrepTable& table) {
  json j;
  j["group"] = table.group()->label();
  json list = json::array();
  for (const auto& ir : table.irreps()) {
    json mats = json::array();
    for (const auto& m : ir.rep.matrices()) {
      json flat = json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back({m(r, c).real(), m(r, c).imag()});
      mats.push_back(std::move(flat));
    }
    list.push_back({{"label", ir.label}, {"dim", ir.dim}, {"matrices", std::move(mats)}});
  }
  j["irreps"] = std::move(list);
  return j;
}

WindowFile window_from_json(const json& j) {
  const std::string what = "window file";
  const auto lat = make_lattice(int_field(j, "L", what), int_field(j, "a", what),
                                int_field(j, "b", what));
  CVector w = complex_list(field(j, "window", what), what);
  if (w.size() != lat.L) throw ParseError(what + ": window length differs from L");
  return {lat, std::move(w)};
}

json window_to_json(const GaborLattice& lat, const CVector& window) {
  json j;
  j["L"] = lat.L;
  j["a"] = lat.a;
  j["b"] = lat.b;
  j["window"] = complex_list_json(window);
  return j;
}

}  // namespace frametrace::io
