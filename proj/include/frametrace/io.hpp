#pragma once

// JSON file formats. Complex numbers are always [re, im] pairs.
//
//   group    {"label": str, "order": n, "cayley": [[int]]}
//   vector   {"group": label, "data": [[re, im], ...]}
//   vectors  {"group": label, "vectors": [[[re, im], ...], ...]}
//   irreps   {"group": label, "irreps": [{"label": str, "dim": d,
//             "matrices": [[[re, im], ...], ...]}]}   one row-major d*d list per element
//   window   {"L": int, "a": int, "b": int, "window": [[re, im], ...]}
//
// Parse failures throw ParseError; semantic failures throw the owning
// module's error (NotAGroup, IrrepError, ...).

#include <string>
#include <vector>

#include <json.hpp>

#include "frametrace/gabor.hpp"
#include "frametrace/plancherel.hpp"

namespace frametrace::io {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

nlohmann::json parse_json(const std::string& text, const std::string& origin);

CVector complex_list(const nlohmann::json& j, const std::string& what);
nlohmann::json complex_list_json(const CVector& v);

GroupPtr group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const FiniteGroup& g);

struct LabeledVector {
  std::string group;
  CVector data;
};

LabeledVector vector_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const std::string& group, const CVector& v);

struct LabeledVectors {
  std::string group;
  std::vector<CVector> vectors;
};

LabeledVectors vectors_from_json(const nlohmann::json& j);

/// Parses and validates an irrep file against `group`.
IrrepTable irreps_from_json(const nlohmann::json& j, const GroupPtr& group);
nlohmann::json irreps_to_json(const IrrepTable& table);

struct WindowFile {
  GaborLattice lattice;
  CVector window;
};

WindowFile window_from_json(const nlohmann::json& j);
nlohmann::json window_to_json(const GaborLattice& lat, const CVector& window);

}  // namespace frametrace::io
