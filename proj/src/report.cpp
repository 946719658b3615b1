#include "frametrace/report.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "frametrace/errors.hpp"

namespace frametrace {

CheckRecord make_check(std::string name, double residual, double tol, std::string detail) {
  const bool pass = std::isfinite(residual) && residual <= tol;
  return {std::move(name), residual, tol, pass, std::move(detail)};
}

bool RunReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

nlohmann::ordered_json to_json(const CheckRecord& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  // JSON has no infinity; an unbounded residual is emitted as null.
  if (std::isfinite(c.residual))
    j["residual"] = c.residual;
  else
    j["residual"] = nullptr;
  j["tol"] = c.tol;
  j["pass"] = c.pass;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

nlohmann::ordered_json to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["tool"] = "frametrace";
  j["version"] = FRAMETRACE_VERSION;
  j["command"] = r.command;
  auto inputs = nlohmann::ordered_json::array();
  for (const auto& in : r.inputs) inputs.push_back({{"name", in.name}, {"sha256", in.sha256}});
  j["inputs"] = std::move(inputs);
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  j["results"] = r.results;
  j["pass"] = r.pass();
  return j;
}

std::string serialize(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

void report_write(const RunReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << serialize(r);
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace frametrace
