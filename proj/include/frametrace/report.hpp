#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace frametrace {

/// One verification outcome. Checks report residuals; `pass` is decided by
/// the caller's tolerance, never implied by the residual alone.
struct CheckRecord {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;  // optional, e.g. the name of a raised error
};

/// pass = residual <= tol.
CheckRecord make_check(std::string name, double residual, double tol, std::string detail = {});

struct InputDigest {
  std::string name;
  std::string sha256;
};

/// Aggregated result of one CLI run. Field order in the emitted JSON is fixed.
struct RunReport {
  std::string command;
  std::vector<InputDigest> inputs;
  std::vector<CheckRecord> checks;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();

  void add(CheckRecord c) { checks.push_back(std::move(c)); }
  bool pass() const;
};

std::string sha256_hex(std::string_view bytes);

nlohmann::ordered_json to_json(const CheckRecord& c);
nlohmann::ordered_json to_json(const RunReport& r);

/// Canonical serialization: 2-space indent, trailing newline.
std::string serialize(const RunReport& r);

/// Writes serialize(r) to `path`; throws Error on I/O failure.
void report_write(const RunReport& r, const std::string& path);

}  // namespace frametrace
