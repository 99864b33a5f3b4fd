#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gkdim/config.hpp"
#include "json.hpp"

namespace gkdim {

struct CheckRecord {
  std::string name;
  std::string status = "pass";  // pass, fail or error
  nlohmann::json measured = nlohmann::json::object();
  std::string witness;
  double seconds = 0;  // not part of the JSON report
};

struct CheckOptions {
  std::vector<TowerSpec> corpus;
  std::uint64_t seed = 20261018;
};

struct CheckDef {
  int id;
  std::string name;
  std::function<CheckRecord(const CheckOptions&)> run;
};

/// The numbered acceptance criteria in order.
const std::vector<CheckDef>& acceptance_checks();

/// Runs one check, turning exceptions into an error record and timing it.
CheckRecord run_check(const CheckDef& def, const CheckOptions& opt);

nlohmann::json record_json(const CheckRecord& r);

}  // namespace gkdim
