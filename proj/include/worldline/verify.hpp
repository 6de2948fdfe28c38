#pragma once

// Aggregate verification of one world-line: every closed form is checked
// against the frame oracle or against its defining property.

#include <string>
#include <vector>

#include <json.hpp>

#include "worldline/curvature.hpp"

namespace worldline {

enum class Fault {
  None,
  FlipFactorSign,  // negates the constant c of every integrating factor
};

struct VerifyOptions {
  double periods = 2.0;
  int samples_per_period = 256;
  double rtol = 1e-10;
  Fault fault = Fault::None;
};

struct ResidualEntry {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string schema;
  PhaseParams e;
  std::string kind;
  std::vector<ResidualEntry> entries;
  bool all_pass() const;
  const ResidualEntry* find(const std::string& name) const;
};

VerificationReport run_verification(const PhaseParams& e, const VerifyOptions& opt = {});

nlohmann::json to_json(const VerificationReport& r);
/// Throws Error(MalformedInput) on a schema mismatch.
VerificationReport report_from_json(const nlohmann::json& j);

}  // namespace worldline
