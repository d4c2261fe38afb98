#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "kinval/quadrature.hpp"

namespace kinval {

struct CheckRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Relative error uses max(|rhs|, floor) as the denominator.
CheckRecord make_check(std::string name, double lhs, double rhs, double tolerance, double floor = 1e-6);

struct VerificationReport {
  std::string subcommand;
  std::uint64_t scene_hash = 0;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  nlohmann::json settings = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> perturbations;
  std::vector<std::string> flags;  // e.g. reflex-cornered inputs
  int joint_arc_sign = 0;
  int sigma_orientation = 0;
  double wall_time = 0.0;

  bool passed() const;
  void add(CheckRecord r) { checks.push_back(std::move(r)); }

  /// Deterministic body; wall time lives under its own top-level key.
  nlohmann::json body() const;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

nlohmann::json quadrature_json(const QuadratureOptions& opt);

/// Writes `path` (JSON) and the CSV summary next to it.
void write_report(const VerificationReport& r, const std::string& path);

}  // namespace kinval
