#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dds/status.hpp"

namespace dds {

struct CertificateRecord {
  std::string kind;
  bool strict = false;
  double epsilon = 0.0;
  std::vector<double> primal;
  std::vector<double> dual;
  std::vector<double> shift;

  bool operator==(const CertificateRecord&) const = default;
};

struct CheckRecord {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;

  bool operator==(const CheckRecord&) const = default;
};

/// Machine-readable outcome of one solve, as printed by the CLI.
struct RunReport {
  std::string status;
  int exit_code = 5;
  std::string message;
  double epsilon = 0.0;
  std::vector<double> x;
  std::vector<double> y_scaled;
  std::optional<CertificateRecord> certificate;
  std::optional<double> objective_estimate;

  int iterations = 0;
  double mu = 0.0;
  double tau = 0.0;
  double proximity = 0.0;
  double gap = 0.0;
  double p_feas = 0.0;
  double d_feas = 0.0;
  double log_mu_slope = 0.0;
  int invariant_violations = 0;

  bool verified = false;
  std::vector<CheckRecord> checks;

  bool operator==(const RunReport&) const = default;
};

RunReport make_run_report(const StatusReport& status, double epsilon, int exit_code);

/// JSON text; non-finite numbers are written as the strings "inf", "-inf", "nan".
std::string serialize_report(const RunReport& report);

/// Inverse of serialize_report. Throws Error{parse_error}.
RunReport parse_report(std::string_view text);

}  // namespace dds
