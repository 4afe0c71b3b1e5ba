#include "dds/report.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "dds/error.hpp"

namespace dds {

namespace {

using json = nlohmann::json;

json encode(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error{ErrorCode::parse_error, "report: expected a number, got " + v.dump()};
}

json encode(const std::vector<double>& v) {
  json out = json::array();
  for (double d : v) out.push_back(encode(d));
  return out;
}

std::vector<double> decode_vector(const json& v) {
  std::vector<double> out;
  for (const auto& e : v) out.push_back(decode(e));
  return out;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

RunReport make_run_report(const StatusReport& status, double epsilon, int exit_code) {
  RunReport r;
  r.status = std::string{to_string(status.status)};
  r.exit_code = exit_code;
  r.message = status.message;
  r.epsilon = epsilon;
  r.x = to_std(status.x);
  r.y_scaled = to_std(status.y_scaled);
  if (status.certificate) {
    const Certificate& c = *status.certificate;
    r.certificate = CertificateRecord{std::string{to_string(c.kind)}, c.strict, c.epsilon,
                                      to_std(c.primal), to_std(c.dual), to_std(c.shift)};
  }
  r.objective_estimate = status.objective_estimate;
  const Diagnostics& d = status.diagnostics;
  r.iterations = d.iterations;
  r.mu = d.mu;
  r.tau = d.tau;
  r.proximity = d.proximity;
  r.gap = d.stop.gap;
  r.p_feas = d.stop.p_feas;
  r.d_feas = d.stop.d_feas;
  r.log_mu_slope = d.log_mu_slope;
  r.invariant_violations = d.invariant_violations;
  r.verified = !status.verification.checks.empty() && status.verification.passed();
  for (const auto& c : status.verification.checks) {
    r.checks.push_back(CheckRecord{c.name, c.value, c.threshold, c.passed});
  }
  return r;
}

std::string serialize_report(const RunReport& r) {
  json j;
  j["status"] = r.status;
  j["exit_code"] = r.exit_code;
  j["message"] = r.message;
  j["epsilon"] = encode(r.epsilon);
  j["x"] = encode(r.x);
  j["y_scaled"] = encode(r.y_scaled);
  if (r.certificate) {
    const auto& c = *r.certificate;
    j["certificate"] = {{"kind", c.kind},          {"strict", c.strict},
                        {"epsilon", encode(c.epsilon)}, {"primal", encode(c.primal)},
                        {"dual", encode(c.dual)},   {"shift", encode(c.shift)}};
  } else {
    j["certificate"] = nullptr;
  }
  j["objective_estimate"] = r.objective_estimate ? encode(*r.objective_estimate) : json();
  j["diagnostics"] = {{"iterations", r.iterations},
                      {"mu", encode(r.mu)},
                      {"tau", encode(r.tau)},
                      {"proximity", encode(r.proximity)},
                      {"gap", encode(r.gap)},
                      {"p_feas", encode(r.p_feas)},
                      {"d_feas", encode(r.d_feas)},
                      {"log_mu_slope", encode(r.log_mu_slope)},
                      {"invariant_violations", r.invariant_violations}};
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"value", encode(c.value)},
                      {"threshold", encode(c.threshold)},
                      {"passed", c.passed}});
  }
  j["verification"] = {{"passed", r.verified}, {"checks", checks}};
  return j.dump(2);
}

RunReport parse_report(std::string_view text) {
  try {
    const json j = json::parse(text.begin(), text.end());
    RunReport r;
    r.status = j.at("status").get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
    r.message = j.at("message").get<std::string>();
    r.epsilon = decode(j.at("epsilon"));
    r.x = decode_vector(j.at("x"));
    r.y_scaled = decode_vector(j.at("y_scaled"));
    if (const auto& c = j.at("certificate"); !c.is_null()) {
      r.certificate = CertificateRecord{c.at("kind").get<std::string>(),
                                        c.at("strict").get<bool>(),
                                        decode(c.at("epsilon")),
                                        decode_vector(c.at("primal")),
                                        decode_vector(c.at("dual")),
                                        decode_vector(c.at("shift"))};
    }
    if (const auto& o = j.at("objective_estimate"); !o.is_null()) {
      r.objective_estimate = decode(o);
    }
    const json& d = j.at("diagnostics");
    r.iterations = d.at("iterations").get<int>();
    r.mu = decode(d.at("mu"));
    r.tau = decode(d.at("tau"));
    r.proximity = decode(d.at("proximity"));
    r.gap = decode(d.at("gap"));
    r.p_feas = decode(d.at("p_feas"));
    r.d_feas = decode(d.at("d_feas"));
    r.log_mu_slope = decode(d.at("log_mu_slope"));
    r.invariant_violations = d.at("invariant_violations").get<int>();
    const json& v = j.at("verification");
    r.verified = v.at("passed").get<bool>();
    for (const auto& c : v.at("checks")) {
      r.checks.push_back(CheckRecord{c.at("name").get<std::string>(), decode(c.at("value")),
                                     decode(c.at("threshold")), c.at("passed").get<bool>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw Error{ErrorCode::parse_error, std::string{"report: "} + e.what()};
  }
}

}  // namespace dds
