#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stq/common.hpp"

namespace stq::verify {

/// Real or complex value as written to the report.
struct Value {
  Complex z{};
  bool complex = false;
  bool valid = true;  // false: the check threw before producing a value

  Value() = default;
  Value(double x) : z(x, 0.0) {}
  Value(Complex c) : z(c), complex(true) {}
  static Value none() {
    Value v;
    v.valid = false;
    return v;
  }
};

struct CheckResult {
  std::string name;
  std::string ref;  // what the check is about, in words
  Value computed;
  Value expected;
  double abs_err = 0.0;
  double tol = 0.0;
  std::optional<double> std_error;
  bool passed = false;
};

/// Deterministic check: passed iff abs_err ≤ tol.
CheckResult make_check(std::string name, std::string ref, Value computed, Value expected, double tol);
/// Same with an externally computed error (for maxima over families).
CheckResult make_error_check(std::string name, std::string ref, double abs_err, double tol);
/// Statistical check: passed iff abs_err ≤ k·std_error + extra.
CheckResult make_stat_check(std::string name, std::string ref, Value computed, Value expected, double abs_err,
                            double std_error, double k, double extra = 0.0);

struct VerificationReport {
  std::string suite;
  /// Ordered key → JSON-encoded value, so reports serialize identically.
  std::map<std::string, std::string> params;
  std::vector<CheckResult> checks;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::string version;

  bool passed() const;
};

enum class ReportFormat { json, csv };

std::string to_json(const VerificationReport& report);
std::string to_csv(const VerificationReport& report);

/// Writes the report. Throws std::runtime_error on I/O failure.
void emit_report(const VerificationReport& report, ReportFormat format, const std::string& path);

/// verify-<suite>-<UTC stamp>.<ext> in dir, with a numeric suffix added
/// until the name is unused.
std::string fresh_report_path(const std::string& dir, const std::string& suite, ReportFormat format);

}  // namespace stq::verify
