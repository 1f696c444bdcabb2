#include "stq_verify/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace stq::verify {

namespace {

using nlohmann::ordered_json;

ordered_json value_json(const Value& v) {
  if (!v.valid) return nullptr;
  if (v.complex) return ordered_json::array({v.z.real(), v.z.imag()});
  return v.z.real();
}

ordered_json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

std::string csv_value(const Value& v) {
  if (!v.valid) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v.z.real();
  if (v.complex) os << (v.z.imag() < 0 ? "" : "+") << v.z.imag() << "i";
  return os.str();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

CheckResult make_check(std::string name, std::string ref, Value computed, Value expected, double tol) {
  CheckResult c;
  c.name = std::move(name);
  c.ref = std::move(ref);
  c.computed = computed;
  c.expected = expected;
  c.abs_err = std::abs(computed.z - expected.z);
  c.tol = tol;
  c.passed = c.abs_err <= tol;
  return c;
}

CheckResult make_error_check(std::string name, std::string ref, double abs_err, double tol) {
  CheckResult c = make_check(std::move(name), std::move(ref), abs_err, 0.0, tol);
  return c;
}

CheckResult make_stat_check(std::string name, std::string ref, Value computed, Value expected, double abs_err,
                            double std_error, double k, double extra) {
  CheckResult c;
  c.name = std::move(name);
  c.ref = std::move(ref);
  c.computed = computed;
  c.expected = expected;
  c.abs_err = abs_err;
  c.std_error = std_error;
  c.tol = k * std_error + extra;
  c.passed = abs_err <= c.tol;
  return c;
}

bool VerificationReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string to_json(const VerificationReport& r) {
  ordered_json j;
  j["suite"] = r.suite;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = ordered_json::parse(v);
  j["params"] = params;
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json o;
    o["name"] = c.name;
    o["paper_ref"] = c.ref;
    o["computed"] = value_json(c.computed);
    o["expected"] = value_json(c.expected);
    o["abs_err"] = number_or_null(c.abs_err);
    o["tol"] = c.tol;
    o["stderr"] = c.std_error ? number_or_null(*c.std_error) : ordered_json(nullptr);
    o["passed"] = c.passed;
    checks.push_back(std::move(o));
  }
  j["checks"] = checks;
  j["wall_time_s"] = r.wall_time_s;
  j["seed"] = r.seed;
  j["version"] = r.version;
  return j.dump(2) + "\n";
}

std::string to_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << "suite,name,paper_ref,computed,expected,abs_err,tol,stderr,passed\n";
  os << std::setprecision(17);
  for (const auto& c : r.checks) {
    os << r.suite << ',' << csv_quote(c.name) << ',' << csv_quote(c.ref) << ',' << csv_value(c.computed) << ','
       << csv_value(c.expected) << ',' << c.abs_err << ',' << c.tol << ',';
    if (c.std_error) os << *c.std_error;
    os << ',' << (c.passed ? "true" : "false") << '\n';
  }
  return os.str();
}

void emit_report(const VerificationReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open report file " + path);
  out << (format == ReportFormat::json ? to_json(report) : to_csv(report));
  if (!out) throw std::runtime_error("failed writing report file " + path);
}

std::string fresh_report_path(const std::string& dir, const std::string& suite, ReportFormat format) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream stem;
  stem << "verify-" << suite << '-' << std::put_time(&tm, "%Y%m%dT%H%M%SZ");
  const std::string ext = format == ReportFormat::json ? ".json" : ".csv";
  namespace fs = std::filesystem;
  fs::path p = fs::path(dir) / (stem.str() + ext);
  for (int i = 1; fs::exists(p); ++i) p = fs::path(dir) / (stem.str() + "-" + std::to_string(i) + ext);
  return p.string();
}

}  // namespace stq::verify
