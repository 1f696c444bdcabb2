#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "stq/quadrature.hpp"
#include "stq_verify/suites.hpp"

namespace {

using namespace stq;
using namespace stq::verify;

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Output {
  std::string report_dir = ".";
  std::string output;  // exact path; overrides the timestamped name
  std::string format = "json";
  std::string trace;
};

void add_common(CLI::App* cmd, SuiteConfig& cfg, Output& out) {
  cmd->add_option("--modes", cfg.modes, "number of grid modes M (ignored with --grid)");
  cmd->add_option("--cutoff", cfg.cutoff, "total-occupation cutoff N_max");
  cmd->add_option("--samples", cfg.samples, "Monte-Carlo sample count");
  cmd->add_option("--seed", cfg.seed, "64-bit seed");
  cmd->add_option("--epsilon", cfg.epsilon, "regularization epsilon in (0, 1]");
  cmd->add_option("--tol-scale", cfg.tol_scale, "multiplier applied to every tolerance");
  cmd->add_option("--workers", cfg.workers, "worker threads");
  cmd->add_option("--grid", cfg.grid_path, "JSON grid configuration file");
  cmd->add_flag("--reproducible", cfg.reproducible, "record wall_time_s as 0 for byte-stable reports");
  cmd->add_option("--report", out.report_dir, "directory for the timestamped report file");
  cmd->add_option("--output", out.output, "exact report path (overwrites)");
  cmd->add_option("--format", out.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--trace", out.trace, "write a sample-count convergence CSV (functional suite)");
}

int run(SuiteConfig cfg, const Output& out) {
  try {
    validate(cfg);
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << '\n';
    return kExitConfig;
  }
  const ReportFormat format = out.format == "csv" ? ReportFormat::csv : ReportFormat::json;
  const VerificationReport report = run_suite(cfg);
  std::string path = out.output;
  if (path.empty()) {
    std::filesystem::create_directories(out.report_dir);
    path = fresh_report_path(out.report_dir, report.suite, format);
  }
  emit_report(report, format, path);

  if (!out.trace.empty() && (cfg.suite == Suite::functional || cfg.suite == Suite::all)) {
    std::ofstream f(out.trace);
    f << trace_csv(functional_trace(cfg));
    if (!f) throw std::runtime_error("cannot write " + out.trace);
  }

  std::size_t failed = 0;
  for (const auto& c : report.checks) {
    if (!c.passed) {
      ++failed;
      std::cout << "FAIL " << c.name << "  abs_err=" << c.abs_err << " tol=" << c.tol << '\n';
    }
  }
  std::cout << report.suite << ": " << report.checks.size() - failed << '/' << report.checks.size()
            << " passed, report " << path << '\n';
  return failed == 0 ? 0 : kExitFail;
}

int write_table(int max_order, double lo, double hi, int points, const std::string& path) {
  if (max_order < 0 || points < 2 || !(hi > lo)) {
    std::cerr << "verify: invalid table range\n";
    return kExitConfig;
  }
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) xs[i] = lo + (hi - lo) * i / (points - 1);
  const QuadCoeffTable theta = make_coeff_table(QuadKind::q, max_order, xs);
  const QuadCoeffTable phi = make_coeff_table(QuadKind::p, max_order, xs);
  std::ofstream file;
  if (!path.empty()) file.open(path);
  std::ostream& os = path.empty() ? std::cout : file;
  os << "n,x,theta,phi_re,phi_im\n" << std::setprecision(17);
  for (int n = 0; n <= max_order; ++n)
    for (std::size_t i = 0; i < xs.size(); ++i)
      os << n << ',' << xs[i] << ',' << theta.values[n][i].real() << ',' << phi.values[n][i].real() << ','
         << phi.values[n][i].imag() << '\n';
  if (!os) {
    std::cerr << "verify: cannot write table\n";
    return kExitFail;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of truncated multimode quadrature-state identities"};
  app.set_version_flag("--version", STQ_VERSION);
  app.require_subcommand(1);

  SuiteConfig cfg;
  Output out;
  std::vector<std::pair<CLI::App*, Suite>> suites;
  for (Suite s : {Suite::ccr, Suite::fock, Suite::coherent, Suite::quadrature, Suite::stq, Suite::bch,
                  Suite::functional, Suite::all}) {
    CLI::App* cmd = app.add_subcommand(to_string(s), std::string("run the ") + to_string(s) + " checks");
    add_common(cmd, cfg, out);
    suites.emplace_back(cmd, s);
  }

  int max_order = 12, points = 201;
  double lo = -5.0, hi = 5.0;
  std::string table_path;
  CLI::App* table = app.add_subcommand("table", "write quadrature coefficient functions as CSV");
  table->add_option("--max-order", max_order, "highest order n");
  table->add_option("--lo", lo, "first abscissa");
  table->add_option("--hi", hi, "last abscissa");
  table->add_option("--points", points, "number of abscissae");
  table->add_option("--output", table_path, "CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (table->parsed()) return write_table(max_order, lo, hi, points, table_path);
    for (auto [cmd, s] : suites)
      if (cmd->parsed()) {
        cfg.suite = s;
        return run(cfg, out);
      }
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitConfig;
}
