#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stq/grid.hpp"
#include "stq_verify/report.hpp"

namespace stq::verify {

enum class Suite { ccr, fock, coherent, quadrature, stq, bch, functional, all };

const char* to_string(Suite s);
std::optional<Suite> parse_suite(const std::string& name);

struct SuiteConfig {
  Suite suite = Suite::all;
  std::size_t modes = 2;
  int cutoff = 16;
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
  double epsilon = 0.1;
  double tol_scale = 1.0;
  unsigned workers = 1;
  std::string grid_path;  // empty: unit-weight grid with `modes` modes
  bool reproducible = false;

  /// Loaded grid, or the unit grid. Valid after validate().
  GridRef grid;
};

/// Checks the invariants and loads the grid. Throws DomainError.
void validate(SuiteConfig& cfg);

/// Runs every check registered for the suite (all suites for Suite::all),
/// in registry order. Checks that throw are recorded as failed.
VerificationReport run_suite(const SuiteConfig& cfg);

struct RegisteredCheck {
  std::string key;
  Suite suite;
  std::function<std::vector<CheckResult>(const SuiteConfig&)> run;
};

/// The full registry, ordered by suite and then key.
const std::vector<RegisteredCheck>& registry();

/// Convergence trace rows for plotting: sector-resolution deviation against
/// sample count at the configured seed.
struct TraceRow {
  std::string series;
  std::size_t samples = 0;
  double deviation = 0.0;
  double std_error = 0.0;
};

std::vector<TraceRow> functional_trace(const SuiteConfig& cfg);
std::string trace_csv(const std::vector<TraceRow>& rows);

}  // namespace stq::verify
