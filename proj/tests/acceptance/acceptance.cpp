// Acceptance criteria. Each criterion prints one PASS/FAIL line; the process
// exit code is 0 only if every selected criterion passed. Usage:
//   stq_acceptance [criterion...]   (no arguments: all of them)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stq/bch.hpp"
#include "stq/coherent.hpp"
#include "stq/fock.hpp"
#include "stq/functional.hpp"
#include "stq/quadrature.hpp"
#include "stq/spatiotemporal.hpp"
#include "stq_verify/suites.hpp"

using namespace stq;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what, double value, double bound) {
    if (!ok) passed = false;
    detail << (ok ? "" : "[x] ") << what << '=' << value << " (bound " << bound << "); ";
  }
  void at_most(const std::string& what, double value, double bound) { require(value <= bound, what, value, bound); }
};

SpectralVector random_spectrum(std::mt19937_64& rng, const GridRef& g) {
  std::normal_distribution<double> nd;
  CVector v(static_cast<Eigen::Index>(g->size()));
  for (auto& x : v) x = Complex(nd(rng), nd(rng));
  return SpectralVector{g, v / v.norm()};
}

RVector random_real(std::mt19937_64& rng, std::size_t m, double norm) {
  std::normal_distribution<double> nd;
  RVector v(static_cast<Eigen::Index>(m));
  for (auto& x : v) x = nd(rng);
  return v * (norm / v.norm());
}

// --- tolerances, pinned -------------------------------------------------------

constexpr double kCcrTol = 1e-14;
constexpr double kFockOverlapTol = 1e-10;
constexpr double kCoherentTol = 1e-7;
constexpr double kMehlerTol = 1e-6;
constexpr double kOrthoTol = 1e-8;
constexpr double kStqResidualTol = 1e-10;
constexpr double kOracleTol = 1e-10;
constexpr double kOdeTol = 1e-7;
constexpr double kWordTol = 1e-6;
constexpr double kQpTol = 1e-3;
constexpr double kRegularizedTol = 1e-8;
constexpr double kCoherentQTol = 1e-7;
constexpr double kWickK = 5.0;
constexpr double kResolutionK = 3.0;
constexpr double kIncompleteTol = 1e-12;
constexpr double kDivergenceRelTol = 1e-14;

// --- criteria -------------------------------------------------------------------

void ccr(Outcome& o) {
  for (std::size_t m : {1u, 2u, 3u}) {
    const FockSpace s = FockSpace::create(make_unit_grid(m), 6);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) worst = std::max(worst, ccr_block_error(s, i, j));
    o.at_most("M" + std::to_string(m) + ".err", worst, kCcrTol);
  }
}

void fock_overlap(Outcome& o) {
  std::mt19937_64 rng(2);
  for (std::size_t m : {1u, 2u, 3u}) {
    const FockSpace s = FockSpace::create(make_unit_grid(m), 4);
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
      const SpectralVector f = random_spectrum(rng, s.grid());
      const SpectralVector g = random_spectrum(rng, s.grid());
      for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
          worst = std::max(worst, std::abs(inner(fock_state(s, a, f), fock_state(s, b, g)) -
                                           fock_overlap_closed(a, f, b, g)));
    }
    o.at_most("M" + std::to_string(m) + ".err", worst, kFockOverlapTol);
  }
}

void coherent_overlap(Outcome& o) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const FockSpace s = FockSpace::create(make_unit_grid(2), 25);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const CoherentSpec a{std::polar(ud(rng), 2 * kPi * ud(rng)), random_spectrum(rng, s.grid())};
    const CoherentSpec b{std::polar(ud(rng), 2 * kPi * ud(rng)), random_spectrum(rng, s.grid())};
    const Complex num = inner(coherent_state(s, a, CoherentConstruction::expansion),
                              coherent_state(s, b, CoherentConstruction::expansion));
    worst = std::max(worst, std::abs(num - coherent_overlap_closed(a, b).value));
  }
  o.at_most("err", worst, kCoherentTol);
  // Missing norm beyond the cutoff at |alpha| = 1 bounds the overlap error.
  o.detail << "poisson_tail(1,25)=" << poisson_tail(1.0, 25) << "; ";
}

void mehler(Outcome& o) {
  double worst = 0.0;
  for (double rho : {-0.8, -0.4, 0.2, 0.5, 0.8})
    for (double x : {-1.0, 0.0, 0.7})
      for (double y : {-0.5, 0.3})
        worst = std::max(worst, std::abs(mehler_partial_sum(rho, x, y, 400) - mehler_kernel(rho, x, y)));
  o.at_most("mehler.err", worst, kMehlerTol);

  const GridRef g = make_unit_grid(2);
  const FockSpace s = FockSpace::create(g, 40);
  const SpectralVector f = folded_spectrum(g, CVector::Unit(2, 0));
  for (double mu : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
    CVector c(2);
    c << mu, std::sqrt(1.0 - mu * mu);
    const SpectralVector h = folded_spectrum(g, c);
    const Complex num = inner(fs_quad_state(s, 0.4, f, QuadKind::q), fs_quad_state(s, -0.2, h, QuadKind::q));
    std::ostringstream name;
    name << "overlap[mu=" << mu << "].err";
    o.at_most(name.str(), std::abs(num - fs_quad_overlap_closed(0.4, f, -0.2, h)), kMehlerTol);
  }
}

void orthogonality(Outcome& o) {
  o.at_most("theta.err", coefficient_orthogonality_error(QuadKind::q, 12, 40), kOrthoTol);
  o.at_most("phi.err", coefficient_orthogonality_error(QuadKind::p, 12, 40), kOrthoTol);
  double prev = INFINITY;
  for (int n : {10, 20, 40}) {
    const double gap = std::abs(coefficient_delta_family(n, 0.0).mass - 1.0);
    o.require(gap < prev, "mass_gap[N=" + std::to_string(n) + "]", gap, prev);
    prev = gap;
  }
}

void stq_eigen(Outcome& o) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  double residual = 0.0, oracle = 0.0;
  for (std::size_t m : {1u, 2u}) {
    const FockSpace s = FockSpace::create(make_unit_grid(m), 16);
    const auto n = static_cast<Eigen::Index>(s.block_dim(5));
    for (int rep = 0; rep < 5; ++rep)
      for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
        const RealSpectralVector x{s.grid(), random_real(rng, m, ud(rng))};
        const StqSpec spec{kind, x, std::nullopt};
        for (std::size_t i = 0; i < m; ++i) residual = std::max(residual, eigen_residual(s, spec, i));
        const StateVector a = assemble_tensors(s, coeff_recursion_oracle(s, x, 5, kind));
        const StateVector b = stq_state(s, spec);
        oracle = std::max(oracle, (a.amps.head(n) - b.amps.head(n)).cwiseAbs().maxCoeff());
      }
  }
  o.at_most("residual", residual, kStqResidualTol);
  o.at_most("oracle.err", oracle, kOracleTol);
}

void bch(Outcome& o) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const WordVectors v{random_real(rng, 2, 1.0), random_real(rng, 2, 0.8)};
    std::array<Complex, 4> k;
    for (auto& x : k) x = std::polar(ud(rng), 2 * kPi * ud(rng));
    const double t = ud(rng) - 0.5;
    const NormalOrderSolution a = normal_order_h(k, t, v.scalars());
    const NormalOrderSolution b = ode_oracle_h(k, t, v.scalars());
    for (int i = 0; i < 8; ++i) worst = std::max(worst, std::abs(a.h[i] - b.h[i]));
  }
  o.at_most("ode.err", worst, kOdeTol);

  const FockSpace s = FockSpace::create(make_unit_grid(1), 16);
  const WordVectors v{RVector::Constant(1, 0.5), RVector::Constant(1, 0.3)};
  const std::array<Complex, 4> k{1.0, -1.0, kI, 1.0};
  // Gated on the vacuum column; the one-quantum columns carry top-sector
  // leakage of order 1e-5 at t = -0.4 for this cutoff and are reported only.
  double word = 0.0, word1 = 0.0;
  for (double t : {-0.4, -0.2, 0.1, 0.3, 0.4}) {
    const ExpWord lhs = ExpWord::anti_normal(k, t);
    const ExpWord rhs = ExpWord::normal(normal_order_h(k, t, v.scalars()));
    word = std::max(word, verify_word(s, lhs, rhs, v, 0));
    word1 = std::max(word1, verify_word(s, lhs, rhs, v, 1));
  }
  o.at_most("word.err", word, kWordTol);
  o.detail << "word.err[block<=1]=" << word1 << "; ";

  const LieScalars sc = v.scalars();
  const NormalOrderSolution sp = normal_order_h(k, 1.0, sc);
  const std::array<Complex, 8> want{0.5 * (sc.q2 + sc.p2) + kI * sc.mu, 0.5, Complex(0.0, 0.5), 0.5,
                                    -std::log(2.0), 0.5, Complex(0.0, -0.5), -0.5};
  double special = 0.0;
  for (int i = 0; i < 8; ++i) special = std::max(special, std::abs(sp.h[i] - want[i]));
  o.at_most("special.err", special, 0.0);
}

void overlaps(Outcome& o) {
  const GridRef g = make_unit_grid(1);
  const StqSpec q{QuadKind::q, folded_real_spectrum(g, RVector::Constant(1, 0.5)), std::nullopt};
  const StqSpec p{QuadKind::p, folded_real_spectrum(g, RVector::Constant(1, 0.6)), std::nullopt};
  const Complex closed = stq_overlap_closed(q, p);
  double prev = INFINITY;
  for (int n : {12, 16, 20}) {
    const FockSpace s = FockSpace::create(g, n);
    const double e = std::abs(inner(stq_state(s, q), stq_state(s, p)) - closed);
    o.require(e < prev, "qp.err[N=" + std::to_string(n) + "]", e, prev);
    prev = e;
  }
  o.at_most("qp.final", prev, kQpTol);

  const FockSpace big = FockSpace::create(g, 300);
  double reg = 0.0;
  for (QuadKind kind : {QuadKind::q, QuadKind::p})
    for (double eps : {0.1, 0.25, 0.5, 1.0}) {
      const StqSpec a{kind, folded_real_spectrum(g, RVector::Constant(1, 0.4)), eps};
      const StqSpec b{kind, folded_real_spectrum(g, RVector::Constant(1, -0.3)), eps};
      const double d = (a.eigenvalue.coeffs - b.eigenvalue.coeffs).squaredNorm();
      reg = std::max(reg, std::abs(inner(stq_state(big, a), stq_state(big, b)) -
                                   regularized_delta_kernel(eps, d, a.omega())));
    }
  o.at_most("regularized.err", reg, kRegularizedTol);

  std::mt19937_64 rng(8);
  const FockSpace s = FockSpace::create(make_unit_grid(2), 25);
  double app = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const CoherentSpec coh{0.7, random_spectrum(rng, s.grid())};
    const StqSpec spec{QuadKind::q, RealSpectralVector{s.grid(), random_real(rng, 2, 0.6)}, std::nullopt};
    app = std::max(app, std::abs(inner(stq_state(s, spec), coherent_state(s, coh, CoherentConstruction::expansion)) -
                                 stq_coherent_overlap_closed(spec, coh)));
  }
  o.at_most("coherent_q.err", app, kCoherentQTol);
}

EnsembleConfig ensemble(GridRef g, std::uint64_t seed) {
  EnsembleConfig e;
  e.grid = std::move(g);
  e.sample_count = 100000;
  e.seed = seed;
  return e;
}

void functional(Outcome& o) {
  // Every multiset of up to six factors on three modes.
  const GridRef g3 = make_unit_grid(3);
  std::vector<MomentSpec> patterns;
  MomentSpec cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!cur.empty()) patterns.push_back(cur);
    if (cur.size() == 6) return;
    for (std::size_t k = from; k < 6; ++k) {
      cur.push_back({k / 2, k % 2 == 1});
      rec(k);
      cur.pop_back();
    }
  };
  rec(0);
  std::size_t misses = 0;
  double worst_z = 0.0;
  const EnsembleConfig e3 = ensemble(g3, 9);
  for (const MomentSpec& p : patterns) {
    const McEstimate est = mc_wick_moment(e3, p);
    const double err = std::abs(est.value - wick_moment(p));
    if (err > kWickK * est.std_error + 1e-12) ++misses;
    if (est.std_error > 0) worst_z = std::max(worst_z, err / est.std_error);
  }
  o.detail << "patterns=" << patterns.size() << "; ";
  o.at_most("wick.max_z", worst_z, kWickK);
  o.at_most("wick.misses", static_cast<double>(misses), 0.0);

  const FockSpace s2 = FockSpace::create(make_unit_grid(2), 2);
  const EnsembleConfig e2 = ensemble(s2.grid(), 10);
  auto within = [&](const std::string& name, const ResolutionEstimate& r) {
    o.require(r.within(kResolutionK), name + ".dev", r.max_deviation, kResolutionK * r.max_std_error + r.tail_bound);
  };
  within("sectors", mc_resolve_identity(s2, e2, ResolutionFamily::fock_sectors, {2}));
  for (auto [m, n] : {std::pair{0, 1}, std::pair{2, 0}, std::pair{1, 1}})
    within("sector" + std::to_string(m) + std::to_string(n), off_diagonal_sector_check(s2, e2, m, n));

  const FockSpace s1 = FockSpace::create(make_unit_grid(1), 12);
  ResolutionOptions opt;
  opt.block = 4;
  within("coherent", mc_resolve_identity(s1, ensemble(s1.grid(), 11), ResolutionFamily::coherent, opt));

  const ResolutionEstimate r = mc_resolve_identity(s2, e2, ResolutionFamily::stq_quadrature, {2});
  within("stq", r);
  o.require(r.kappa > 0.0, "kappa", r.kappa, 0.0);
}

void negative(Outcome& o) {
  const std::array<std::array<double, 3>, 1> k{{{0, 0, 1}}};
  const std::array<int, 1> spins{0};
  double worst = 0.0;
  for (int n : {1, 2, 3})
    for (int step = 0; step < 3; ++step) {
      const GridRef g = make_grid(k, spins, 8 * kPi * kPi * kPi / std::pow(2.0, step));
      const FockSpace s = FockSpace::create(g, n);
      const double v = fixed_momentum_divergence_probe(s, 0, n);
      worst = std::max(worst, std::abs(v - std::pow((*g)[0].weight, -n)) / v);
    }
  o.at_most("divergence.rel_err", worst, kDivergenceRelTol);
  const FockSpace s = FockSpace::create(make_unit_grid(3), 4);
  double inc = 0.0;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b) inc = std::max(inc, discrete_incompleteness_probe(s, a, b));
  o.at_most("incompleteness", inc, kIncompleteTol);
}

void determinism(Outcome& o) {
  using namespace stq::verify;
  std::size_t mismatches = 0;
  for (Suite suite : {Suite::ccr, Suite::fock, Suite::coherent, Suite::quadrature, Suite::stq, Suite::bch,
                      Suite::functional}) {
    SuiteConfig cfg;
    cfg.suite = suite;
    cfg.reproducible = true;
    validate(cfg);
    cfg.workers = 1;
    const std::string a = to_json(run_suite(cfg));
    const std::string rerun = to_json(run_suite(cfg));
    cfg.workers = 4;
    const std::string b = to_json(run_suite(cfg));
    if (a != b || a != rerun) {
      ++mismatches;
      o.detail << to_string(suite) << " differs; ";
    }
  }
  o.at_most("mismatched_suites", static_cast<double>(mismatches), 0.0);
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  void (*run)(Outcome&);
};

const Criterion kCriteria[] = {
    {1, "CCR exactness on the sub-cutoff block", 1.0, ccr},
    {2, "Fock overlap closed form", 5.0, fock_overlap},
    {3, "coherent overlap closed form", 5.0, coherent_overlap},
    {4, "Mehler identity and quadrature overlap", 10.0, mehler},
    {5, "coefficient orthogonality and delta family", 5.0, orthogonality},
    {6, "STQ eigenvalue equation and recursion oracle", 10.0, stq_eigen},
    {7, "normal-ordering h-functions and operator words", 60.0, bch},
    {8, "STQ overlap formulas", 30.0, overlaps},
    {9, "Wick moments and resolutions of identity", 300.0, functional},
    {10, "divergence and incompleteness probes", 1.0, negative},
    {11, "report determinism across worker counts", 600.0, determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  bool all_passed = true;
  for (const Criterion& c : kCriteria) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << "exception: " << e.what() << "; ";
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    o.require(dt.count() < c.budget_s, "runtime_s", dt.count(), c.budget_s);
    std::printf("%s criterion %d: %s | %s\n", o.passed ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str());
    all_passed = all_passed && o.passed;
  }
  return all_passed ? 0 : 1;
}
