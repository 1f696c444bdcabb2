#include "stq_verify/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "stq/bch.hpp"
#include "stq/coherent.hpp"
#include "stq/fock.hpp"
#include "stq/functional.hpp"
#include "stq/parallel.hpp"
#include "stq/quadrature.hpp"
#include "stq/rng.hpp"
#include "stq/spatiotemporal.hpp"

#ifndef STQ_VERSION
#define STQ_VERSION "unknown"
#endif

namespace stq::verify {

namespace {

// Stream ids for the deterministic random draws of each check; far above any
// Monte-Carlo sample index the functional suite uses.
constexpr std::uint64_t kStreamBase = 1ull << 48;

SampleStream stream(const SuiteConfig& cfg, std::uint64_t id) { return SampleStream(cfg.seed, kStreamBase + id); }

SpectralVector random_spectrum(SampleStream& s, const GridRef& g) {
  CVector v(static_cast<Eigen::Index>(g->size()));
  for (auto& x : v) {
    const double a = s.normal();
    const double b = s.normal();
    x = Complex(a, b);
  }
  return SpectralVector{g, v / v.norm()};
}

RVector random_real(SampleStream& s, std::size_t m, double norm) {
  RVector v(static_cast<Eigen::Index>(m));
  for (auto& x : v) x = s.normal();
  return v * (norm / v.norm());
}

double tol(const SuiteConfig& cfg, double t) { return t * cfg.tol_scale; }

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

FockSpace config_space(const SuiteConfig& cfg) { return FockSpace::create(cfg.grid, cfg.cutoff); }

// --- ccr ---------------------------------------------------------------------

std::vector<CheckResult> ccr_block(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.modes(); ++i)
    for (std::size_t j = 0; j < s.modes(); ++j) worst = std::max(worst, ccr_block_error(s, i, j));
  return {make_error_check("ccr.block", "[b_i, b_j^dag] = delta_ij on occupations below the cutoff", worst,
                           tol(cfg, 1e-14))};
}

std::vector<CheckResult> ccr_top_sector(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  Occupation top(s.modes(), 0);
  top[0] = s.cutoff();
  const auto idx = static_cast<Eigen::Index>(*s.index_of(top));
  const CMatrix c = commutator(ladder(s, 0).annihilator, ladder(s, 0).creator).dense();
  return {make_check("ccr.top_sector", "truncation artefact: [b, b^dag] = -N on the top sector", c(idx, idx),
                     Complex(-static_cast<double>(s.cutoff()), 0.0), tol(cfg, 1e-12))};
}

std::vector<CheckResult> ccr_smeared(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  SampleStream r = stream(cfg, 1);
  double worst = 0.0;
  for (int rep = 0; rep < 3; ++rep) {
    const SpectralVector f = random_spectrum(r, s.grid());
    const SpectralVector g = random_spectrum(r, s.grid());
    CMatrix c = commutator(smeared_ladder(s, f).annihilator, smeared_ladder(s, g).creator).dense();
    c -= inner_product(f, g) * CMatrix::Identity(c.rows(), c.cols());
    worst = std::max(worst, block_max_abs(s, c, s.cutoff() - 1));
  }
  return {make_error_check("ccr.smeared", "[a_F, a_G^dag] = <F,G> for smeared ladder operators", worst,
                           tol(cfg, 1e-13))};
}

// --- fock --------------------------------------------------------------------

std::vector<CheckResult> fock_dimension_check(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  return {make_check("fock.dimension", "graded basis size binomial(M + N, M)", static_cast<double>(s.dim()),
                     static_cast<double>(fock_dimension(s.modes(), s.cutoff())), 0.0)};
}

std::vector<CheckResult> fock_overlap(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  SampleStream r = stream(cfg, 2);
  const int top = std::min(4, s.cutoff());
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const SpectralVector f = random_spectrum(r, s.grid());
    const SpectralVector g = random_spectrum(r, s.grid());
    for (int a = 0; a <= top; ++a) {
      const StateVector fa = fock_state(s, a, f);
      for (int b = 0; b <= top; ++b)
        worst = std::max(worst, std::abs(inner(fa, fock_state(s, b, g)) - fock_overlap_closed(a, f, b, g)));
    }
  }
  return {make_error_check("fock.overlap", "fixed-spectrum Fock overlap delta_mn <F,G>^n", worst,
                           tol(cfg, 1e-10))};
}

std::vector<CheckResult> fock_number(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  SampleStream r = stream(cfg, 3);
  const SpectralVector f = random_spectrum(r, s.grid());
  const SparseOperator n = number_operator(s);
  double worst = 0.0;
  for (int k = 0; k <= s.cutoff(); ++k) {
    const StateVector fk = fock_state(s, k, f);
    worst = std::max(worst, (n.apply(fk).amps - double(k) * fk.amps).norm());
  }
  return {make_error_check("fock.number", "fixed-spectrum Fock states are number eigenstates", worst,
                           tol(cfg, 1e-11))};
}

std::vector<CheckResult> fock_divergence(const SuiteConfig& cfg) {
  const double two_pi3 = 8.0 * kPi * kPi * kPi;
  const std::array<std::array<double, 3>, 1> k{{{0, 0, 1}}};
  const std::array<int, 1> spins{0};
  const int n = 2;
  double worst = 0.0;
  for (int step = 0; step < 3; ++step) {
    const GridRef g = make_grid(k, spins, two_pi3 / std::pow(2.0, step));
    const FockSpace s = FockSpace::create(g, n);
    const double v = fixed_momentum_divergence_probe(s, 0, n);
    worst = std::max(worst, std::abs(v - std::pow((*g)[0].weight, -n)) / v);
  }
  return {make_error_check("fock.divergence_probe",
                           "fixed-momentum photon states: norm scales as weight^-n under grid refinement", worst,
                           tol(cfg, 1e-12))};
}

std::vector<CheckResult> fock_incompleteness(const SuiteConfig& cfg) {
  const FockSpace s = FockSpace::create(make_unit_grid(2), 4);
  return {make_error_check("fock.incompleteness",
                           "fixed-spectrum states over basis spectra miss |1_m 1_n>",
                           discrete_incompleteness_probe(s, 0, 1), tol(cfg, 1e-12))};
}

// --- coherent ----------------------------------------------------------------

CoherentSpec random_coherent(SampleStream& r, const GridRef& g, double max_abs) {
  const SpectralVector f = random_spectrum(r, g);
  const double a = max_abs * r.uniform();
  return {std::polar(a, 2.0 * kPi * r.uniform()), f};
}

std::vector<CheckResult> coherent_overlap(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  SampleStream r = stream(cfg, 4);
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const CoherentSpec a = random_coherent(r, s.grid(), 1.0);
    const CoherentSpec b = random_coherent(r, s.grid(), 1.0);
    const Complex num = inner(coherent_state(s, a, CoherentConstruction::expansion),
                              coherent_state(s, b, CoherentConstruction::expansion));
    worst = std::max(worst, std::abs(num - coherent_overlap_closed(a, b).value));
  }
  return {make_error_check("coherent.overlap", "coherent overlap exp(-|a|^2/2 - |b|^2/2 + <a,b>)", worst,
                           tol(cfg, 1e-7))};
}

std::vector<CheckResult> coherent_constructions(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  SampleStream r = stream(cfg, 5);
  const CoherentSpec a{0.8, random_spectrum(r, s.grid())};
  const double d = (coherent_state(s, a, CoherentConstruction::expansion).amps -
                    coherent_state(s, a, CoherentConstruction::displacement).amps)
                       .norm();
  return {make_error_check("coherent.constructions", "Fock expansion equals displaced vacuum", d,
                           tol(cfg, 1e-7))};
}

std::vector<CheckResult> coherent_metric_check(const SuiteConfig& cfg) {
  SampleStream r = stream(cfg, 6);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const CoherentSpec a = random_coherent(r, cfg.grid, 2.0);
    const CoherentSpec b = random_coherent(r, cfg.grid, 2.0);
    worst = std::max(worst, coherent_metric(a, b).difference);
  }
  return {make_error_check("coherent.metric", "-ln |<a|b>|^2 equals ||a - b||^2", worst, tol(cfg, 1e-10))};
}

std::vector<CheckResult> coherent_eigen(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  SampleStream r = stream(cfg, 7);
  const CoherentSpec a = random_coherent(r, s.grid(), 1.0);
  const StateVector v = coherent_state(s, a, CoherentConstruction::expansion);
  StateVector res = smeared_ladder(s, a.spectrum).annihilator.apply(v);
  res.amps -= a.alpha * v.amps;
  return {make_error_check("coherent.eigenstate", "a_F |alpha_F> = alpha |alpha_F> below the top sector",
                           res.block_norm(s.cutoff() - 1), tol(cfg, 1e-13))};
}

// --- quadrature --------------------------------------------------------------

std::vector<CheckResult> quad_orthogonality(const SuiteConfig& cfg) {
  return {make_error_check("quadrature.theta_orthogonality", "int Theta_m Theta_n dq = delta_mn, m,n <= 12",
                           coefficient_orthogonality_error(QuadKind::q, 12, 40), tol(cfg, 1e-8)),
          make_error_check("quadrature.phi_orthogonality", "int Phi_m Phi_n^* dp = 2 pi delta_mn, m,n <= 12",
                           coefficient_orthogonality_error(QuadKind::p, 12, 40), tol(cfg, 1e-8))};
}

std::vector<CheckResult> quad_generating(const SuiteConfig& cfg) {
  double worst = 0.0;
  for (double x = -2.0; x <= 2.0; x += 0.25) {
    const std::vector<double> h = hermite_table(40, x);
    for (double nu = -0.5; nu <= 0.5; nu += 0.125) {
      double sum = 0.0, p = 1.0, f = 1.0;
      for (int n = 0; n <= 40; ++n) {
        if (n > 0) f *= n;
        sum += h[n] * p / f;
        p *= nu;
      }
      worst = std::max(worst, std::abs(sum - std::exp(2 * x * nu - nu * nu)));
    }
  }
  return {make_error_check("quadrature.generating_function", "sum nu^n H_n(x)/n! = exp(2 x nu - nu^2)", worst,
                           tol(cfg, 1e-10))};
}

std::vector<CheckResult> quad_mehler(const SuiteConfig& cfg) {
  std::vector<CheckResult> out;
  for (double rho : {0.2, 0.5, 0.8, 0.9}) {
    const double closed = mehler_kernel(rho, 0.4, -0.3);
    out.push_back(make_check("quadrature.mehler[rho=" + fmt(rho) + "]", "Mehler kernel vs Hermite partial sum",
                             mehler_partial_sum(rho, 0.4, -0.3, 400), closed, tol(cfg, 1e-10)));
  }
  return out;
}

std::vector<CheckResult> quad_overlap(const SuiteConfig& cfg) {
  const GridRef g = make_unit_grid(2);
  const FockSpace s = FockSpace::create(g, cfg.cutoff);
  const SpectralVector f = folded_spectrum(g, CVector::Unit(2, 0));
  std::vector<CheckResult> out;
  for (double mu : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
    CVector c(2);
    c << mu, std::sqrt(1.0 - mu * mu);
    const SpectralVector h = folded_spectrum(g, c);
    const Complex num = inner(fs_quad_state(s, 0.4, f, QuadKind::q), fs_quad_state(s, -0.2, h, QuadKind::q));
    out.push_back(make_check("quadrature.overlap[mu=" + fmt(mu) + "]",
                             "fixed-spectrum quadrature overlap via Mehler, truncated inner product", num,
                             Complex(fs_quad_overlap_closed(0.4, f, -0.2, h), 0.0), tol(cfg, 1e-6)));
  }
  return out;
}

std::vector<CheckResult> quad_complex_mu(const SuiteConfig& cfg) {
  const GridRef g = make_unit_grid(2);
  CVector c(2);
  c << Complex(0.0, 0.6), 0.8;
  double refused = 0.0;
  try {
    fs_quad_overlap_closed(0.0, folded_spectrum(g, CVector::Unit(2, 0)), 0.0, folded_spectrum(g, c));
  } catch (const DomainError&) {
    refused = 1.0;
  }
  return {make_check("quadrature.complex_mu_refused", "quadrature overlap needs real <F,G>", refused, 1.0,
                     tol(cfg, 0.0))};
}

std::vector<CheckResult> quad_delta_family(const SuiteConfig& cfg) {
  const DeltaFamily a = coefficient_delta_family(10, 0.0);
  const DeltaFamily b = coefficient_delta_family(20, 0.0);
  const DeltaFamily c = coefficient_delta_family(40, 0.0);
  const double mass_violations = (std::abs(b.mass - 1) >= std::abs(a.mass - 1)) + (std::abs(c.mass - 1) >= std::abs(b.mass - 1));
  const double spread_violations = (b.spread >= a.spread) + (c.spread >= b.spread);
  return {make_check("quadrature.delta_mass_monotone", "sum Theta_n Theta_n mass tends to 1 over N = 10, 20, 40",
                     mass_violations, 0.0, 0.0),
          make_check("quadrature.delta_mass[N=40]", "delta-family mass at N = 40", c.mass, 1.0, tol(cfg, 1e-3)),
          make_check("quadrature.delta_spread_monotone", "delta-family width shrinks over N = 10, 20, 40",
                     spread_violations, 0.0, 0.0)};
}

std::vector<CheckResult> quad_eigen(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  SampleStream r = stream(cfg, 8);
  const SpectralVector f = random_spectrum(r, s.grid());
  std::vector<CheckResult> out;
  for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
    const QuadEigenResidual res = fs_quad_eigen_residual(s, 0.5, f, kind);
    out.push_back(make_error_check(std::string("quadrature.eigen_block[") + to_string(kind) + "]",
                                   "fixed-spectrum quadrature eigen-equation below the top two sectors", res.block,
                                   tol(cfg, 1e-12)));
  }
  const FockSpace s20 = FockSpace::create(make_unit_grid(1), 20);
  const FockSpace s40 = FockSpace::create(make_unit_grid(1), 40);
  const SpectralVector e = folded_spectrum(s20.grid(), CVector::Ones(1));
  const double w20 = fs_quad_eigen_residual(s20, 0.5, e, QuadKind::q).weak;
  const double w40 = fs_quad_eigen_residual(s40, 0.5, e, QuadKind::q).weak;
  out.push_back(make_check("quadrature.eigen_weak_decay", "weak eigen-residual ratio N = 40 over N = 20",
                           w40 / w20 < 1.0 ? 0.0 : 1.0, 0.0, 0.0));
  return out;
}

std::vector<CheckResult> quad_projector(const SuiteConfig& cfg) {
  const FockSpace s = FockSpace::create(cfg.grid, std::min(cfg.cutoff, 12));
  SampleStream r = stream(cfg, 9);
  const SpectralVector f = random_spectrum(r, s.grid());
  const double half = std::sqrt(2.0 * s.cutoff() + 1.0) + 7.0;
  const ProjectorResult p = subspace_projector(s, f, {-half, half, 0.01});
  return {make_error_check("quadrature.projector", "int |q_F><q_F| dq equals sum |n_F><n_F|", p.op_norm_error,
                           tol(cfg, 1e-8)),
          make_error_check("quadrature.projector_idempotent", "quadrature projector is idempotent",
                           p.idempotency_error, tol(cfg, 1e-8))};
}

// --- stq ---------------------------------------------------------------------

std::vector<CheckResult> stq_eigen(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  SampleStream r = stream(cfg, 10);
  std::vector<CheckResult> out;
  for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
    const StqSpec spec{kind, RealSpectralVector{s.grid(), random_real(r, s.modes(), 0.8)}, std::nullopt};
    double worst = 0.0;
    for (std::size_t i = 0; i < s.modes(); ++i) worst = std::max(worst, eigen_residual(s, spec, i));
    out.push_back(make_error_check(std::string("stq.eigen_residual[") + to_string(kind) + "]",
                                   "quadrature eigenvalue equation for every mode, block below N - 1", worst,
                                   tol(cfg, 1e-10)));
  }
  return out;
}

std::vector<CheckResult> stq_oracle(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  SampleStream r = stream(cfg, 11);
  const int order = std::min(5, s.cutoff());
  const auto n = static_cast<Eigen::Index>(s.block_dim(order));
  std::vector<CheckResult> out;
  for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
    const RealSpectralVector x{s.grid(), random_real(r, s.modes(), 0.8)};
    const StateVector a = assemble_tensors(s, coeff_recursion_oracle(s, x, order, kind));
    const StateVector b = stq_state(s, StqSpec{kind, x, std::nullopt});
    out.push_back(make_error_check(std::string("stq.recursion_oracle[") + to_string(kind) + "]",
                                   "order-by-order coefficient tensors vs exponential construction",
                                   (a.amps.head(n) - b.amps.head(n)).cwiseAbs().maxCoeff(), tol(cfg, 1e-10)));
  }
  return out;
}

std::vector<CheckResult> stq_factorization(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  SampleStream r = stream(cfg, 12);
  const StqSpec spec{QuadKind::q, RealSpectralVector{s.grid(), random_real(r, s.modes(), 0.8)}, cfg.epsilon};
  const double d = (stq_state(s, spec).amps - stq_state_factorized(s, spec).amps).cwiseAbs().maxCoeff();
  return {make_error_check("stq.factorization", "multimode state is a product of single-mode states", d,
                           tol(cfg, 1e-12))};
}

std::vector<CheckResult> stq_anti_vacuum(const SuiteConfig& cfg) {
  return {make_error_check("stq.anti_vacuum", "b_i exp(A_R^dag)|0> = b_i^dag exp(A_R^dag)|0>",
                           anti_vacuum_error(config_space(cfg)), tol(cfg, 1e-12))};
}

std::vector<CheckResult> stq_qp(const SuiteConfig& cfg) {
  const GridRef g = make_unit_grid(1);
  const StqSpec q{QuadKind::q, folded_real_spectrum(g, RVector::Constant(1, 0.5)), std::nullopt};
  const StqSpec p{QuadKind::p, folded_real_spectrum(g, RVector::Constant(1, 0.6)), std::nullopt};
  const Complex closed = stq_overlap_closed(q, p);
  auto truncated = [&](int n) {
    const FockSpace s = FockSpace::create(g, n);
    return inner(stq_state(s, q), stq_state(s, p));
  };
  double prev = INFINITY;
  double violations = 0.0;
  for (int n : {12, 16, 20}) {
    const double e = std::abs(truncated(n) - closed);
    if (!(e < prev)) violations += 1.0;
    prev = e;
  }
  return {make_check("stq.qp_monotone", "<q|p> truncation error decreases over N = 12, 16, 20", violations, 0.0, 0.0),
          make_check("stq.qp_overlap", "<q|p> = exp(i mu), truncated inner product at the configured cutoff",
                     truncated(cfg.cutoff), closed, tol(cfg, 1e-3))};
}

int cutoff_for_epsilon(double eps) {
  // Same-kind regularized amplitudes fall off like (1 − ε)^{n/2}.
  if (eps >= 1.0) return 8;
  return std::min(800, static_cast<int>(std::ceil(std::log(1e-14) / std::log(1.0 - eps))) + 8);
}

std::vector<CheckResult> stq_regularized(const SuiteConfig& cfg) {
  std::vector<CheckResult> out;
  const GridRef g = make_unit_grid(1);
  for (double eps : {cfg.epsilon, 1.0}) {
    const FockSpace s = FockSpace::create(g, cutoff_for_epsilon(eps));
    for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
      const StqSpec a{kind, folded_real_spectrum(g, RVector::Constant(1, 0.4)), eps};
      const StqSpec b{kind, folded_real_spectrum(g, RVector::Constant(1, -0.3)), eps};
      const Complex num = inner(stq_state(s, a), stq_state(s, b));
      const double d = (a.eigenvalue.coeffs - b.eigenvalue.coeffs).squaredNorm();
      out.push_back(make_check(std::string("stq.regularized[") + to_string(kind) + ",eps=" + fmt(eps) + "]",
                               "regularized same-kind overlap eps^-Omega exp(-d/(2 eps))", num,
                               regularized_delta_kernel(eps, d, a.omega()), tol(cfg, 1e-8)));
    }
  }
  const StqSpec same{QuadKind::q, RealSpectralVector{cfg.grid, RVector::Zero(static_cast<Eigen::Index>(cfg.grid->size()))},
                     cfg.epsilon};
  out.push_back(make_check("stq.regularized_identical", "identical regularized states give eps^-Omega",
                           stq_overlap_closed(same, same), std::pow(cfg.epsilon, -same.omega()), tol(cfg, 1e-10)));
  return out;
}

std::vector<CheckResult> stq_delta_family(const SuiteConfig& cfg) {
  const GridRef g = make_unit_grid(1);
  double prev_far = INFINITY, prev_same = 0.0, violations = 0.0;
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    const StqSpec a{QuadKind::q, folded_real_spectrum(g, RVector::Constant(1, 0.2)), eps};
    const StqSpec b{QuadKind::q, folded_real_spectrum(g, RVector::Constant(1, 1.2)), eps};
    const double far = std::abs(stq_overlap_closed(a, b));
    const double same = std::abs(stq_overlap_closed(a, a));
    if (!(far < prev_far)) violations += 1.0;
    if (!(same > prev_same)) violations += 1.0;
    prev_far = far;
    prev_same = same;
  }
  (void)cfg;
  return {make_check("stq.delta_family", "regularized overlap sharpens as eps decreases", violations, 0.0, 0.0)};
}

std::vector<CheckResult> stq_coherent(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  SampleStream r = stream(cfg, 13);
  const CoherentSpec coh = random_coherent(r, s.grid(), 0.7);
  const StqSpec spec{QuadKind::q, RealSpectralVector{s.grid(), random_real(r, s.modes(), 0.6)}, std::nullopt};
  const StateVector alpha = coherent_state(s, coh, CoherentConstruction::expansion);
  return {make_check("stq.coherent_overlap", "<q|alpha_F> closed form vs truncated inner product",
                     inner(stq_state(s, spec), alpha), stq_coherent_overlap_closed(spec, coh), tol(cfg, 1e-7))};
}

std::vector<CheckResult> stq_projection(const SuiteConfig& cfg) {
  const FockSpace s = FockSpace::create(cfg.grid, std::min(cfg.cutoff, 12));
  SampleStream r = stream(cfg, 14);
  const RVector dir = random_real(r, s.modes(), 1.0);
  const double q = 0.6;
  const SpectralVector f{s.grid(), dir.cast<Complex>()};
  const StateVector full = stq_state(s, StqSpec{QuadKind::q, RealSpectralVector{s.grid(), q * dir}, std::nullopt});
  const double half = std::sqrt(2.0 * s.cutoff() + 1.0) + 7.0;
  const StateVector projected = subspace_projector(s, f, {-half, half, 0.01}).projector.apply(full);
  const StateVector fs = fs_quad_state(s, q, f, QuadKind::q);
  const Complex ratio = projected.amps[0] / fs.amps[0];
  const double d = (projected.amps - ratio * fs.amps).cwiseAbs().maxCoeff();
  return {make_error_check("stq.projection", "projection onto the F subspace is proportional to |q_F>", d,
                           tol(cfg, 1e-8))};
}

// --- bch ---------------------------------------------------------------------

LieScalars random_scalars(SampleStream& r, std::size_t m) {
  WordVectors v{random_real(r, m, 1.0), random_real(r, m, 0.8)};
  return v.scalars();
}

std::vector<CheckResult> bch_table(const SuiteConfig& cfg) {
  SampleStream r = stream(cfg, 15);
  const LieScalars sc = random_scalars(r, cfg.grid->size());
  double adj = 0.0, jac = 0.0;
  for (Gen a : kAllGens)
    for (Gen b : kAllGens) {
      adj = std::max(adj, (commutator(a, b, sc) - adjoint(commutator(adjoint(b), adjoint(a), sc))).max_abs());
      for (Gen c : kAllGens) {
        const LieElement A = LieElement::of(a), B = LieElement::of(b), C = LieElement::of(c);
        const LieElement j = bracket(A, bracket(B, C, sc), sc) + bracket(B, bracket(C, A, sc), sc) +
                             bracket(C, bracket(A, B, sc), sc);
        jac = std::max(jac, j.max_abs());
      }
    }
  return {make_error_check("bch.adjoint_closure", "[X, Y]^dag = [Y^dag, X^dag] over the table", adj, 0.0),
          make_error_check("bch.jacobi", "Jacobi identity over all generator triples", jac, tol(cfg, 1e-15))};
}

std::vector<CheckResult> bch_realization(const SuiteConfig& cfg) {
  const FockSpace s = FockSpace::create(cfg.grid, std::min(cfg.cutoff, 8));
  SampleStream r = stream(cfg, 16);
  const WordVectors v{random_real(r, s.modes(), 1.0), random_real(r, s.modes(), 0.8)};
  const LieScalars sc = v.scalars();
  double worst = 0.0;
  for (Gen a : kAllGens)
    for (Gen b : kAllGens) {
      const LieElement t = commutator(a, b, sc);
      SparseOperator rhs = SparseOperator::identity(s) * t.scalar;
      for (Gen g : kAllGens)
        if (t[g] != Complex{}) rhs = rhs + generator_operator(s, g, v) * t[g];
      const CMatrix d = commutator(generator_operator(s, a, v), generator_operator(s, b, v)).dense() - rhs.dense();
      worst = std::max(worst, block_max_abs(s, d, s.cutoff() - 2));
    }
  return {make_error_check("bch.table_realization", "commutator table vs ladder-operator matrices", worst,
                           tol(cfg, 1e-12))};
}

std::vector<CheckResult> bch_special(const SuiteConfig& cfg) {
  const LieScalars sc{0.7, 1.3, Complex(0.4, 0.0)};
  const NormalOrderSolution a = normal_order_h({1.0, -1.0, kI, 1.0}, 1.0, sc);
  std::vector<CheckResult> out{
      make_check("bch.special_h4", "k = (1,-1,i,1), t = 1: coefficient of s is -ln 2", a.h[4],
                 Complex(-std::log(2.0), 0.0), 1e-15),
      make_check("bch.special_h2", "k = (1,-1,i,1), t = 1: coefficient of A_P^dag is i/2", a.h[2],
                 Complex(0.0, 0.5), 1e-15),
      make_check("bch.special_h3", "k = (1,-1,i,1), t = 1: coefficient of A_R^dag is 1/2", a.h[3],
                 Complex(0.5, 0.0), 1e-15),
      make_check("bch.special_h0", "k = (1,-1,i,1), t = 1: scalar q^2/2 + p^2/2 + i mu", a.h[0],
                 0.5 * (sc.q2 + sc.p2) + kI * sc.mu, 1e-15)};
  const double t = 0.5;
  const NormalOrderSolution b = normal_order_h({1.0, -1.0, 1.0, -1.0}, t, sc);
  const double f = t / (1.0 - t * t);
  const double d = std::max({std::abs(b.h[2] - f), std::abs(b.h[3] + f), std::abs(b.h[5] - f), std::abs(b.h[7] + f)});
  out.push_back(make_error_check("bch.special_qq", "k = (1,-1,1,-1): h2 = -h3 = h5 = -h7 = t/(1-t^2)", d, 1e-15));
  (void)cfg;
  return out;
}

std::vector<CheckResult> bch_ode(const SuiteConfig& cfg) {
  SampleStream r = stream(cfg, 17);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const LieScalars sc = random_scalars(r, cfg.grid->size());
    std::array<Complex, 4> k;
    for (auto& x : k) x = std::polar(r.uniform(), 2.0 * kPi * r.uniform());
    const double t = r.uniform() - 0.5;
    const NormalOrderSolution a = normal_order_h(k, t, sc);
    const NormalOrderSolution b = ode_oracle_h(k, t, sc);
    for (int i = 0; i < 8; ++i) worst = std::max(worst, std::abs(a.h[i] - b.h[i]));
  }
  const LieScalars sc{0.7, 1.3, Complex(0.4, 0.0)};
  const NormalOrderSolution a = normal_order_h({1.0, -1.0, 1.0, -1.0}, 0.9, sc);
  const NormalOrderSolution b = ode_oracle_h({1.0, -1.0, 1.0, -1.0}, 0.9, sc);
  double near = 0.0;
  for (int i = 0; i < 8; ++i) near = std::max(near, std::abs(a.h[i] - b.h[i]));
  return {make_error_check("bch.ode_oracle", "closed h-functions vs integrated ODE, 20 random draws", worst,
                           tol(cfg, 1e-7)),
          make_error_check("bch.ode_oracle_near_pole", "closed h-functions vs ODE at t = 0.9 below the t = 1 pole",
                           near, tol(cfg, 1e-8))};
}

std::vector<CheckResult> bch_word(const SuiteConfig& cfg) {
  const FockSpace s = FockSpace::create(make_unit_grid(1), cfg.cutoff);
  const WordVectors v{RVector::Constant(1, 0.5), RVector::Constant(1, 0.3)};
  const std::array<Complex, 4> k{1.0, -1.0, kI, 1.0};
  std::vector<CheckResult> out;
  for (double t : {0.1, 0.3, 0.4}) {
    const double d = verify_word(s, ExpWord::anti_normal(k, t), ExpWord::normal(normal_order_h(k, t, v.scalars())),
                                 v, 1);
    out.push_back(make_error_check("bch.word[t=" + fmt(t) + "]",
                                   "anti-normal vs normal-ordered operator word on occupations <= 1", d,
                                   tol(cfg, 1e-6)));
  }
  for (double t : {-0.4, 0.4}) {
    const double d = verify_word(s, ExpWord::anti_normal(k, t), ExpWord::normal(normal_order_h(k, t, v.scalars())),
                                 v, 0);
    out.push_back(make_error_check("bch.word_vacuum[t=" + fmt(t) + "]",
                                   "anti-normal vs normal-ordered operator word on the vacuum column", d,
                                   tol(cfg, 1e-6)));
  }
  return out;
}

std::vector<CheckResult> bch_s_split(const SuiteConfig& cfg) {
  const FockSpace s = config_space(cfg);
  const WordVectors v{RVector::Zero(static_cast<Eigen::Index>(s.modes())),
                      RVector::Zero(static_cast<Eigen::Index>(s.modes()))};
  const CMatrix d = symmetrized_s(s).dense() - generator_operator(s, Gen::S, v).dense();
  return {make_error_check("bch.s_split", "symmetrized s equals n + Omega below the top sector",
                           block_max_abs(s, d, s.cutoff() - 1), tol(cfg, 1e-14))};
}

std::vector<CheckResult> bch_vacuum(const SuiteConfig& cfg) {
  const FockSpace s = FockSpace::create(cfg.grid, std::min(cfg.cutoff, 6));
  SampleStream r = stream(cfg, 18);
  const WordVectors v{random_real(r, s.modes(), 0.6), random_real(r, s.modes(), 0.5)};
  const LieScalars sc = v.scalars();
  const StateVector out =
      apply_word(s, ExpWord::normal(normal_order_h({1.0, -1.0, kI, 1.0}, 1.0, sc)), v, StateVector::vacuum(s));
  const Complex expected =
      std::exp(0.5 * sc.q2 + 0.5 * sc.p2 + kI * sc.mu) * std::pow(2.0, -s.grid()->zero_point_constant());
  return {make_check("bch.vacuum_expectation", "<0| normal-ordered word |0> = 2^-Omega exp(q^2/2 + p^2/2 + i mu)",
                     out.amps[0], expected, tol(cfg, 1e-12))};
}

std::vector<CheckResult> bch_singular(const SuiteConfig& cfg) {
  double refused = 0.0;
  try {
    normal_order_h({1.0, -1.0, 1.0, -1.0}, 1.0, {});
  } catch (const SingularityError&) {
    refused += 0.5;
  }
  try {
    ode_oracle_h({1.0, -1.0, 1.0, -1.0}, 1.2, {});
  } catch (const SingularityError&) {
    refused += 0.5;
  }
  (void)cfg;
  return {make_check("bch.singularity_refused", "1 - k2 k4 t^2 = 0 is refused by both evaluators", refused, 1.0, 0.0)};
}

// --- functional --------------------------------------------------------------

EnsembleConfig ensemble(const SuiteConfig& cfg, GridRef grid) {
  EnsembleConfig e;
  e.grid = std::move(grid);
  e.sample_count = cfg.samples;
  e.seed = cfg.seed;
  e.workers = cfg.workers;
  return e;
}

// All multisets of factors (mode, conjugated) of size 1..max_factors.
std::vector<MomentSpec> moment_patterns(std::size_t modes, int max_factors) {
  std::vector<MomentSpec> out;
  const std::size_t kinds = 2 * modes;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!idx.empty()) {
      MomentSpec s;
      for (std::size_t k : idx) s.push_back({k / 2, (k % 2) == 1});
      out.push_back(std::move(s));
    }
    if (static_cast<int>(idx.size()) == max_factors) return;
    for (std::size_t k = from; k < kinds; ++k) {
      idx.push_back(k);
      rec(k);
      idx.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<CheckResult> functional_wick(const SuiteConfig& cfg) {
  const std::size_t modes = std::min<std::size_t>(cfg.grid->size(), 3);
  const GridRef g = make_unit_grid(modes);
  const EnsembleConfig e = ensemble(cfg, g);
  const std::vector<MomentSpec> patterns = moment_patterns(modes, 6);
  const std::size_t np = patterns.size();

  struct Part {
    std::vector<Complex> sum;
    std::vector<double> sq;
  };
  const auto parts = run_chunks<Part>(e.sample_count, e.chunk, e.workers, [&](std::size_t b, std::size_t end) {
    Part p{std::vector<Complex>(np), std::vector<double>(np)};
    std::vector<Complex> vals(2 * modes);
    for (std::size_t i = b; i < end; ++i) {
      const SpectralVector f = sample_spectrum(e, i);
      for (std::size_t m = 0; m < modes; ++m) {
        vals[2 * m] = f.coeffs[static_cast<Eigen::Index>(m)];
        vals[2 * m + 1] = std::conj(vals[2 * m]);
      }
      for (std::size_t k = 0; k < np; ++k) {
        Complex x{1.0, 0.0};
        for (const auto& fac : patterns[k]) x *= vals[2 * fac.mode + (fac.conjugated ? 1 : 0)];
        p.sum[k] += x;
        p.sq[k] += std::norm(x);
      }
    }
    return p;
  });
  std::vector<Complex> sum(np);
  std::vector<double> sq(np);
  for (const auto& p : parts)
    for (std::size_t k = 0; k < np; ++k) {
      sum[k] += p.sum[k];
      sq[k] += p.sq[k];
    }

  const double n = static_cast<double>(e.sample_count);
  std::vector<double> worst_z(7, 0.0);
  std::vector<double> err_at(7, 0.0), se_at(7, 0.0);
  for (std::size_t k = 0; k < np; ++k) {
    const Complex mean = sum[k] / n;
    const double var = std::max(0.0, (sq[k] / n - std::norm(mean)) * n / (n - 1.0));
    const double se = std::sqrt(var / n);
    const double err = std::abs(mean - wick_moment(patterns[k]));
    const double z = se > 0.0 ? err / se : (err > 0.0 ? INFINITY : 0.0);
    const std::size_t order = patterns[k].size();
    if (z >= worst_z[order]) {
      worst_z[order] = z;
      err_at[order] = err;
      se_at[order] = se;
    }
  }
  std::vector<CheckResult> out;
  for (int order = 1; order <= 6; ++order)
    out.push_back(make_stat_check("functional.wick[order=" + std::to_string(order) + "]",
                                  "Gaussian moments vs pairing sums, worst pattern of this order", err_at[order], 0.0,
                                  err_at[order], se_at[order], 5.0 * cfg.tol_scale));
  return out;
}

CheckResult resolution_check(const std::string& name, const std::string& ref, const ResolutionEstimate& r, double k) {
  return make_stat_check(name, ref, r.max_deviation, 0.0, r.max_deviation, r.max_std_error, k, r.tail_bound);
}

std::vector<CheckResult> functional_sectors(const SuiteConfig& cfg) {
  const FockSpace s = FockSpace::create(cfg.grid, 2);
  const EnsembleConfig e = ensemble(cfg, cfg.grid);
  const double k = 3.0 * cfg.tol_scale;
  std::vector<CheckResult> out;
  out.push_back(resolution_check("functional.fock_sectors[n<=2]",
                                 "sum_n E[|n_F><n_F|]/n! over the Gaussian measure is the identity up to n = 2",
                                 mc_resolve_identity(s, e, ResolutionFamily::fock_sectors, {2}), k));
  for (auto [m, n] : {std::pair{0, 1}, std::pair{2, 0}, std::pair{1, 1}})
    out.push_back(resolution_check("functional.sector[" + std::to_string(m) + "," + std::to_string(n) + "]",
                                   "E[|m_F><n_F|] = delta_mn n! P_n", off_diagonal_sector_check(s, e, m, n), k));
  return out;
}

std::vector<CheckResult> functional_coherent(const SuiteConfig& cfg) {
  const FockSpace s = FockSpace::create(make_unit_grid(1), 12);
  const EnsembleConfig e = ensemble(cfg, s.grid());
  const double k = 3.0 * cfg.tol_scale;
  ResolutionOptions o;
  o.block = 4;
  const ResolutionEstimate a = mc_resolve_identity(s, e, ResolutionFamily::coherent, o);
  o.two_step = true;
  const ResolutionEstimate b = mc_resolve_identity(s, e, ResolutionFamily::coherent, o);
  return {resolution_check("functional.coherent", "pi^-M int |alpha><alpha| d^2M alpha = 1, product Gaussian sampler",
                           a, k),
          resolution_check("functional.coherent_two_step",
                           "same resolution with amplitude times uniform unit spectrum sampler", b, k)};
}

std::vector<CheckResult> functional_stq(const SuiteConfig& cfg) {
  const FockSpace s = FockSpace::create(cfg.grid, 2);
  const EnsembleConfig e = ensemble(cfg, cfg.grid);
  const ResolutionEstimate r = mc_resolve_identity(s, e, ResolutionFamily::stq_quadrature, {2});
  const double md = static_cast<double>(s.modes());
  return {resolution_check("functional.stq_resolution", "int |q><q| d^M q = kappa 1 after fitting kappa", r,
                           3.0 * cfg.tol_scale),
          make_check("functional.stq_kappa_positive", "fitted kappa is positive", r.kappa > 0.0 ? 1.0 : 0.0, 1.0, 0.0),
          make_stat_check("functional.stq_kappa", "fitted kappa vs (2 pi)^(M/2)", r.kappa, std::pow(2.0 * kPi, 0.5 * md),
                          std::abs(r.kappa - std::pow(2.0 * kPi, 0.5 * md)), r.max_std_error, 3.0 * cfg.tol_scale)};
}

std::vector<RegisteredCheck> build_registry() {
  return {
      {"ccr.block", Suite::ccr, ccr_block},
      {"ccr.smeared", Suite::ccr, ccr_smeared},
      {"ccr.top_sector", Suite::ccr, ccr_top_sector},
      {"fock.dimension", Suite::fock, fock_dimension_check},
      {"fock.divergence_probe", Suite::fock, fock_divergence},
      {"fock.incompleteness", Suite::fock, fock_incompleteness},
      {"fock.number", Suite::fock, fock_number},
      {"fock.overlap", Suite::fock, fock_overlap},
      {"coherent.constructions", Suite::coherent, coherent_constructions},
      {"coherent.eigenstate", Suite::coherent, coherent_eigen},
      {"coherent.metric", Suite::coherent, coherent_metric_check},
      {"coherent.overlap", Suite::coherent, coherent_overlap},
      {"quadrature.complex_mu", Suite::quadrature, quad_complex_mu},
      {"quadrature.delta_family", Suite::quadrature, quad_delta_family},
      {"quadrature.eigen", Suite::quadrature, quad_eigen},
      {"quadrature.generating_function", Suite::quadrature, quad_generating},
      {"quadrature.mehler", Suite::quadrature, quad_mehler},
      {"quadrature.orthogonality", Suite::quadrature, quad_orthogonality},
      {"quadrature.overlap", Suite::quadrature, quad_overlap},
      {"quadrature.projector", Suite::quadrature, quad_projector},
      {"stq.anti_vacuum", Suite::stq, stq_anti_vacuum},
      {"stq.coherent_overlap", Suite::stq, stq_coherent},
      {"stq.delta_family", Suite::stq, stq_delta_family},
      {"stq.eigen_residual", Suite::stq, stq_eigen},
      {"stq.factorization", Suite::stq, stq_factorization},
      {"stq.projection", Suite::stq, stq_projection},
      {"stq.qp_overlap", Suite::stq, stq_qp},
      {"stq.recursion_oracle", Suite::stq, stq_oracle},
      {"stq.regularized", Suite::stq, stq_regularized},
      {"bch.ode_oracle", Suite::bch, bch_ode},
      {"bch.s_split", Suite::bch, bch_s_split},
      {"bch.singularity", Suite::bch, bch_singular},
      {"bch.special_cases", Suite::bch, bch_special},
      {"bch.table", Suite::bch, bch_table},
      {"bch.table_realization", Suite::bch, bch_realization},
      {"bch.vacuum_expectation", Suite::bch, bch_vacuum},
      {"bch.word", Suite::bch, bch_word},
      {"functional.coherent", Suite::functional, functional_coherent},
      {"functional.sectors", Suite::functional, functional_sectors},
      {"functional.stq", Suite::functional, functional_stq},
      {"functional.wick", Suite::functional, functional_wick},
  };
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string json_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

const char* to_string(Suite s) {
  switch (s) {
    case Suite::ccr: return "ccr";
    case Suite::fock: return "fock";
    case Suite::coherent: return "coherent";
    case Suite::quadrature: return "quadrature";
    case Suite::stq: return "stq";
    case Suite::bch: return "bch";
    case Suite::functional: return "functional";
    case Suite::all: return "all";
  }
  return "?";
}

std::optional<Suite> parse_suite(const std::string& name) {
  for (Suite s : {Suite::ccr, Suite::fock, Suite::coherent, Suite::quadrature, Suite::stq, Suite::bch,
                  Suite::functional, Suite::all})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

void validate(SuiteConfig& cfg) {
  if (cfg.cutoff < 2) throw DomainError("cutoff must be at least 2");
  if (cfg.samples < 1) throw DomainError("samples must be at least 1");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
  if (!(cfg.tol_scale > 0.0)) throw DomainError("tol-scale must be positive");
  if (cfg.workers < 1) throw DomainError("workers must be at least 1");
  if (!cfg.grid_path.empty()) {
    cfg.grid = load_grid_config(cfg.grid_path);
    cfg.modes = cfg.grid->size();
  } else {
    if (cfg.modes < 1) throw DomainError("modes must be at least 1");
    cfg.grid = make_unit_grid(cfg.modes);
  }
}

const std::vector<RegisteredCheck>& registry() {
  static const std::vector<RegisteredCheck> r = build_registry();
  return r;
}

VerificationReport run_suite(const SuiteConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<const RegisteredCheck*> selected;
  for (const auto& c : registry())
    if (cfg.suite == Suite::all || c.suite == cfg.suite) selected.push_back(&c);

  const auto results =
      run_chunks<std::vector<CheckResult>>(selected.size(), 1, cfg.workers, [&](std::size_t b, std::size_t) {
        const RegisteredCheck& c = *selected[b];
        try {
          return c.run(cfg);
        } catch (const std::exception& e) {
          CheckResult f;
          f.name = c.key;
          f.ref = std::string("check raised: ") + e.what();
          f.computed = Value::none();
          f.expected = Value::none();
          f.abs_err = NAN;
          f.passed = false;
          return std::vector<CheckResult>{f};
        }
      });

  VerificationReport report;
  report.suite = to_string(cfg.suite);
  report.seed = cfg.seed;
  report.version = STQ_VERSION;
  report.params["modes"] = std::to_string(cfg.modes);
  report.params["cutoff"] = std::to_string(cfg.cutoff);
  report.params["samples"] = std::to_string(cfg.samples);
  report.params["epsilon"] = json_number(cfg.epsilon);
  report.params["tol_scale"] = json_number(cfg.tol_scale);
  report.params["grid"] = json_string(cfg.grid_path.empty() ? "unit" : cfg.grid_path);
  for (const auto& v : results) report.checks.insert(report.checks.end(), v.begin(), v.end());
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report.wall_time_s = cfg.reproducible ? 0.0 : elapsed.count();
  return report;
}

std::vector<TraceRow> functional_trace(const SuiteConfig& cfg) {
  const FockSpace s = FockSpace::create(cfg.grid, 2);
  std::vector<TraceRow> rows;
  for (std::size_t n = 1000; n <= cfg.samples; n *= 10) {
    EnsembleConfig e = ensemble(cfg, cfg.grid);
    e.sample_count = n;
    const ResolutionEstimate r = mc_resolve_identity(s, e, ResolutionFamily::fock_sectors, {2});
    rows.push_back({"fock_sectors", n, r.max_deviation, r.max_std_error});
    const FockSpace c = FockSpace::create(make_unit_grid(1), 12);
    EnsembleConfig ec = ensemble(cfg, c.grid());
    ec.sample_count = n;
    ResolutionOptions o;
    o.block = 4;
    const ResolutionEstimate rc = mc_resolve_identity(c, ec, ResolutionFamily::coherent, o);
    rows.push_back({"coherent", n, rc.max_deviation, rc.max_std_error});
  }
  return rows;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::ostringstream os;
  os << "series,samples,deviation,std_error\n" << std::setprecision(17);
  for (const auto& r : rows) os << r.series << ',' << r.samples << ',' << r.deviation << ',' << r.std_error << '\n';
  return os.str();
}

}  // namespace stq::verify
