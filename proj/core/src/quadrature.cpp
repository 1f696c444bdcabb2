#include "stq/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "stq/coherent.hpp"

namespace stq {

namespace {

// iⁿ
Complex i_pow(int n) {
  switch (n & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

const double kSqrt2Pi = std::sqrt(2.0 * kPi);

std::vector<Complex> coeff_column(QuadKind kind, int max_order, double x) {
  const std::vector<double> psi = hermite_functions(max_order, x);
  std::vector<Complex> out(psi.size());
  for (std::size_t n = 0; n < psi.size(); ++n) {
    out[n] = kind == QuadKind::q ? Complex(psi[n], 0.0)
                                 : i_pow(static_cast<int>(n)) * (kSqrt2Pi * psi[n]);
  }
  return out;
}

// |0_F>, |1_F>, ..., |cutoff_F> as columns.
CMatrix fock_columns(const FockSpace& space, const SpectralVector& f) {
  const SparseOperator creator = smeared_ladder(space, f).creator;
  CMatrix cols(static_cast<Eigen::Index>(space.dim()), space.cutoff() + 1);
  StateVector v = StateVector::vacuum(space);
  cols.col(0) = v.amps;
  for (int n = 1; n <= space.cutoff(); ++n) {
    v = creator.apply(v);
    v.amps /= std::sqrt(static_cast<double>(n));
    cols.col(n) = v.amps;
  }
  return cols;
}

double hermitian_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

const char* to_string(QuadKind kind) { return kind == QuadKind::q ? "q" : "p"; }

Complex quad_coeff(QuadKind kind, int n, double x) {
  if (n < 0) throw DomainError("quad_coeff: negative order");
  return coeff_column(kind, n, x).back();
}

QuadCoeffTable make_coeff_table(QuadKind kind, int max_order, std::vector<double> xs) {
  if (max_order < 0) throw DomainError("make_coeff_table: negative order");
  QuadCoeffTable t;
  t.kind = kind;
  t.max_order = max_order;
  t.xs = std::move(xs);
  t.values.assign(static_cast<std::size_t>(max_order) + 1, std::vector<Complex>(t.xs.size()));
  for (std::size_t j = 0; j < t.xs.size(); ++j) {
    const std::vector<Complex> col = coeff_column(kind, max_order, t.xs[j]);
    for (std::size_t n = 0; n < col.size(); ++n) t.values[n][j] = col[n];
  }
  return t;
}

SparseOperator quad_operator(const FockSpace& space, const SpectralVector& f, QuadKind kind) {
  const LadderPair a = smeared_ladder(space, f);
  const double s = 1.0 / std::sqrt(2.0);
  if (kind == QuadKind::q) return (a.annihilator + a.creator) * Complex(s, 0.0);
  return (a.annihilator - a.creator) * Complex(0.0, -s);
}

StateVector fs_quad_state(const FockSpace& space, double x, const SpectralVector& f, QuadKind kind) {
  require_same_grid(space.grid(), f.grid, "fs_quad_state");
  if (!f.is_normalized(1e-12)) throw DomainError("fs_quad_state: spectrum is not normalized");
  const CMatrix cols = fock_columns(space, f);
  const std::vector<Complex> c = coeff_column(kind, space.cutoff(), x);
  StateVector out = StateVector::zero(space);
  for (int n = 0; n <= space.cutoff(); ++n) out.amps += c[n] * cols.col(n);
  return out;
}

QuadEigenResidual fs_quad_eigen_residual(const FockSpace& space, double x,
                                         const SpectralVector& f, QuadKind kind) {
  if (space.cutoff() < 2) throw DomainError("fs_quad_eigen_residual: cutoff must be at least 2");
  const StateVector state = fs_quad_state(space, x, f, kind);
  StateVector r = quad_operator(space, f, kind).apply(state);
  r.amps -= x * state.amps;

  QuadEigenResidual out;
  const int block = space.cutoff() - 2;
  out.block = r.block_norm(block) / state.block_norm(block);

  // Probe: normalized coherent state |2_F>. The residual lives in the top
  // sector only, where the probe amplitude is 2^N e^{-2}/√N!; a smaller
  // amplitude would drown that in rounding from the lower sectors.
  // Built from the expansion directly: the Poisson tail beyond small
  // cutoffs does not matter for a probe.
  StateVector probe = StateVector::zero(space);
  double c = std::exp(-2.0);
  for (int n = 0; n <= space.cutoff(); ++n) {
    if (n > 0) c *= 2.0 / std::sqrt(static_cast<double>(n));
    probe.amps += c * fock_state(space, n, f).amps;
  }
  out.weak = std::abs(inner(probe, r));
  return out;
}

double mehler_kernel(double rho, double x, double y) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("mehler_kernel: requires |rho| < 1");
  const double d = 1.0 - rho * rho;
  return std::exp((2.0 * rho * x * y - (x * x + y * y) * rho * rho) / d) / std::sqrt(d);
}

double mehler_partial_sum(double rho, double x, double y, int n_max) {
  // ρⁿ H_n(x)H_n(y)/(2ⁿn!) = √π e^{(x²+y²)/2} ρⁿ ψ_n(x) ψ_n(y).
  const std::vector<double> px = hermite_functions(n_max, x);
  const std::vector<double> py = hermite_functions(n_max, y);
  double sum = 0.0;
  double r = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    sum += r * px[n] * py[n];
    r *= rho;
  }
  return std::sqrt(kPi) * std::exp(0.5 * (x * x + y * y)) * sum;
}

double fs_quad_overlap_mu(double mu, double q, double q2) {
  if (!(std::abs(mu) < 1.0))
    throw DomainError("fs_quad_overlap: requires |<F,G>| < 1; use the regularized overlap");
  const double d = 1.0 - mu * mu;
  const double dq = q - q2;
  return std::exp(-mu * dq * dq / d - (1.0 - mu) * (q * q + q2 * q2) / (2.0 * (1.0 + mu))) /
         std::sqrt(kPi * d);
}

double fs_quad_overlap_closed(double q, const SpectralVector& f, double q2, const SpectralVector& g) {
  const Complex mu = inner_product(f, g);
  if (std::abs(mu.imag()) > 1e-12)
    throw DomainError("fs_quad_overlap_closed: complex <F,G> is not supported");
  return fs_quad_overlap_mu(mu.real(), q, q2);
}

double fs_quad_overlap_series(double mu, double q, double q2, int n_max) {
  const std::vector<double> a = hermite_functions(n_max, q);
  const std::vector<double> b = hermite_functions(n_max, q2);
  double sum = 0.0;
  double r = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    sum += r * a[n] * b[n];
    r *= mu;
  }
  return sum;
}

double coefficient_orthogonality_error(QuadKind kind, int max_order, int points) {
  // ∫ c_m c_n* dx = Σ w_k e^{x_k²} c_m(x_k) c_n*(x_k); the e^{x²} undoes the
  // Gauss–Hermite weight, and c_m c_n* is e^{-x²} times a polynomial.
  const GaussHermiteRule rule = gauss_hermite(points);
  const double norm = kind == QuadKind::q ? kThetaNorm : kPhiNorm;
  CMatrix gram = CMatrix::Zero(max_order + 1, max_order + 1);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double x = rule.nodes[k];
    const std::vector<Complex> c = coeff_column(kind, max_order, x);
    const double w = rule.weights[k] * std::exp(x * x);
    for (int m = 0; m <= max_order; ++m)
      for (int n = 0; n <= max_order; ++n) gram(m, n) += w * c[m] * std::conj(c[n]);
  }
  gram -= norm * CMatrix::Identity(max_order + 1, max_order + 1);
  return gram.cwiseAbs().maxCoeff();
}

DeltaFamily coefficient_delta_family(int n_max, double q) {
  if (n_max < 0) throw DomainError("coefficient_delta_family: negative order");
  const std::vector<double> a = hermite_functions(n_max, q);
  auto kernel = [&](double x) {
    const std::vector<double> b = hermite_functions(n_max, x);
    double s = 0.0;
    for (int n = 0; n <= n_max; ++n) s += a[n] * b[n];
    return s;
  };

  DeltaFamily out;
  constexpr double kWindowVar = 4.0;
  const double half = std::sqrt(2.0 * n_max + 1.0) + std::abs(q) + 14.0;
  constexpr double h = 0.005;
  const int steps = static_cast<int>(std::ceil(2.0 * half / h));
  double mass = 0.0;
  for (int j = 0; j <= steps; ++j) {
    const double x = q - half + j * h;
    const double w = (j == 0 || j == steps) ? 0.5 : 1.0;
    const double dx = x - q;
    mass += w * kernel(x) * std::exp(-dx * dx / (2.0 * kWindowVar));
  }
  out.mass = mass * h;

  // First sign change to the right of q, refined by bisection.
  constexpr double scan = 1e-3;
  double lo = q;
  double k_lo = kernel(lo);
  for (double x = q + scan; x < q + half; x += scan) {
    const double k = kernel(x);
    if ((k > 0.0) != (k_lo > 0.0)) {
      double hi = x;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((kernel(mid) > 0.0) == (k_lo > 0.0)) lo = mid;
        else hi = mid;
      }
      out.spread = 0.5 * (lo + hi) - q;
      return out;
    }
    lo = x;
    k_lo = k;
  }
  out.spread = half;
  return out;
}

ProjectorResult subspace_projector(const FockSpace& space, const SpectralVector& f,
                                   const QuadratureGrid& grid) {
  require_same_grid(space.grid(), f.grid, "subspace_projector");
  if (!f.is_normalized(1e-12)) throw DomainError("subspace_projector: spectrum is not normalized");
  if (!(grid.hi > grid.lo) || !(grid.step > 0.0))
    throw DomainError("subspace_projector: empty quadrature interval");
  const int nmax = space.cutoff();

  double tail = 0.0;
  for (double end : {grid.lo, grid.hi}) {
    for (double v : hermite_functions(nmax, end)) tail = std::max(tail, std::abs(v));
  }
  if (tail > 1e-10) {
    throw DomainError("subspace_projector: quadrature interval too narrow for cutoff " +
                      std::to_string(nmax) + " (edge tail " + std::to_string(tail) + ")");
  }

  // Σ_x w_x |q_F(x)><q_F(x)| = V G V† with G_mn = Σ_x w_x Θ_m(x) Θ_n(x) and
  // V the columns |n_F>.
  const int steps = static_cast<int>(std::ceil((grid.hi - grid.lo) / grid.step));
  const double h = (grid.hi - grid.lo) / steps;
  RMatrix gram = RMatrix::Zero(nmax + 1, nmax + 1);
  for (int j = 0; j <= steps; ++j) {
    const double x = grid.lo + j * h;
    const double w = (j == 0 || j == steps) ? 0.5 * h : h;
    const std::vector<double> psi = hermite_functions(nmax, x);
    const Eigen::Map<const RVector> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
    gram.noalias() += w * v * v.transpose();
  }

  const CMatrix cols = fock_columns(space, f);
  const CMatrix p = cols * gram.cast<Complex>() * cols.adjoint();
  const CMatrix exact = cols * cols.adjoint();

  SparseOperator::Matrix sparse = p.sparseView(0.0, 0.0);
  sparse.makeCompressed();
  ProjectorResult out{SparseOperator(space, std::move(sparse)), 0.0, 0.0, tail};
  out.op_norm_error = hermitian_norm(p - exact);
  out.idempotency_error = hermitian_norm(p * p - p);
  return out;
}

}  // namespace stq
