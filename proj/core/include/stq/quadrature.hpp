#pragma once

#include <vector>

#include "stq/fock.hpp"
#include "stq/grid.hpp"
#include "stq/hermite.hpp"

namespace stq {

enum class QuadKind { q, p };

const char* to_string(QuadKind kind);

/// Θ_n(x) (kind q, real) or Φ_n(x) = iⁿ √2 π^{1/4} (2ⁿ n!)^{-1/2} H_n(x) e^{-x²/2} (kind p).
Complex quad_coeff(QuadKind kind, int n, double x);

/// Orthogonality constants of the two coefficient families: ∫Θ_mΘ_n = δ_mn
/// and ∫Φ_mΦ_n* = 2π δ_mn. Kept separate on purpose; never rescaled into
/// each other.
inline constexpr double kThetaNorm = 1.0;
inline constexpr double kPhiNorm = 2.0 * kPi;

struct QuadCoeffTable {
  QuadKind kind = QuadKind::q;
  int max_order = 0;
  std::vector<double> xs;
  /// values[n][j] = coefficient of order n at xs[j].
  std::vector<std::vector<Complex>> values;
};

QuadCoeffTable make_coeff_table(QuadKind kind, int max_order, std::vector<double> xs);

/// q̂_F = (a_F + a_F†)/√2, p̂_F = −i (a_F − a_F†)/√2.
SparseOperator quad_operator(const FockSpace& space, const SpectralVector& f, QuadKind kind);

/// Σ_{n ≤ cutoff} |n_F> Θ_n(x) (or Φ_n(x)). Non-normalizable in the limit;
/// here simply the truncated sum.
StateVector fs_quad_state(const FockSpace& space, double x, const SpectralVector& f, QuadKind kind);

struct QuadEigenResidual {
  /// ||(x̂_F − x)|x_F>|| on occupations ≤ cutoff − 2, relative to the block norm.
  double block = 0.0;
  /// |<φ|(x̂_F − x)|x_F>| against a normalized coherent probe φ along F.
  double weak = 0.0;
};

QuadEigenResidual fs_quad_eigen_residual(const FockSpace& space, double x,
                                         const SpectralVector& f, QuadKind kind);

/// Closed Mehler kernel Σ ρⁿ H_n(x)H_n(y)/(2ⁿ n!). Requires |ρ| < 1.
double mehler_kernel(double rho, double x, double y);
/// The same series summed to order n_max.
double mehler_partial_sum(double rho, double x, double y, int n_max);

/// <q_F|q2_G> for real μ = <F,G>, |μ| < 1.
double fs_quad_overlap_closed(double q, const SpectralVector& f, double q2, const SpectralVector& g);
/// Closed overlap written in terms of μ directly.
double fs_quad_overlap_mu(double mu, double q, double q2);
/// Σ_{n ≤ n_max} μⁿ Θ_n(q) Θ_n(q2).
double fs_quad_overlap_series(double mu, double q, double q2, int n_max);

/// Max |∫ c_m c_n* − norm δ_mn| over m,n ≤ max_order by Gauss–Hermite quadrature.
double coefficient_orthogonality_error(QuadKind kind, int max_order, int points);

/// Delta-family diagnostics of K_N(q, q') = Σ_{n ≤ N} Θ_n(q)Θ_n(q').
struct DeltaFamily {
  /// ∫ K_N(q,q') g(q') dq' with g a unit-height Gaussian window of variance 4
  /// centred on q; tends to 1.
  double mass = 0.0;
  /// Distance from q to the first sign change of K_N(q, ·); tends to 0.
  double spread = 0.0;
};

DeltaFamily coefficient_delta_family(int n_max, double q);

struct QuadratureGrid {
  double lo = -10.0;
  double hi = 10.0;
  double step = 0.01;
};

struct ProjectorResult {
  SparseOperator projector;
  double op_norm_error = 0.0;     // ||P − Σ|n_F><n_F|||₂
  double idempotency_error = 0.0; // ||P² − P||₂
  double edge_tail = 0.0;         // max_n |Θ_n| at the interval ends
};

/// Trapezoid quadrature of ∫ |q_F><q_F| dq over the given interval. Throws
/// DomainError if the interval is too narrow for the cutoff (edge tail above
/// 1e-10).
ProjectorResult subspace_projector(const FockSpace& space, const SpectralVector& f,
                                   const QuadratureGrid& grid);

}  // namespace stq
