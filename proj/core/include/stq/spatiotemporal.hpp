#pragma once

#include <optional>
#include <vector>

#include "stq/coherent.hpp"
#include "stq/fock.hpp"
#include "stq/grid.hpp"
#include "stq/quadrature.hpp"

namespace stq {

enum class StqNormalization {
  /// V₀ = 2^{Ω/2} e^{-x²/2} with Ω = M/2.
  standard,
  /// standard × (2π)^{-1/4} per mode, so that ∫|q><q| d^M q = 𝟙 exactly.
  delta_normalized,
};

/// Spatio-temporal quadrature eigenstate parameters.
///
/// The regularized state at ε ∈ (0, 1] is
///   V₀(ε) exp(√(2−ε) Σ q_i b_i† − ((1−ε)/2) Σ b_i†²)|vac>,  V₀(ε) = (2−ε)^{Ω/2} e^{-q²/2},
/// and the p-kind state uses i√(2−ε) p_i and +(1−ε)/2. At ε → 0 this is the
/// exact eigenstate. The √(2−ε) scaling of the linear term makes same-kind
/// overlaps exactly ε^{-Ω} exp(−||x − x'||²/(2ε)) at every ε.
struct StqSpec {
  QuadKind kind = QuadKind::q;
  RealSpectralVector eigenvalue;
  std::optional<double> epsilon;  // empty: exact limit
  StqNormalization normalization = StqNormalization::standard;

  double omega() const { return eigenvalue.grid->zero_point_constant(); }
  bool exact() const { return !epsilon.has_value(); }
  /// V₀(ε) or W₀(ε) including the normalization convention.
  double prefactor() const;
};

StateVector stq_state(const FockSpace& space, const StqSpec& spec);

/// Same state assembled as a tensor product of single-mode constructions.
StateVector stq_state_factorized(const FockSpace& space, const StqSpec& spec);

/// Exact-limit single-mode amplitudes <n|x> for n = 0..n_max with standard
/// normalization: (2π)^{1/4} ψ_n(x) for q, (2π)^{1/4} iⁿ ψ_n(x) for p.
std::vector<Complex> stq_mode_amplitudes(QuadKind kind, double x, int n_max);

/// Symmetric coefficient tensors V_0..V_max_order of the exact-limit state,
/// obtained order by order from the eigenvalue equation:
///   V_{m+1}(j, I) = √2 q_j V_m(I) − Σ_l δ_{j i_l} V_{m−1}(I \ i_l)
/// (p-kind: i√2 p_j V_m(I) + Σ_l δ_{j i_l} V_{m−1}(I \ i_l)). V_m is stored
/// densely with flat index Σ i_k M^k.
struct CoefficientTensors {
  std::size_t modes = 0;
  std::vector<std::vector<Complex>> v;
};

CoefficientTensors coeff_recursion_oracle(const FockSpace& space, const RealSpectralVector& eigenvalue,
                                          int max_order, QuadKind kind = QuadKind::q,
                                          StqNormalization normalization = StqNormalization::standard);

/// Amplitude of occupation n (total m ≤ tensors order) is V_m(sorted indices)/Π√(n_i!).
/// Sectors beyond the tensor order are left zero.
StateVector assemble_tensors(const FockSpace& space, const CoefficientTensors& tensors);

/// ||(x̂_i − x_i)|x>|| on occupations ≤ cutoff − 2, divided by the block norm
/// of |x>. Exact-limit specs only.
double eigen_residual(const FockSpace& space, const StqSpec& spec, std::size_t mode);

/// ε^{-Ω} exp(−distance2 / (2ε)).
double regularized_delta_kernel(double epsilon, double distance2, double omega);

/// Closed-form <a|b>. Mixed exact kinds give exp(iμ) (standard normalization).
/// Same-kind overlaps need ε on both sides; same ε reduces to
/// ε^{-Ω} exp(−||x−x'||²/(2ε)). Throws DomainError for a same-kind exact pair.
Complex stq_overlap_closed(const StqSpec& a, const StqSpec& b);

/// <q|α_F> for a q-kind spec. Exact limit with α = (q₀ + i p₀)/√2:
///   2^{Ω/2} exp{Σ_i [−(q_i − q₀ᵢ)²/2 + i p₀ᵢ (q_i − q₀ᵢ/2)]}.
Complex stq_coherent_overlap_closed(const StqSpec& spec, const CoherentSpec& coh);

/// max |(b_i − b_i†) exp(â_R†)|vac>| over modes on occupations ≤ cutoff − 2.
double anti_vacuum_error(const FockSpace& space);

}  // namespace stq
