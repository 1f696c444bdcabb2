#pragma once

#include <array>
#include <string>
#include <vector>

#include "stq/fock.hpp"
#include "stq/grid.hpp"

namespace stq {

/// The closed set of operators used to normal-order products of quadrature
/// eigenstate creators:
///   A_Q = √2 Σ q_i b_i,  A_P = √2 Σ p_i b_i,  A_R = ½ Σ b_i²,
/// their adjoints, and S = ½ Σ (b_i†b_i + b_i b_i†) = n̂ + Ω.
enum class Gen { A_Q, A_P, A_R, A_Q_dag, A_P_dag, A_R_dag, S };

inline constexpr std::size_t kGenCount = 7;
inline constexpr std::array<Gen, kGenCount> kAllGens{Gen::A_Q,     Gen::A_P,     Gen::A_R, Gen::A_Q_dag,
                                                     Gen::A_P_dag, Gen::A_R_dag, Gen::S};

const char* to_string(Gen g);
Gen adjoint(Gen g);

/// Scalars that appear in the commutator table: ||q||², ||p||² and μ = <q,p>.
struct LieScalars {
  double q2 = 0.0;
  double p2 = 0.0;
  Complex mu{};
};

/// scalar·𝟙 + Σ coeff_g · g.
struct LieElement {
  Complex scalar{};
  std::array<Complex, kGenCount> coeff{};

  static LieElement of(Gen g, Complex c = 1.0);
  static LieElement identity(Complex c) { return {c, {}}; }

  Complex& operator[](Gen g) { return coeff[static_cast<std::size_t>(g)]; }
  Complex operator[](Gen g) const { return coeff[static_cast<std::size_t>(g)]; }

  LieElement operator+(const LieElement& o) const;
  LieElement operator-(const LieElement& o) const;
  LieElement operator*(Complex s) const;

  double max_abs() const;
  std::string str() const;
};

/// Table entry [a, b].
LieElement commutator(Gen a, Gen b, const LieScalars& s);
/// Bilinear extension of the table.
LieElement bracket(const LieElement& a, const LieElement& b, const LieScalars& s);
/// Conjugate-linear adjoint; S and 𝟙 are self-adjoint.
LieElement adjoint(const LieElement& x);

/// Unknown functions of the normal-ordered form
///   exp(t k1 A_Q) exp(t k2 A_R) exp(t k3 A_P†) exp(t k4 A_R†)
///   = e^{h0} exp(h1 A_Q†) exp(h2 A_P†) exp(h3 A_R†) exp(h4 S)
///     exp(h5 A_Q) exp(h6 A_P) exp(h7 A_R).
struct NormalOrderSolution {
  std::array<Complex, 4> k{};
  double t = 0.0;
  LieScalars scalars;
  std::array<Complex, 8> h{};
};

/// Singular when |1 − k2 k4 t²| falls below this.
inline constexpr double kSingularityGuard = 1e-9;

NormalOrderSolution normal_order_h(const std::array<Complex, 4>& k, double t, const LieScalars& s);

/// Independent oracle: integrates the first-order system for h0..h7 obtained
/// by differentiating both sides in t and matching left-invariant
/// derivatives in the 8-dimensional algebra spanned by 𝟙 and the generators.
NormalOrderSolution ode_oracle_h(const std::array<Complex, 4>& k, double t_final, const LieScalars& s,
                                 double tolerance = 1e-12);

/// Ordered product of exponentials, scalar factor exp(log_scalar) in front.
struct ExpWord {
  struct Factor {
    Complex coeff;
    Gen gen;
  };
  Complex log_scalar{};
  std::vector<Factor> factors;

  /// Left-hand side of the normal-ordering identity at parameter t.
  static ExpWord anti_normal(const std::array<Complex, 4>& k, double t);
  /// Right-hand side built from a solution.
  static ExpWord normal(const NormalOrderSolution& sol);
};

/// Eigenvalue vectors that A_Q and A_P refer to when realized on a FockSpace.
struct WordVectors {
  RVector q;
  RVector p;

  LieScalars scalars() const;
};

/// Realizes one generator as a sparse operator.
SparseOperator generator_operator(const FockSpace& space, Gen g, const WordVectors& v);

/// ½ Σ (b_i†b_i + b_i b_i†) built from the truncated ladder matrices.
SparseOperator symmetrized_s(const FockSpace& space);

/// Applies the word to a state; raising and lowering factors use the
/// terminating series, S factors are applied entrywise on the diagonal.
StateVector apply_word(const FockSpace& space, const ExpWord& word, const WordVectors& v,
                       const StateVector& state);

/// Max entrywise |lhs − rhs| over rows and columns with total occupation
/// ≤ block_cut. Requires block_cut ≤ cutoff − 4.
double verify_word(const FockSpace& space, const ExpWord& lhs, const ExpWord& rhs, const WordVectors& v,
                   int block_cut);

}  // namespace stq
