#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "stq/common.hpp"
#include "stq/grid.hpp"

namespace stq {

using Occupation = std::vector<int>;

/// Truncated multimode bosonic Fock space: all occupation vectors with total
/// occupation ≤ cutoff, ordered by total occupation and, inside one sector,
/// lexicographically descending ((2,0) before (1,1) before (0,2)).
///
/// Because of the grading, the states with total occupation ≤ n form the
/// leading principal block of every vector and matrix over the space.
///
/// FockSpace is a cheap handle onto immutable shared data.
class FockSpace {
 public:
  static FockSpace create(GridRef grid, int cutoff);

  const GridRef& grid() const;
  std::size_t modes() const;
  int cutoff() const;
  std::size_t dim() const;

  const Occupation& occupation(std::size_t index) const;
  int total(std::size_t index) const;
  std::optional<std::size_t> index_of(const Occupation& occ) const;

  /// Index of the first basis state of sector n; sector_begin(cutoff + 1) == dim().
  std::size_t sector_begin(int n) const;
  /// Number of leading basis states with total occupation ≤ max_total.
  std::size_t block_dim(int max_total) const;

  bool same_as(const FockSpace& other) const;

 private:
  struct Impl;
  explicit FockSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// binomial(M + N, M), the dimension of the space with M modes and cutoff N.
std::size_t fock_dimension(std::size_t modes, int cutoff);

struct StateVector {
  FockSpace space;
  CVector amps;

  static StateVector vacuum(const FockSpace& space);
  static StateVector zero(const FockSpace& space);
  static StateVector basis(const FockSpace& space, const Occupation& occ);

  double norm() const { return amps.norm(); }
  /// Norm of the components with total occupation ≤ max_total.
  double block_norm(int max_total) const;
  StateVector restricted(int max_total) const;
};

/// <a|b>, conjugate-linear in a.
Complex inner(const StateVector& a, const StateVector& b);

/// Complex sparse matrix acting on one FockSpace.
class SparseOperator {
 public:
  using Matrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

  SparseOperator(FockSpace space, Matrix m);

  static SparseOperator zero(const FockSpace& space);
  static SparseOperator identity(const FockSpace& space);
  static SparseOperator diagonal(const FockSpace& space, const CVector& diag);

  const FockSpace& space() const { return space_; }
  const Matrix& matrix() const { return m_; }
  CMatrix dense() const { return CMatrix(m_); }

  SparseOperator adjoint() const;
  StateVector apply(const StateVector& v) const;

  SparseOperator operator+(const SparseOperator& o) const;
  SparseOperator operator-(const SparseOperator& o) const;
  SparseOperator operator*(const SparseOperator& o) const;
  SparseOperator operator*(Complex s) const;

 private:
  FockSpace space_;
  Matrix m_;
};

inline SparseOperator operator*(Complex s, const SparseOperator& op) { return op * s; }
inline StateVector operator*(const SparseOperator& op, const StateVector& v) { return op.apply(v); }

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

/// Largest |entry| of a dense matrix restricted to the leading block of
/// states with total occupation ≤ max_total.
double block_max_abs(const FockSpace& space, const CMatrix& m, int max_total);

struct LadderPair {
  SparseOperator annihilator;
  SparseOperator creator;
};

/// Unit-commutator ladder operators b_i, b_i† of one mode. The creator is the
/// exact adjoint of the annihilator and maps the top sector to zero.
LadderPair ladder(const FockSpace& space, std::size_t mode);

/// n̂ = Σ_i b_i† b_i (diagonal).
SparseOperator number_operator(const FockSpace& space);

/// a_F = Σ conj(F_i) b_i and its adjoint.
LadderPair smeared_ladder(const FockSpace& space, const SpectralVector& f);

/// (a_F†)^n |vac> / √n!. F must be normalized to 1e-12.
StateVector fock_state(const FockSpace& space, int n, const SpectralVector& f);

/// Same construction without the normalization precondition; used by the
/// functional-integral estimators where F is a random Gaussian spectrum.
StateVector raised_state(const FockSpace& space, int n, const SpectralVector& f);

/// δ_mn <F,G>^n.
Complex fock_overlap_closed(int m, const SpectralVector& f, int n, const SpectralVector& g);

/// Norm² of (â†(k_i))^n |vac> / √n! with the unfolded (weight-carrying)
/// creation operator â†(k_i) = b_i† / √weight_i. Equals weight_i^-n.
double fixed_momentum_divergence_probe(const FockSpace& space, std::size_t mode, int n);

/// max over basis-mode spectra e_j and occupations p ≤ cutoff of |<p_{e_j}|1_m 1_n>|.
double discrete_incompleteness_probe(const FockSpace& space, std::size_t m, std::size_t n);

/// Max |entry| of [b_i, b_j†] − δ_ij 𝟙 on the block of occupations < cutoff.
double ccr_block_error(const FockSpace& space, std::size_t i, std::size_t j);

/// exp(op)|v> by the power series. Terminates exactly when op raises the
/// total occupation (or lowers it); for general operators the series is
/// combined with scaling and squaring.
StateVector apply_exponential(const SparseOperator& op, const StateVector& v);

/// exp(op) as a dense matrix, computed column by column with apply_exponential.
CMatrix exponential_dense(const SparseOperator& op);

}  // namespace stq
