#pragma once

#include <cstdint>
#include <vector>

#include "stq/fock.hpp"
#include "stq/grid.hpp"

namespace stq {

enum class EnsembleKind {
  /// i.i.d. complex normal per folded coordinate, E[F_i F_j*] = δ_ij, E[F_i F_j] = 0.
  gaussian_spectrum,
  /// Uniform on the unit sphere of C^M.
  sphere_spectrum,
  /// Complex normal with E[α_i α_j*] = variance δ_ij.
  coherent_plane,
};

struct EnsembleConfig {
  GridRef grid;
  std::size_t sample_count = 100000;
  std::uint64_t seed = 0;
  EnsembleKind kind = EnsembleKind::gaussian_spectrum;
  double variance = 1.0;  // coherent_plane only
  unsigned workers = 1;
  std::size_t chunk = 4096;  // samples per deterministic work unit
};

/// Deterministic in (seed, sample_index).
SpectralVector sample_spectrum(const EnsembleConfig& cfg, std::size_t sample_index);

struct MomentFactor {
  std::size_t mode = 0;
  bool conjugated = false;
};

using MomentSpec = std::vector<MomentFactor>;

/// E[Π F or F*] under the Gaussian measure: zero unless the plain and
/// conjugated factors pair up, otherwise the number of pairings that match
/// modes (a permanent of δ-entries).
Complex wick_moment(const MomentSpec& spec);

struct McEstimate {
  Complex value{};
  double std_error = 0.0;  // sqrt((Var Re + Var Im) / n)
  std::size_t samples = 0;
};

McEstimate mc_wick_moment(const EnsembleConfig& cfg, const MomentSpec& spec);

enum class ResolutionFamily { fock_sectors, coherent, stq_quadrature };

struct ResolutionOptions {
  /// fock_sectors: highest sector included. coherent / stq_quadrature: the
  /// estimate is formed on occupations ≤ block.
  int block = 2;
  /// Proposal variance for the importance samplers (≤ 0 picks a default).
  double proposal_variance = 0.0;
  /// coherent only: sample a complex amplitude times a uniform unit
  /// spectrum instead of the product Gaussian.
  bool two_step = false;
};

struct ResolutionEstimate {
  CMatrix estimate;    // on the block
  RMatrix std_error;   // per entry, sqrt((Var Re + Var Im) / n)
  CMatrix target;      // κ·𝟙 (or the sector target for fock_sectors)
  double kappa = 1.0;  // fitted for stq_quadrature, 1 otherwise
  double max_deviation = 0.0;
  double max_std_error = 0.0;
  double tail_bound = 0.0;
  std::size_t samples = 0;

  /// max |estimate − target| ≤ k·max std_error + tail bound.
  bool within(double k) const { return max_deviation <= k * max_std_error + tail_bound; }
};

/// fock_sectors: Σ_{n ≤ block} E[|n_F><n_F|]/n! over the Gaussian spectrum
/// ensemble, target the projector onto occupations ≤ block. Under this
/// measure E[|n_F><n_F|] = n!·P_n, hence the 1/n!.
///
/// coherent: π^{-M} ∫ |α><α| d^{2M}α by importance sampling, target 𝟙.
///
/// stq_quadrature: ∫ |q><q| d^M q over exact-limit q-kind states (standard
/// normalization) by importance sampling with q ~ N(0, σ²); κ is the least
/// squares fit of the estimate to κ·𝟙, which is the mean of the diagonal.
ResolutionEstimate mc_resolve_identity(const FockSpace& space, const EnsembleConfig& cfg, ResolutionFamily family,
                                       const ResolutionOptions& options = {});

/// E[|m_F><n_F|] over the Gaussian spectrum ensemble on occupations
/// ≤ max(m, n); target δ_mn n!·P_n.
ResolutionEstimate off_diagonal_sector_check(const FockSpace& space, const EnsembleConfig& cfg, int m, int n);

}  // namespace stq
