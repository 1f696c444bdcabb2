#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "stq/common.hpp"

namespace stq {

/// Speed of light. Fixed to one; frequencies are |k| in wavenumber units.
inline constexpr double kSpeedOfLight = 1.0;

/// One discretized mode: a wave-vector sample, a spin label and the
/// covariant measure weight Δ³k / ((2π)³ ω) of its cell.
struct Mode {
  std::array<double, 3> k{};
  int spin = 0;
  double weight = 0.0;
  double omega = 0.0;

  friend bool operator==(const Mode&, const Mode&) = default;
};

/// Finite ordered set of modes. Immutable once built; share through GridRef.
class ModeGrid {
 public:
  explicit ModeGrid(std::vector<Mode> modes);

  std::size_t size() const { return modes_.size(); }
  const Mode& operator[](std::size_t i) const { return modes_[i]; }
  std::span<const Mode> modes() const { return modes_; }

  /// Regularized zero-point constant: δ(0) integrated over the grid and halved,
  /// which is M/2 for an M-mode grid.
  double zero_point_constant() const { return 0.5 * static_cast<double>(modes_.size()); }

  friend bool operator==(const ModeGrid&, const ModeGrid&) = default;

 private:
  std::vector<Mode> modes_;
};

using GridRef = std::shared_ptr<const ModeGrid>;

/// Builds the Cartesian product k_samples × spins (k-major ordering).
GridRef make_grid(std::span<const std::array<double, 3>> k_samples,
                  std::span<const int> spins, double cell_volume);

/// M modes with unit weight: unit wave vectors in the xy-plane, spin 0,
/// cell volume (2π)³.
GridRef make_unit_grid(std::size_t modes);

/// Loads a grid from a JSON document; see docs/grid_config.md.
GridRef parse_grid_config(const std::string& json_text);
GridRef load_grid_config(const std::string& path);

/// Complex spectrum in folded coordinates: coeffs[i] = F(k_i) √weight_i.
struct SpectralVector {
  GridRef grid;
  CVector coeffs;

  std::size_t size() const { return static_cast<std::size_t>(coeffs.size()); }
  double norm2() const { return coeffs.squaredNorm(); }
  bool is_normalized(double tol = 1e-12) const;
  SpectralVector normalized() const;
  SpectralVector scaled(Complex factor) const { return {grid, coeffs * factor}; }
};

/// Real-valued spectrum in folded coordinates (quadrature eigenvalue functions).
struct RealSpectralVector {
  GridRef grid;
  RVector coeffs;

  std::size_t size() const { return static_cast<std::size_t>(coeffs.size()); }
  double norm2() const { return coeffs.squaredNorm(); }
  double magnitude() const { return coeffs.norm(); }
  SpectralVector to_complex() const { return {grid, coeffs.cast<Complex>()}; }
};

/// Wraps already-folded coefficients. Throws DomainError on length mismatch.
SpectralVector folded_spectrum(GridRef grid, CVector coeffs);
RealSpectralVector folded_real_spectrum(GridRef grid, RVector coeffs);

/// Folds raw samples F(k_i) into coeffs F(k_i) √weight_i.
SpectralVector embed_spectrum(GridRef grid, std::span<const Complex> samples);

/// Σ conj(F_i) G_i.
Complex inner_product(const SpectralVector& f, const SpectralVector& g);
double inner_product(const RealSpectralVector& f, const RealSpectralVector& g);

struct NormMetric {
  double norm2_a = 0.0;
  double distance = 0.0;  // Σ |A_i − B_i|²
  double phase = 0.0;     // Im <A, B>
};

NormMetric norm_metric(const SpectralVector& a, const SpectralVector& b);

/// Throws DomainError unless both grids hold the same modes.
void require_same_grid(const GridRef& a, const GridRef& b, const char* what);

}  // namespace stq
