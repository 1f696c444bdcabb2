#pragma once

#include "stq/fock.hpp"
#include "stq/grid.hpp"

namespace stq {

/// Fixed-spectrum coherent-state parameters: amplitude alpha and normalized
/// spectrum F, so that the folded amplitude vector is alpha·F.
struct CoherentSpec {
  Complex alpha{};
  SpectralVector spectrum;

  SpectralVector alpha_vector() const { return spectrum.scaled(alpha); }

  /// Splits an arbitrary amplitude vector into |α| and α/|α|. A zero vector
  /// gets alpha = 0 and the first basis mode as spectrum.
  static CoherentSpec from_vector(const SpectralVector& alpha_vector);
};

enum class CoherentConstruction { expansion, displacement };

/// Σ_{n > cutoff} e^{-mean} mean^n / n!, summed from the tail side.
double poisson_tail(double mean, int cutoff);

/// Truncation tolerance for coherent_state: the dropped Poisson tail weight
/// must stay below this.
inline constexpr double kCoherentTailTolerance = 1e-8;

/// |α_F> in the truncated space, either by summing the fixed-spectrum Fock
/// expansion to the cutoff or by applying exp(a_α† − a_α) to the vacuum.
/// Throws TruncationError if the Poisson tail beyond the cutoff exceeds
/// kCoherentTailTolerance.
StateVector coherent_state(const FockSpace& space, const CoherentSpec& spec,
                           CoherentConstruction construction);

struct CoherentOverlap {
  Complex value{};     // exp(−|α|²/2 − |β|²/2 + <α,β>)
  double distance = 0.0;  // ||α − β||²
  double phase = 0.0;     // Im <α,β>

  Complex factored() const { return std::exp(Complex(-0.5 * distance, phase)); }
};

CoherentOverlap coherent_overlap_closed(const CoherentSpec& a, const CoherentSpec& b);

struct CoherentMetric {
  double distance = 0.0;           // ||α − β||²
  double minus_log_overlap = 0.0;  // −ln |<α|β>|²
  double difference = 0.0;
};

CoherentMetric coherent_metric(const CoherentSpec& a, const CoherentSpec& b);

}  // namespace stq
