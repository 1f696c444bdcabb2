#include "stq/coherent.hpp"

#include <cmath>

namespace stq {

CoherentSpec CoherentSpec::from_vector(const SpectralVector& alpha_vector) {
  const double n = alpha_vector.coeffs.norm();
  if (n == 0.0) {
    CVector e = CVector::Zero(alpha_vector.coeffs.size());
    e[0] = 1.0;
    return {Complex{}, SpectralVector{alpha_vector.grid, e}};
  }
  return {Complex(n, 0.0), SpectralVector{alpha_vector.grid, alpha_vector.coeffs / n}};
}

double poisson_tail(double mean, int cutoff) {
  if (mean < 0.0) throw DomainError("poisson_tail: negative mean");
  if (mean == 0.0) return 0.0;
  // log pmf of the first dropped term, then accumulate until terms vanish.
  const int start = cutoff + 1;
  double log_term = -mean + start * std::log(mean) - std::lgamma(start + 1.0);
  double term = std::exp(log_term);
  double sum = 0.0;
  for (int k = start; k < start + 10000; ++k) {
    sum += term;
    term *= mean / static_cast<double>(k + 1);
    if (term < 1e-300 || term < 1e-18 * sum) break;
  }
  return sum;
}

StateVector coherent_state(const FockSpace& space, const CoherentSpec& spec,
                           CoherentConstruction construction) {
  require_same_grid(space.grid(), spec.spectrum.grid, "coherent_state");
  if (!spec.spectrum.is_normalized(1e-12))
    throw DomainError("coherent_state: spectrum is not normalized");
  const double mean = std::norm(spec.alpha);
  const double tail = poisson_tail(mean, space.cutoff());
  if (tail > kCoherentTailTolerance) {
    throw TruncationError("coherent_state: Poisson tail " + std::to_string(tail) +
                          " beyond the cutoff exceeds tolerance; raise the cutoff or lower |alpha|");
  }

  if (construction == CoherentConstruction::expansion) {
    const SparseOperator creator = smeared_ladder(space, spec.spectrum).creator;
    StateVector fock = StateVector::vacuum(space);  // |n_F>
    StateVector sum = fock;
    Complex coeff{1.0, 0.0};  // α^n / √n!
    for (int n = 1; n <= space.cutoff(); ++n) {
      fock = creator.apply(fock);
      fock.amps /= std::sqrt(static_cast<double>(n));
      coeff *= spec.alpha / std::sqrt(static_cast<double>(n));
      sum.amps += coeff * fock.amps;
    }
    sum.amps *= std::exp(-0.5 * mean);
    return sum;
  }

  const LadderPair a = smeared_ladder(space, spec.alpha_vector());
  const SparseOperator generator = a.creator - a.annihilator;
  return apply_exponential(generator, StateVector::vacuum(space));
}

CoherentOverlap coherent_overlap_closed(const CoherentSpec& a, const CoherentSpec& b) {
  const SpectralVector va = a.alpha_vector();
  const SpectralVector vb = b.alpha_vector();
  const Complex ab = inner_product(va, vb);
  const NormMetric nm = norm_metric(va, vb);
  CoherentOverlap out;
  out.value = std::exp(-0.5 * va.norm2() - 0.5 * vb.norm2() + ab);
  out.distance = nm.distance;
  out.phase = nm.phase;
  return out;
}

CoherentMetric coherent_metric(const CoherentSpec& a, const CoherentSpec& b) {
  const CoherentOverlap ov = coherent_overlap_closed(a, b);
  CoherentMetric m;
  m.distance = ov.distance;
  m.minus_log_overlap = -std::log(std::norm(ov.value));
  m.difference = std::abs(m.distance - m.minus_log_overlap);
  return m;
}

}  // namespace stq
