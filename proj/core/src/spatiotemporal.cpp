#include "stq/spatiotemporal.hpp"

#include <cmath>

namespace stq {

namespace {

void check_spec(const StqSpec& spec, const char* what) {
  if (!spec.eigenvalue.grid) throw DomainError(std::string(what) + ": spec has no grid");
  if (spec.epsilon && !(*spec.epsilon > 0.0 && *spec.epsilon <= 1.0))
    throw DomainError(std::string(what) + ": epsilon must lie in (0, 1]");
}

double eps_of(const StqSpec& spec) { return spec.epsilon.value_or(0.0); }

// Per-mode Gaussian data: state ∝ exp(α b† + (β/2) b†²)|vac>.
struct ModeGaussian {
  Complex alpha;
  double beta;
};

ModeGaussian mode_gaussian(const StqSpec& spec, std::size_t i) {
  const double e = eps_of(spec);
  const double x = spec.eigenvalue.coeffs[static_cast<Eigen::Index>(i)];
  const double lin = std::sqrt(2.0 - e) * x;
  if (spec.kind == QuadKind::q) return {Complex(lin, 0.0), -(1.0 - e)};
  return {Complex(0.0, lin), 1.0 - e};
}

// <vac| exp(conj(α1) b + conj(β1) b²/2) exp(α2 b† + β2 b†²/2) |vac>.
Complex gaussian_mode_overlap(const ModeGaussian& a, const ModeGaussian& b) {
  const Complex a1 = std::conj(a.alpha);
  const double det = 1.0 - a.beta * b.beta;
  if (std::abs(det) < 1e-14)
    throw DomainError("stq overlap: both states are exact limits of the same kind");
  const Complex num = a.beta * b.alpha * b.alpha + b.beta * a1 * a1 + 2.0 * a1 * b.alpha;
  return std::exp(num / (2.0 * det)) / std::sqrt(det);
}

}  // namespace

double StqSpec::prefactor() const {
  const double e = epsilon.value_or(0.0);
  const double m = static_cast<double>(eigenvalue.size());
  double v = std::pow(2.0 - e, 0.5 * omega()) * std::exp(-0.5 * eigenvalue.norm2());
  if (normalization == StqNormalization::delta_normalized) v *= std::pow(2.0 * kPi, -0.25 * m);
  return v;
}

StateVector stq_state(const FockSpace& space, const StqSpec& spec) {
  check_spec(spec, "stq_state");
  require_same_grid(space.grid(), spec.eigenvalue.grid, "stq_state");
  SparseOperator gen = SparseOperator::zero(space);
  for (std::size_t i = 0; i < space.modes(); ++i) {
    const ModeGaussian g = mode_gaussian(spec, i);
    const SparseOperator c = ladder(space, i).creator;
    gen = gen + c * g.alpha + (c * c) * Complex(0.5 * g.beta, 0.0);
  }
  // gen strictly raises the total occupation, so the series terminates.
  StateVector out = apply_exponential(gen, StateVector::vacuum(space));
  out.amps *= spec.prefactor();
  return out;
}

StateVector stq_state_factorized(const FockSpace& space, const StqSpec& spec) {
  check_spec(spec, "stq_state_factorized");
  require_same_grid(space.grid(), spec.eigenvalue.grid, "stq_state_factorized");
  const std::size_t m = space.modes();
  const FockSpace single = FockSpace::create(make_unit_grid(1), space.cutoff());
  std::vector<CVector> per_mode;
  per_mode.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    StqSpec s = spec;
    RVector x(1);
    x[0] = spec.eigenvalue.coeffs[static_cast<Eigen::Index>(i)];
    s.eigenvalue = RealSpectralVector{single.grid(), x};
    per_mode.push_back(stq_state(single, s).amps);
  }
  StateVector out = StateVector::zero(space);
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const Occupation& occ = space.occupation(idx);
    Complex a{1.0, 0.0};
    for (std::size_t i = 0; i < m; ++i) a *= per_mode[i][occ[i]];
    out.amps[static_cast<Eigen::Index>(idx)] = a;
  }
  return out;
}

std::vector<Complex> stq_mode_amplitudes(QuadKind kind, double x, int n_max) {
  const std::vector<double> psi = hermite_functions(n_max, x);
  const double c = std::pow(2.0 * kPi, 0.25);
  std::vector<Complex> out(psi.size());
  Complex phase{1.0, 0.0};
  for (std::size_t n = 0; n < psi.size(); ++n) {
    out[n] = c * psi[n] * phase;
    if (kind == QuadKind::p) phase *= kI;
  }
  return out;
}

CoefficientTensors coeff_recursion_oracle(const FockSpace& space, const RealSpectralVector& eigenvalue,
                                          int max_order, QuadKind kind, StqNormalization normalization) {
  require_same_grid(space.grid(), eigenvalue.grid, "coeff_recursion_oracle");
  if (max_order < 0 || max_order > space.cutoff())
    throw DomainError("coeff_recursion_oracle: max_order must lie in [0, cutoff]");
  const std::size_t m = space.modes();
  StqSpec spec{kind, eigenvalue, std::nullopt, normalization};

  CoefficientTensors t;
  t.modes = m;
  t.v.push_back({Complex(spec.prefactor(), 0.0)});
  const Complex lin = kind == QuadKind::q ? Complex(std::sqrt(2.0), 0.0) : Complex(0.0, std::sqrt(2.0));
  const double pair = kind == QuadKind::q ? -1.0 : 1.0;

  std::vector<std::size_t> digits;
  for (int order = 0; order < max_order; ++order) {
    // Build V_{order+1}. Flat index: first index j in the lowest digit, the
    // remaining `order` indices I in the higher digits.
    const std::size_t size = t.v[order].size() * m;
    std::vector<Complex> next(size);
    digits.assign(static_cast<std::size_t>(order) + 1, 0);
    for (std::size_t flat = 0; flat < size; ++flat) {
      std::size_t r = flat;
      for (auto& d : digits) {
        d = r % m;
        r /= m;
      }
      const std::size_t j = digits[0];
      const std::size_t rest = flat / m;  // flat index of I in V_order
      Complex v = lin * eigenvalue.coeffs[static_cast<Eigen::Index>(j)] * t.v[order][rest];
      for (int l = 0; l < order; ++l) {
        if (digits[static_cast<std::size_t>(l) + 1] != j) continue;
        // I without its l-th entry.
        std::size_t reduced = 0;
        std::size_t scale = 1;
        for (int k = 0; k < order; ++k) {
          if (k == l) continue;
          reduced += digits[static_cast<std::size_t>(k) + 1] * scale;
          scale *= m;
        }
        v += pair * t.v[order - 1][reduced];
      }
      next[flat] = v;
    }
    t.v.push_back(std::move(next));
  }
  return t;
}

StateVector assemble_tensors(const FockSpace& space, const CoefficientTensors& tensors) {
  if (tensors.modes != space.modes()) throw DomainError("assemble_tensors: mode count mismatch");
  const int order = static_cast<int>(tensors.v.size()) - 1;
  StateVector out = StateVector::zero(space);
  for (std::size_t idx = 0; idx < space.block_dim(std::min(order, space.cutoff())); ++idx) {
    const Occupation& occ = space.occupation(idx);
    std::size_t flat = 0;
    std::size_t scale = 1;
    double norm = 1.0;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      for (int c = 0; c < occ[i]; ++c) {
        flat += i * scale;
        scale *= tensors.modes;
      }
      norm *= std::sqrt(std::tgamma(occ[i] + 1.0));
    }
    out.amps[static_cast<Eigen::Index>(idx)] = tensors.v[space.total(idx)][flat] / norm;
  }
  return out;
}

double eigen_residual(const FockSpace& space, const StqSpec& spec, std::size_t mode) {
  if (!spec.exact()) throw DomainError("eigen_residual: requires the exact-limit state");
  if (mode >= space.modes()) throw DomainError("eigen_residual: mode out of range");
  if (space.cutoff() < 2) throw DomainError("eigen_residual: cutoff must be at least 2");
  const StateVector state = stq_state(space, spec);
  const LadderPair b = ladder(space, mode);
  const double s = 1.0 / std::sqrt(2.0);
  const SparseOperator op = spec.kind == QuadKind::q ? (b.annihilator + b.creator) * Complex(s, 0.0)
                                                     : (b.annihilator - b.creator) * Complex(0.0, -s);
  StateVector r = op.apply(state);
  r.amps -= spec.eigenvalue.coeffs[static_cast<Eigen::Index>(mode)] * state.amps;
  const int block = space.cutoff() - 2;
  return r.block_norm(block) / state.block_norm(block);
}

double regularized_delta_kernel(double epsilon, double distance2, double omega) {
  if (!(epsilon > 0.0)) throw DomainError("regularized_delta_kernel: epsilon must be positive");
  return std::pow(epsilon, -omega) * std::exp(-distance2 / (2.0 * epsilon));
}

Complex stq_overlap_closed(const StqSpec& a, const StqSpec& b) {
  check_spec(a, "stq_overlap_closed");
  check_spec(b, "stq_overlap_closed");
  require_same_grid(a.eigenvalue.grid, b.eigenvalue.grid, "stq_overlap_closed");
  if (a.kind == b.kind && (a.exact() || b.exact())) {
    throw DomainError(
        "stq_overlap_closed: same-kind overlap is a delta functional in the exact limit; "
        "give both states an epsilon and use the regularized form");
  }
  const double pre = a.prefactor() * b.prefactor();
  if (a.kind == b.kind && *a.epsilon == *b.epsilon) {
    const double d = (a.eigenvalue.coeffs - b.eigenvalue.coeffs).squaredNorm();
    // prefactor() carries (2−ε)^{Ω/2} e^{-x²/2}; the kernel already contains them.
    const double base = std::pow(2.0 - *a.epsilon, a.omega()) *
                        std::exp(-0.5 * (a.eigenvalue.norm2() + b.eigenvalue.norm2()));
    return (pre / base) * regularized_delta_kernel(*a.epsilon, d, a.omega());
  }
  Complex out{pre, 0.0};
  for (std::size_t i = 0; i < a.eigenvalue.size(); ++i)
    out *= gaussian_mode_overlap(mode_gaussian(a, i), mode_gaussian(b, i));
  return out;
}

Complex stq_coherent_overlap_closed(const StqSpec& spec, const CoherentSpec& coh) {
  check_spec(spec, "stq_coherent_overlap_closed");
  require_same_grid(spec.eigenvalue.grid, coh.spectrum.grid, "stq_coherent_overlap_closed");
  const SpectralVector alpha = coh.alpha_vector();
  const double norm_factor = spec.normalization == StqNormalization::delta_normalized
                                 ? std::pow(2.0 * kPi, -0.25 * static_cast<double>(spec.eigenvalue.size()))
                                 : 1.0;
  if (spec.exact() && spec.kind == QuadKind::q) {
    Complex exponent{};
    for (Eigen::Index i = 0; i < alpha.coeffs.size(); ++i) {
      const double q = spec.eigenvalue.coeffs[i];
      const double q0 = std::sqrt(2.0) * alpha.coeffs[i].real();
      const double p0 = std::sqrt(2.0) * alpha.coeffs[i].imag();
      exponent += Complex(-0.5 * (q - q0) * (q - q0), p0 * (q - 0.5 * q0));
    }
    return norm_factor * std::pow(2.0, 0.5 * spec.omega()) * std::exp(exponent);
  }
  // General Gaussian contraction with a pure displacement on the ket side.
  Complex out{spec.prefactor() * std::exp(-0.5 * alpha.norm2()), 0.0};
  for (std::size_t i = 0; i < spec.eigenvalue.size(); ++i) {
    const ModeGaussian g = mode_gaussian(spec, i);
    const ModeGaussian c{alpha.coeffs[static_cast<Eigen::Index>(i)], 0.0};
    out *= gaussian_mode_overlap(g, c);
  }
  return out;
}

double anti_vacuum_error(const FockSpace& space) {
  SparseOperator r = SparseOperator::zero(space);
  for (std::size_t i = 0; i < space.modes(); ++i) {
    const SparseOperator c = ladder(space, i).creator;
    r = r + (c * c) * Complex(0.5, 0.0);
  }
  const StateVector s = apply_exponential(r, StateVector::vacuum(space));
  double worst = 0.0;
  for (std::size_t i = 0; i < space.modes(); ++i) {
    const LadderPair b = ladder(space, i);
    StateVector d = b.annihilator.apply(s);
    d.amps -= b.creator.apply(s).amps;
    worst = std::max(worst, d.block_norm(space.cutoff() - 2));
  }
  return worst;
}

}  // namespace stq
