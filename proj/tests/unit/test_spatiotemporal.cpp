#include <gtest/gtest.h>

#include <cmath>

#include "stq/spatiotemporal.hpp"

using namespace stq;

namespace {

RealSpectralVector real_spectrum(const GridRef& g, std::initializer_list<double> c) {
  RVector v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v[i++] = x;
  return folded_real_spectrum(g, v);
}

StqSpec exact(QuadKind kind, RealSpectralVector x) { return {kind, std::move(x), std::nullopt}; }

StqSpec regular(QuadKind kind, RealSpectralVector x, double eps) { return {kind, std::move(x), eps}; }

}  // namespace

TEST(StqState, ZeroEigenvalueAtUnitEpsilonIsVacuum) {
  const FockSpace s = FockSpace::create(make_unit_grid(2), 6);
  const StateVector v = stq_state(s, regular(QuadKind::q, real_spectrum(s.grid(), {0.0, 0.0}), 1.0));
  EXPECT_LE((v.amps - StateVector::vacuum(s).amps).norm(), 1e-15);
}

TEST(StqState, ParityAtZeroEigenvalue) {
  const FockSpace s = FockSpace::create(make_unit_grid(1), 16);
  const StateVector v = stq_state(s, exact(QuadKind::q, real_spectrum(s.grid(), {0.0})));
  for (int n = 1; n <= 16; n += 2) EXPECT_EQ(std::abs(v.amps[n]), 0.0);
  EXPECT_GT(std::abs(v.amps[2]), 0.0);
}

TEST(StqState, SingleModeAmplitudesAreHermiteFunctions) {
  const FockSpace s = FockSpace::create(make_unit_grid(1), 30);
  for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
    const StateVector v = stq_state(s, exact(kind, real_spectrum(s.grid(), {0.7})));
    const std::vector<Complex> ref = stq_mode_amplitudes(kind, 0.7, 30);
    for (int n = 0; n <= 30; ++n) EXPECT_LE(std::abs(v.amps[n] - ref[n]), 1e-12) << to_string(kind) << n;
  }
}

TEST(StqState, DeltaNormalizationScalesEachMode) {
  const FockSpace s = FockSpace::create(make_unit_grid(2), 6);
  StqSpec a = exact(QuadKind::q, real_spectrum(s.grid(), {0.3, -0.4}));
  StqSpec b = a;
  b.normalization = StqNormalization::delta_normalized;
  EXPECT_LE((stq_state(s, b).amps - stq_state(s, a).amps / std::sqrt(2.0 * kPi)).norm(), 1e-14);
}

TEST(StqState, FactorizesOverModes) {
  const FockSpace s = FockSpace::create(make_unit_grid(3), 8);
  for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
    for (std::optional<double> eps : {std::optional<double>{}, std::optional<double>{0.3}}) {
      const StqSpec spec{kind, real_spectrum(s.grid(), {0.3, -0.4, 0.8}), eps};
      EXPECT_LE((stq_state(s, spec).amps - stq_state_factorized(s, spec).amps).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(StqState, BadEpsilonRejected) {
  const FockSpace s = FockSpace::create(make_unit_grid(1), 4);
  EXPECT_THROW(stq_state(s, regular(QuadKind::q, real_spectrum(s.grid(), {0.0}), 0.0)), DomainError);
  EXPECT_THROW(stq_state(s, regular(QuadKind::q, real_spectrum(s.grid(), {0.0}), 1.5)), DomainError);
}

TEST(CoeffOracle, LowOrderTensors) {
  const FockSpace s = FockSpace::create(make_unit_grid(1), 4);
  const CoefficientTensors zero = coeff_recursion_oracle(s, real_spectrum(s.grid(), {0.0}), 3);
  const double v0 = zero.v[0][0].real();
  EXPECT_NEAR(v0, std::pow(2.0, 0.25), 1e-15);
  EXPECT_EQ(std::abs(zero.v[1][0]), 0.0);
  EXPECT_NEAR(zero.v[2][0].real() / v0, -1.0, 1e-15);

  const FockSpace s2 = FockSpace::create(make_unit_grid(2), 4);
  const RealSpectralVector q = real_spectrum(s2.grid(), {0.3, -0.4});
  const CoefficientTensors t = coeff_recursion_oracle(s2, q, 3);
  const double w0 = t.v[0][0].real();
  const double qs[2] = {0.3, -0.4};
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(t.v[1][i].real(), std::sqrt(2.0) * w0 * qs[i], 1e-15);
    for (int j = 0; j < 2; ++j) {
      EXPECT_NEAR(t.v[2][j + 2 * i].real(), w0 * (2.0 * qs[i] * qs[j] - (i == j ? 1.0 : 0.0)), 1e-15);
      for (int k = 0; k < 2; ++k) {
        const double sym = qs[i] * (j == k) + qs[j] * (i == k) + qs[k] * (i == j);
        const double expected = w0 * (2.0 * std::sqrt(2.0) * qs[i] * qs[j] * qs[k] - std::sqrt(2.0) * sym);
        EXPECT_NEAR(t.v[3][k + 2 * j + 4 * i].real(), expected, 1e-14);
      }
    }
  }
  EXPECT_THROW(coeff_recursion_oracle(s2, q, 5), DomainError);
}

TEST(CoeffOracle, MatchesExponentialConstruction) {
  for (std::size_t m : {1u, 2u}) {
    const FockSpace s = FockSpace::create(make_unit_grid(m), 8);
    const RealSpectralVector x =
        m == 1 ? real_spectrum(s.grid(), {0.7}) : real_spectrum(s.grid(), {0.3, -0.4});
    for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
      const StateVector oracle = assemble_tensors(s, coeff_recursion_oracle(s, x, 5, kind));
      const StateVector state = stq_state(s, exact(kind, x));
      const int block = 5;
      const auto n = static_cast<Eigen::Index>(s.block_dim(block));
      EXPECT_LE((oracle.amps.head(n) - state.amps.head(n)).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(EigenResidual, ExactOnBlock) {
  const FockSpace s1 = FockSpace::create(make_unit_grid(1), 16);
  EXPECT_LT(eigen_residual(s1, exact(QuadKind::q, real_spectrum(s1.grid(), {0.0})), 0), 1e-12);
  const FockSpace s2 = FockSpace::create(make_unit_grid(2), 16);
  for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
    const StqSpec spec = exact(kind, real_spectrum(s2.grid(), {0.3, -0.4}));
    for (std::size_t i = 0; i < 2; ++i) EXPECT_LT(eigen_residual(s2, spec, i), 1e-10);
  }
  EXPECT_THROW(eigen_residual(s2, regular(QuadKind::q, real_spectrum(s2.grid(), {0.3, -0.4}), 0.5), 0),
               DomainError);
}

TEST(StqOverlap, ClosedFormExamples) {
  const GridRef g2 = make_unit_grid(2);
  const StqSpec q = exact(QuadKind::q, real_spectrum(g2, {0.5, 0.0}));
  const StqSpec p = exact(QuadKind::p, real_spectrum(g2, {0.0, 0.7}));
  EXPECT_LE(std::abs(stq_overlap_closed(q, p) - Complex(1.0, 0.0)), 1e-14);

  const StqSpec p2 = exact(QuadKind::p, real_spectrum(g2, {0.8, -0.3}));
  EXPECT_LE(std::abs(stq_overlap_closed(q, p2) - std::exp(Complex(0.0, 0.4))), 1e-14);

  const StqSpec r = regular(QuadKind::q, real_spectrum(g2, {0.3, -0.2}), 0.1);
  EXPECT_NEAR(stq_overlap_closed(r, r).real(), 10.0, 1e-12);

  EXPECT_THROW(stq_overlap_closed(q, q), DomainError);
  EXPECT_THROW(stq_overlap_closed(q, r), DomainError);
}

TEST(StqOverlap, RegularizedKernelIsExactAtEveryEpsilon) {
  // Different ε on the two sides goes through the general Gaussian formula;
  // equal ε must agree with the kernel form.
  const GridRef g = make_unit_grid(2);
  for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
    for (double eps : {0.1, 0.3, 1.0}) {
      const StqSpec a = regular(kind, real_spectrum(g, {0.3, -0.2}), eps);
      const StqSpec b = regular(kind, real_spectrum(g, {-0.1, 0.4}), eps);
      const double d = 0.16 + 0.36;
      EXPECT_NEAR(stq_overlap_closed(a, b).real(), regularized_delta_kernel(eps, d, 1.0), 1e-12);
      const StqSpec b2 = regular(kind, real_spectrum(g, {-0.1, 0.4}), eps * (1.0 - 1e-12));
      EXPECT_NEAR(std::abs(stq_overlap_closed(a, b2)), regularized_delta_kernel(eps, d, 1.0), 1e-8);
    }
  }
}

TEST(StqOverlap, RegularizedMatchesTruncatedInnerProduct) {
  const FockSpace s = FockSpace::create(make_unit_grid(1), 300);
  for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
    for (double eps : {0.1, 0.25, 0.5, 1.0}) {
      const StqSpec a = regular(kind, real_spectrum(s.grid(), {0.4}), eps);
      const StqSpec b = regular(kind, real_spectrum(s.grid(), {-0.3}), eps);
      const Complex num = inner(stq_state(s, a), stq_state(s, b));
      EXPECT_LE(std::abs(num - stq_overlap_closed(a, b)), 1e-8) << to_string(kind) << eps;
    }
  }
}

TEST(StqOverlap, DeltaFamilyBehaviour) {
  const GridRef g = make_unit_grid(1);
  double prev_far = INFINITY;
  double prev_same = 0.0;
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    const StqSpec a = regular(QuadKind::q, real_spectrum(g, {0.2}), eps);
    const StqSpec b = regular(QuadKind::q, real_spectrum(g, {1.2}), eps);
    const double far = std::abs(stq_overlap_closed(a, b));
    const double same = std::abs(stq_overlap_closed(a, a));
    EXPECT_LT(far, prev_far);
    EXPECT_GT(same, prev_same);
    EXPECT_NEAR(same, std::pow(eps, -0.5), 1e-12);
    prev_far = far;
    prev_same = same;
  }
}

TEST(StqOverlap, MixedKindTruncatedInnerProductApproaches) {
  const GridRef g = make_unit_grid(1);
  const StqSpec q = exact(QuadKind::q, real_spectrum(g, {0.5}));
  const StqSpec p = exact(QuadKind::p, real_spectrum(g, {0.6}));
  const Complex closed = stq_overlap_closed(q, p);
  double prev = INFINITY;
  for (int n : {12, 16, 20, 40, 80}) {
    const FockSpace s = FockSpace::create(g, n);
    const double err = std::abs(inner(stq_state(s, q), stq_state(s, p)) - closed);
    EXPECT_LT(err, prev) << n;
    prev = err;
  }
}

TEST(StqCoherentOverlap, Examples) {
  const GridRef g = make_unit_grid(1);
  const SpectralVector f = folded_spectrum(g, CVector::Ones(1));
  EXPECT_NEAR(std::abs(stq_coherent_overlap_closed(exact(QuadKind::q, real_spectrum(g, {0.0})), {0.0, f}) -
                       std::pow(2.0, 0.25)),
              0.0, 1e-15);
  const Complex v = stq_coherent_overlap_closed(exact(QuadKind::q, real_spectrum(g, {1.0})), {1.0 / std::sqrt(2.0), f});
  EXPECT_NEAR(std::abs(v - std::pow(2.0, 0.25)), 0.0, 1e-15);
  const Complex w = stq_coherent_overlap_closed(exact(QuadKind::q, real_spectrum(g, {0.3})), {-0.6, f});
  EXPECT_GT(w.real(), 0.0);
  EXPECT_EQ(w.imag(), 0.0);
}

TEST(StqCoherentOverlap, MatchesTruncatedInnerProduct) {
  const FockSpace s = FockSpace::create(make_unit_grid(2), 25);
  CVector c(2);
  c << 0.6, Complex(0.0, 0.8);
  const CoherentSpec coh{Complex(0.5, 0.3), folded_spectrum(s.grid(), c)};
  const StateVector alpha = coherent_state(s, coh, CoherentConstruction::expansion);
  for (QuadKind kind : {QuadKind::q, QuadKind::p}) {
    for (std::optional<double> eps : {std::optional<double>{}, std::optional<double>{0.2}}) {
      const StqSpec spec{kind, real_spectrum(s.grid(), {0.3, -0.5}), eps};
      const Complex num = inner(stq_state(s, spec), alpha);
      EXPECT_LE(std::abs(num - stq_coherent_overlap_closed(spec, coh)), 1e-7) << to_string(kind);
    }
  }
}

TEST(StqProperty, AntiVacuum) {
  for (std::size_t m : {1u, 2u, 3u}) {
    const FockSpace s = FockSpace::create(make_unit_grid(m), 10);
    EXPECT_LE(anti_vacuum_error(s), 1e-12);
  }
}

TEST(StqProperty, ProjectionOntoFixedSpectrumSubspace) {
  const FockSpace s = FockSpace::create(make_unit_grid(2), 12);
  const double r = 1.0 / std::sqrt(2.0);
  const double q = 0.6;
  CVector fc(2);
  fc << r, r;
  const SpectralVector f = folded_spectrum(s.grid(), fc);
  const StateVector full = stq_state(s, exact(QuadKind::q, real_spectrum(s.grid(), {q * r, q * r})));
  const ProjectorResult p = subspace_projector(s, f, {-12.0, 12.0, 0.01});
  const StateVector projected = p.projector.apply(full);
  const StateVector fs = fs_quad_state(s, q, f, QuadKind::q);

  const auto n = static_cast<Eigen::Index>(s.dim());
  const Complex ratio = projected.amps[0] / fs.amps[0];
  EXPECT_NEAR(ratio.real(), std::pow(2.0, 0.5) * std::pow(kPi, 0.25), 1e-9);
  EXPECT_LE((projected.amps.head(n) - ratio * fs.amps.head(n)).cwiseAbs().maxCoeff(), 1e-8);
}
