#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "stq/bch.hpp"

using namespace stq;

namespace {

const LieScalars kScalars{0.7, 1.3, Complex(0.4, 0.0)};

bool equal(const LieElement& a, const LieElement& b, double tol = 0.0) { return (a - b).max_abs() <= tol; }

std::array<Complex, 4> random_k(std::mt19937& rng) {
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  std::array<Complex, 4> k;
  for (auto& x : k) x = std::polar(ud(rng), 2.0 * kPi * ud(rng));
  return k;
}

SparseOperator realize(const FockSpace& s, const LieElement& x, const WordVectors& v) {
  SparseOperator op = SparseOperator::identity(s) * x.scalar;
  for (Gen g : kAllGens)
    if (x[g] != Complex{}) op = op + generator_operator(s, g, v) * x[g];
  return op;
}

}  // namespace

TEST(BchTable, Examples) {
  EXPECT_TRUE(equal(commutator(Gen::A_Q, Gen::A_P, kScalars), LieElement{}));
  EXPECT_TRUE(equal(commutator(Gen::A_R, Gen::A_R_dag, kScalars), LieElement::of(Gen::S)));
  EXPECT_TRUE(equal(commutator(Gen::A_R, Gen::A_Q_dag, kScalars), LieElement::of(Gen::A_Q)));
  EXPECT_TRUE(equal(commutator(Gen::A_Q, Gen::S, kScalars), LieElement::of(Gen::A_Q)));
  EXPECT_TRUE(equal(commutator(Gen::A_R, Gen::S, kScalars), LieElement::of(Gen::A_R, 2.0)));
  EXPECT_TRUE(equal(commutator(Gen::A_Q, Gen::A_P_dag, kScalars), LieElement::identity(2.0 * kScalars.mu)));
  EXPECT_TRUE(equal(commutator(Gen::A_Q, Gen::A_P_dag, {1.0, 1.0, 0.0}), LieElement{}));
  EXPECT_TRUE(equal(commutator(Gen::S, Gen::A_R_dag, kScalars), LieElement::of(Gen::A_R_dag, 2.0)));
  EXPECT_TRUE(equal(commutator(Gen::A_Q_dag, Gen::A_Q, kScalars), LieElement::identity(-2.0 * kScalars.q2)));
  EXPECT_EQ(adjoint(Gen::A_P), Gen::A_P_dag);
  EXPECT_EQ(adjoint(Gen::S), Gen::S);
}

TEST(BchTable, Antisymmetry) {
  for (Gen a : kAllGens)
    for (Gen b : kAllGens)
      EXPECT_TRUE(equal(commutator(a, b, kScalars), commutator(b, a, kScalars) * Complex(-1.0, 0.0)));
}

TEST(BchTable, AdjointClosure) {
  // [a, b]† = [b†, a†].
  for (Gen a : kAllGens)
    for (Gen b : kAllGens)
      EXPECT_TRUE(equal(commutator(a, b, kScalars), adjoint(commutator(adjoint(b), adjoint(a), kScalars)), 1e-15))
          << to_string(a) << "," << to_string(b);
}

TEST(BchTable, JacobiIdentity) {
  for (Gen a : kAllGens)
    for (Gen b : kAllGens)
      for (Gen c : kAllGens) {
        const LieElement A = LieElement::of(a), B = LieElement::of(b), C = LieElement::of(c);
        const LieElement j = bracket(A, bracket(B, C, kScalars), kScalars) +
                             bracket(B, bracket(C, A, kScalars), kScalars) +
                             bracket(C, bracket(A, B, kScalars), kScalars);
        EXPECT_EQ(j.max_abs(), 0.0) << to_string(a) << "," << to_string(b) << "," << to_string(c);
      }
}

TEST(BchTable, MatchesOperatorRealization) {
  const FockSpace s = FockSpace::create(make_unit_grid(2), 8);
  WordVectors v{RVector(2), RVector(2)};
  v.q << 0.3, -0.4;
  v.p << 0.5, 0.2;
  const LieScalars sc = v.scalars();
  for (Gen a : kAllGens)
    for (Gen b : kAllGens) {
      const CMatrix lhs =
          commutator(generator_operator(s, a, v), generator_operator(s, b, v)).dense();
      const CMatrix rhs = realize(s, commutator(a, b, sc), v).dense();
      EXPECT_LE(block_max_abs(s, lhs - rhs, s.cutoff() - 2), 1e-13) << to_string(a) << "," << to_string(b);
    }
}

TEST(BchOperators, SymmetrizedSMatchesNumberPlusOmega) {
  const FockSpace s = FockSpace::create(make_unit_grid(2), 6);
  const WordVectors v{RVector::Zero(2), RVector::Zero(2)};
  const CMatrix d = symmetrized_s(s).dense() - generator_operator(s, Gen::S, v).dense();
  EXPECT_LE(block_max_abs(s, d, s.cutoff() - 1), 1e-15);
  // The b b† half loses one quantum in the top sector.
  EXPECT_GT(d.cwiseAbs().maxCoeff(), 0.1);
}

TEST(NormalOrder, ZeroAtTZero) {
  const NormalOrderSolution sol = normal_order_h({0.3, -0.7, Complex(0, 1), 0.2}, 0.0, kScalars);
  for (const Complex& h : sol.h) EXPECT_EQ(h, Complex{});
}

TEST(NormalOrder, SpecialCases) {
  const NormalOrderSolution a = normal_order_h({1.0, -1.0, kI, 1.0}, 1.0, kScalars);
  EXPECT_NEAR(std::abs(a.h[4] + std::log(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a.h[2] - Complex(0.0, 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a.h[3] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a.h[1] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a.h[5] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a.h[6] + Complex(0.0, 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a.h[7] + 0.5), 0.0, 1e-15);
  const Complex h0 = 0.5 * (kScalars.q2 + kScalars.p2) + kI * kScalars.mu;
  EXPECT_NEAR(std::abs(a.h[0] - h0), 0.0, 1e-15);

  for (double t : {0.2, 0.5, 0.9}) {
    const NormalOrderSolution b = normal_order_h({1.0, -1.0, 1.0, -1.0}, t, kScalars);
    const double f = t / (1.0 - t * t);
    EXPECT_NEAR(std::abs(b.h[2] - f), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(b.h[3] + f), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(b.h[5] - f), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(b.h[7] + f), 0.0, 1e-14);
  }
}

TEST(NormalOrder, SingularityRefused) {
  EXPECT_THROW(normal_order_h({1.0, -1.0, 1.0, -1.0}, 1.0, kScalars), SingularityError);
  EXPECT_THROW(ode_oracle_h({1.0, -1.0, 1.0, -1.0}, 1.2, kScalars), SingularityError);
}

TEST(OdeOracle, ZeroAtTZero) {
  const NormalOrderSolution sol = ode_oracle_h({0.3, -0.7, Complex(0, 1), 0.2}, 0.0, kScalars);
  for (const Complex& h : sol.h) EXPECT_EQ(h, Complex{});
}

TEST(OdeOracle, MatchesClosedForms) {
  auto check = [](const std::array<Complex, 4>& k, double t, double tol) {
    const NormalOrderSolution a = normal_order_h(k, t, kScalars);
    const NormalOrderSolution b = ode_oracle_h(k, t, kScalars);
    for (int i = 0; i < 8; ++i) EXPECT_LE(std::abs(a.h[i] - b.h[i]), tol) << "h" << i << " t=" << t;
  };
  check({1.0, -1.0, kI, 1.0}, 0.5, 1e-8);
  check({1.0, -1.0, 1.0, -1.0}, 0.9, 1e-8);
  check({1.0, -1.0, kI, 1.0}, 1.0, 1e-8);

  std::mt19937 rng(77);
  std::uniform_real_distribution<double> ut(-0.5, 0.5);
  for (int rep = 0; rep < 20; ++rep) check(random_k(rng), ut(rng), 1e-7);
}

TEST(WordVerification, IdentityAtTZero) {
  const FockSpace s = FockSpace::create(make_unit_grid(1), 16);
  const WordVectors v{RVector::Constant(1, 0.5), RVector::Constant(1, 0.3)};
  const std::array<Complex, 4> k{1.0, -1.0, kI, 1.0};
  const ExpWord lhs = ExpWord::anti_normal(k, 0.0);
  const ExpWord rhs = ExpWord::normal(normal_order_h(k, 0.0, v.scalars()));
  EXPECT_EQ(verify_word(s, lhs, rhs, v, 4), 0.0);
}

TEST(WordVerification, NormalOrderedWordMatches) {
  const FockSpace s = FockSpace::create(make_unit_grid(1), 16);
  const WordVectors v{RVector::Constant(1, 0.5), RVector::Constant(1, 0.3)};
  const std::array<Complex, 4> k{1.0, -1.0, kI, 1.0};
  for (double t : {0.1, 0.3, 0.4}) {
    const ExpWord lhs = ExpWord::anti_normal(k, t);
    const ExpWord rhs = ExpWord::normal(normal_order_h(k, t, v.scalars()));
    EXPECT_LE(verify_word(s, lhs, rhs, v, 1), 1e-6) << t;
  }
  EXPECT_THROW(verify_word(s, ExpWord{}, ExpWord{}, v, 13), DomainError);
}

TEST(WordVerification, VacuumExpectation) {
  const FockSpace s = FockSpace::create(make_unit_grid(2), 10);
  WordVectors v{RVector(2), RVector(2)};
  v.q << 0.3, -0.4;
  v.p << 0.5, 0.2;
  const LieScalars sc = v.scalars();
  const ExpWord w = ExpWord::normal(normal_order_h({1.0, -1.0, kI, 1.0}, 1.0, sc));
  const StateVector out = apply_word(s, w, v, StateVector::vacuum(s));
  const Complex expected = std::exp(0.5 * sc.q2 + 0.5 * sc.p2 + kI * sc.mu) * std::pow(2.0, -1.0);
  EXPECT_NEAR(std::abs(out.amps[0] - expected), 0.0, 1e-14);
}
