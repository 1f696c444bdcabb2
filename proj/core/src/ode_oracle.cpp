#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/LU>
#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "stq/bch.hpp"

namespace stq {

namespace {

// Coordinates of the 8-dimensional algebra: index 0 is 𝟙, index 1 + g is
// generator g.
using Vec8 = Eigen::Matrix<Complex, 8, 1>;
using Mat8 = Eigen::Matrix<Complex, 8, 8>;

Vec8 to_vec(const LieElement& x) {
  Vec8 v;
  v[0] = x.scalar;
  for (std::size_t i = 0; i < kGenCount; ++i) v[static_cast<Eigen::Index>(i) + 1] = x.coeff[i];
  return v;
}

Vec8 unit(Gen g) {
  Vec8 v = Vec8::Zero();
  v[static_cast<Eigen::Index>(g) + 1] = 1.0;
  return v;
}

// ad_g: column j holds [g, e_j].
Mat8 ad_matrix(Gen g, const LieScalars& s) {
  Mat8 m = Mat8::Zero();
  for (Gen b : kAllGens) m.col(static_cast<Eigen::Index>(b) + 1) = to_vec(commutator(g, b, s));
  return m;
}

struct Factor {
  Gen gen;
  Mat8 ad;
};

// Σ_m c_m(t) Ad_{prefix_m}(e_{g_m}) for a product Π exp(c_m g_m), as the
// columns of a matrix.
Mat8 prefixed_columns(const std::vector<Factor>& factors, const std::vector<Complex>& coeffs) {
  Mat8 out = Mat8::Zero();
  Mat8 ad_prefix = Mat8::Identity();
  out.col(0) = Vec8::Unit(0);
  for (std::size_t m = 0; m < factors.size(); ++m) {
    out.col(static_cast<Eigen::Index>(m) + 1) = ad_prefix * unit(factors[m].gen);
    ad_prefix = ad_prefix * (coeffs[m] * factors[m].ad).exp();
  }
  return out;
}

void check_path(const std::array<Complex, 4>& k, double t_final) {
  // min over s = t² ∈ [0, t_final²] of |1 − c s|.
  const Complex c = k[1] * k[3];
  const double smax = t_final * t_final;
  double s_star = std::norm(c) > 0.0 ? c.real() / std::norm(c) : 0.0;
  s_star = std::clamp(s_star, 0.0, smax);
  for (double s : {s_star, smax}) {
    if (std::abs(1.0 - c * s) < kSingularityGuard) {
      const Complex ts = std::sqrt(1.0 / c);
      std::ostringstream os;
      os << "ode_oracle_h: integration path meets 1 - k2 k4 t^2 = 0 (nearest singular t = " << ts << ")";
      throw SingularityError(os.str());
    }
  }
}

}  // namespace

NormalOrderSolution ode_oracle_h(const std::array<Complex, 4>& k, double t_final, const LieScalars& s,
                                 double tolerance) {
  check_path(k, t_final);
  NormalOrderSolution sol;
  sol.k = k;
  sol.t = t_final;
  sol.scalars = s;
  if (t_final == 0.0) return sol;

  const std::vector<Factor> lhs{{Gen::A_Q, ad_matrix(Gen::A_Q, s)},
                                {Gen::A_R, ad_matrix(Gen::A_R, s)},
                                {Gen::A_P_dag, ad_matrix(Gen::A_P_dag, s)},
                                {Gen::A_R_dag, ad_matrix(Gen::A_R_dag, s)}};
  const std::vector<Gen> rhs_gens{Gen::A_Q_dag, Gen::A_P_dag, Gen::A_R_dag, Gen::S,
                                  Gen::A_Q,     Gen::A_P,     Gen::A_R};
  std::vector<Factor> rhs;
  for (Gen g : rhs_gens) rhs.push_back({g, ad_matrix(g, s)});

  // Right logarithmic derivative of both sides:
  //   Σ_m k_m Ad_{prefix_m}(X_m) = h0' 𝟙 + Σ_j h_j' Ad_{prefix_j}(Y_j).
  using State = std::vector<Complex>;
  auto system = [&](const State& h, State& dh, double t) {
    std::vector<Complex> lc(4);
    for (std::size_t m = 0; m < 4; ++m) lc[m] = t * k[m];
    const Mat8 lcols = prefixed_columns(lhs, lc);
    Vec8 target = Vec8::Zero();
    for (std::size_t m = 0; m < 4; ++m) target += k[m] * lcols.col(static_cast<Eigen::Index>(m) + 1);

    const std::vector<Complex> rc(h.begin() + 1, h.end());
    const Mat8 rcols = prefixed_columns(rhs, rc);
    const Vec8 d = rcols.partialPivLu().solve(target);
    for (Eigen::Index i = 0; i < 8; ++i) dh[static_cast<std::size_t>(i)] = d[i];
  };

  namespace odeint = boost::numeric::odeint;
  State h(8, Complex{});
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(tolerance, tolerance);
  odeint::integrate_adaptive(stepper, system, h, 0.0, t_final, t_final / 64.0);
  for (std::size_t i = 0; i < 8; ++i) {
    if (!std::isfinite(h[i].real()) || !std::isfinite(h[i].imag()))
      throw ConvergenceError("ode_oracle_h: integration produced a non-finite value");
    sol.h[i] = h[i];
  }
  return sol;
}

}  // namespace stq
