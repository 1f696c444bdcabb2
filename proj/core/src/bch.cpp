#include "stq/bch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stq {

namespace {

bool is_lowering(Gen g) { return g == Gen::A_Q || g == Gen::A_P || g == Gen::A_R; }
bool is_raising(Gen g) { return g == Gen::A_Q_dag || g == Gen::A_P_dag || g == Gen::A_R_dag; }

// [a, b] for a lowering generator a and raising generator b, or for S on
// either side. Returns false if the ordered pair is not covered directly.
bool table_entry(Gen a, Gen b, const LieScalars& s, LieElement& out) {
  out = LieElement{};
  if (is_lowering(a) && is_raising(b)) {
    switch (a) {
      case Gen::A_Q:
        if (b == Gen::A_Q_dag) out.scalar = 2.0 * s.q2;
        if (b == Gen::A_P_dag) out.scalar = 2.0 * s.mu;
        if (b == Gen::A_R_dag) out[Gen::A_Q_dag] = 1.0;
        return true;
      case Gen::A_P:
        if (b == Gen::A_Q_dag) out.scalar = 2.0 * std::conj(s.mu);
        if (b == Gen::A_P_dag) out.scalar = 2.0 * s.p2;
        if (b == Gen::A_R_dag) out[Gen::A_P_dag] = 1.0;
        return true;
      case Gen::A_R:
        if (b == Gen::A_Q_dag) out[Gen::A_Q] = 1.0;
        if (b == Gen::A_P_dag) out[Gen::A_P] = 1.0;
        if (b == Gen::A_R_dag) out[Gen::S] = 1.0;
        return true;
      default:
        return false;
    }
  }
  if (is_lowering(a) && b == Gen::S) {
    out[a] = a == Gen::A_R ? 2.0 : 1.0;
    return true;
  }
  if (a == Gen::S && is_raising(b)) {
    out[b] = b == Gen::A_R_dag ? 2.0 : 1.0;
    return true;
  }
  return false;
}

}  // namespace

const char* to_string(Gen g) {
  switch (g) {
    case Gen::A_Q: return "A_Q";
    case Gen::A_P: return "A_P";
    case Gen::A_R: return "A_R";
    case Gen::A_Q_dag: return "A_Q_dag";
    case Gen::A_P_dag: return "A_P_dag";
    case Gen::A_R_dag: return "A_R_dag";
    case Gen::S: return "S";
  }
  return "?";
}

Gen adjoint(Gen g) {
  switch (g) {
    case Gen::A_Q: return Gen::A_Q_dag;
    case Gen::A_P: return Gen::A_P_dag;
    case Gen::A_R: return Gen::A_R_dag;
    case Gen::A_Q_dag: return Gen::A_Q;
    case Gen::A_P_dag: return Gen::A_P;
    case Gen::A_R_dag: return Gen::A_R;
    case Gen::S: return Gen::S;
  }
  return g;
}

LieElement LieElement::of(Gen g, Complex c) {
  LieElement e;
  e[g] = c;
  return e;
}

LieElement LieElement::operator+(const LieElement& o) const {
  LieElement r = *this;
  r.scalar += o.scalar;
  for (std::size_t i = 0; i < kGenCount; ++i) r.coeff[i] += o.coeff[i];
  return r;
}

LieElement LieElement::operator-(const LieElement& o) const { return *this + o * Complex(-1.0, 0.0); }

LieElement LieElement::operator*(Complex s) const {
  LieElement r = *this;
  r.scalar *= s;
  for (auto& c : r.coeff) c *= s;
  return r;
}

double LieElement::max_abs() const {
  double m = std::abs(scalar);
  for (const auto& c : coeff) m = std::max(m, std::abs(c));
  return m;
}

std::string LieElement::str() const {
  std::ostringstream os;
  bool any = false;
  if (scalar != Complex{}) {
    os << scalar;
    any = true;
  }
  for (Gen g : kAllGens) {
    if ((*this)[g] == Complex{}) continue;
    if (any) os << " + ";
    os << (*this)[g] << "*" << to_string(g);
    any = true;
  }
  return any ? os.str() : "0";
}

LieElement commutator(Gen a, Gen b, const LieScalars& s) {
  LieElement out;
  if (table_entry(a, b, s, out)) return out;
  if (table_entry(b, a, s, out)) return out * Complex(-1.0, 0.0);
  // Lowering with lowering, raising with raising, S with S.
  return LieElement{};
}

LieElement bracket(const LieElement& a, const LieElement& b, const LieScalars& s) {
  LieElement out;
  for (Gen ga : kAllGens) {
    if (a[ga] == Complex{}) continue;
    for (Gen gb : kAllGens) {
      if (b[gb] == Complex{}) continue;
      out = out + commutator(ga, gb, s) * (a[ga] * b[gb]);
    }
  }
  return out;
}

LieElement adjoint(const LieElement& x) {
  LieElement out;
  out.scalar = std::conj(x.scalar);
  for (Gen g : kAllGens) out[adjoint(g)] = std::conj(x[g]);
  return out;
}

NormalOrderSolution normal_order_h(const std::array<Complex, 4>& k, double t, const LieScalars& s) {
  const Complex k1 = k[0], k2 = k[1], k3 = k[2], k4 = k[3];
  const Complex den = 1.0 - k2 * k4 * t * t;
  if (std::abs(den) < kSingularityGuard) {
    throw SingularityError("normal_order_h: 1 - k2 k4 t^2 vanishes at t = " + std::to_string(t));
  }
  NormalOrderSolution sol;
  sol.k = k;
  sol.t = t;
  sol.scalars = s;
  const double t2 = t * t;
  sol.h[0] = (k1 * k1 * k4 * s.q2 * t + k2 * k3 * k3 * s.p2 * t + 2.0 * k1 * k3 * s.mu) * t2 / den;
  sol.h[1] = k1 * k4 * t2 / den;
  sol.h[2] = k3 * t / den;
  sol.h[3] = k4 * t / den;
  sol.h[4] = -std::log(den);
  sol.h[5] = k1 * t / den;
  sol.h[6] = k2 * k3 * t2 / den;
  sol.h[7] = k2 * t / den;
  return sol;
}

ExpWord ExpWord::anti_normal(const std::array<Complex, 4>& k, double t) {
  ExpWord w;
  w.factors = {{t * k[0], Gen::A_Q}, {t * k[1], Gen::A_R}, {t * k[2], Gen::A_P_dag}, {t * k[3], Gen::A_R_dag}};
  return w;
}

ExpWord ExpWord::normal(const NormalOrderSolution& sol) {
  ExpWord w;
  w.log_scalar = sol.h[0];
  w.factors = {{sol.h[1], Gen::A_Q_dag}, {sol.h[2], Gen::A_P_dag}, {sol.h[3], Gen::A_R_dag},
               {sol.h[4], Gen::S},       {sol.h[5], Gen::A_Q},     {sol.h[6], Gen::A_P},
               {sol.h[7], Gen::A_R}};
  return w;
}

LieScalars WordVectors::scalars() const {
  if (q.size() != p.size()) throw DomainError("WordVectors: q and p lengths differ");
  return {q.squaredNorm(), p.squaredNorm(), Complex(q.dot(p), 0.0)};
}

SparseOperator generator_operator(const FockSpace& space, Gen g, const WordVectors& v) {
  const auto m = static_cast<Eigen::Index>(space.modes());
  if (v.q.size() != m || v.p.size() != m) throw DomainError("generator_operator: vector length mismatch");
  if (g == Gen::S) {
    const SparseOperator n = number_operator(space);
    return n + SparseOperator::identity(space) * Complex(space.grid()->zero_point_constant(), 0.0);
  }
  const Gen low = is_lowering(g) ? g : adjoint(g);
  SparseOperator op = SparseOperator::zero(space);
  for (Eigen::Index i = 0; i < m; ++i) {
    const SparseOperator b = ladder(space, static_cast<std::size_t>(i)).annihilator;
    switch (low) {
      case Gen::A_Q: op = op + b * Complex(std::sqrt(2.0) * v.q[i], 0.0); break;
      case Gen::A_P: op = op + b * Complex(std::sqrt(2.0) * v.p[i], 0.0); break;
      default: op = op + (b * b) * Complex(0.5, 0.0); break;
    }
  }
  return is_lowering(g) ? op : op.adjoint();
}

SparseOperator symmetrized_s(const FockSpace& space) {
  SparseOperator s = SparseOperator::zero(space);
  for (std::size_t i = 0; i < space.modes(); ++i) {
    const LadderPair b = ladder(space, i);
    s = s + (b.creator * b.annihilator + b.annihilator * b.creator) * Complex(0.5, 0.0);
  }
  return s;
}

StateVector apply_word(const FockSpace& space, const ExpWord& word, const WordVectors& v,
                       const StateVector& state) {
  StateVector x = state;
  const double omega = space.grid()->zero_point_constant();
  for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
    if (it->coeff == Complex{}) continue;
    if (it->gen == Gen::S) {
      for (std::size_t r = 0; r < space.dim(); ++r)
        x.amps[static_cast<Eigen::Index>(r)] *= std::exp(it->coeff * (space.total(r) + omega));
      continue;
    }
    x = apply_exponential(generator_operator(space, it->gen, v) * it->coeff, x);
  }
  x.amps *= std::exp(word.log_scalar);
  return x;
}

double verify_word(const FockSpace& space, const ExpWord& lhs, const ExpWord& rhs, const WordVectors& v,
                   int block_cut) {
  if (block_cut < 0 || block_cut > space.cutoff() - 4)
    throw DomainError("verify_word: block_cut must lie in [0, cutoff - 4]");
  const auto block = static_cast<Eigen::Index>(space.block_dim(block_cut));
  double worst = 0.0;
  StateVector e = StateVector::zero(space);
  for (Eigen::Index c = 0; c < block; ++c) {
    e.amps.setZero();
    e.amps[c] = 1.0;
    const StateVector a = apply_word(space, lhs, v, e);
    const StateVector b = apply_word(space, rhs, v, e);
    worst = std::max(worst, (a.amps.head(block) - b.amps.head(block)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace stq
