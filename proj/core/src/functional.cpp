#include "stq/functional.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stq/parallel.hpp"
#include "stq/rng.hpp"
#include "stq/spatiotemporal.hpp"

namespace stq {

namespace {

CVector complex_normals(SampleStream& s, std::size_t m) {
  CVector v(static_cast<Eigen::Index>(m));
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double x = s.normal();
    const double y = s.normal();
    v[i] = Complex(x * r, y * r);
  }
  return v;
}

struct MatrixAccum {
  CMatrix sum;
  RMatrix sq_re;
  RMatrix sq_im;

  void init(Eigen::Index n) {
    sum = CMatrix::Zero(n, n);
    sq_re = RMatrix::Zero(n, n);
    sq_im = RMatrix::Zero(n, n);
  }
  void add(const CMatrix& x) {
    sum += x;
    sq_re += x.real().cwiseAbs2();
    sq_im += x.imag().cwiseAbs2();
  }
  void merge(const MatrixAccum& o) {
    sum += o.sum;
    sq_re += o.sq_re;
    sq_im += o.sq_im;
  }
};

// Π z_i^{k_i} / √(Π k_i!) over the occupations of the leading block.
CVector monomials(const FockSpace& space, std::size_t block, const CVector& z) {
  CVector u(static_cast<Eigen::Index>(block));
  for (std::size_t idx = 0; idx < block; ++idx) {
    const Occupation& occ = space.occupation(idx);
    Complex a{1.0, 0.0};
    double fact = 1.0;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      for (int c = 1; c <= occ[i]; ++c) {
        a *= z[static_cast<Eigen::Index>(i)];
        fact *= c;
      }
    }
    u[static_cast<Eigen::Index>(idx)] = a / std::sqrt(fact);
  }
  return u;
}

// Amplitudes of |n_F> = (a_F†)^n|vac>/√n! on the leading block: √n! times
// the monomial on sector n, zero elsewhere.
CVector sector_state(const FockSpace& space, std::size_t block, const CVector& mono, int n) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(block));
  if (space.sector_begin(n) >= block) return v;
  const std::size_t end = std::min(block, space.sector_begin(n + 1));
  const double s = std::sqrt(std::tgamma(n + 1.0));
  for (std::size_t i = space.sector_begin(n); i < end; ++i)
    v[static_cast<Eigen::Index>(i)] = s * mono[static_cast<Eigen::Index>(i)];
  return v;
}

template <class SampleFn>
ResolutionEstimate accumulate(const EnsembleConfig& cfg, std::size_t block, SampleFn contribution) {
  if (cfg.sample_count < 2) throw DomainError("Monte-Carlo estimate needs at least two samples");
  const auto b = static_cast<Eigen::Index>(block);
  const auto parts = run_chunks<MatrixAccum>(cfg.sample_count, cfg.chunk, cfg.workers,
                                             [&](std::size_t begin, std::size_t end) {
                                               MatrixAccum acc;
                                               acc.init(b);
                                               for (std::size_t i = begin; i < end; ++i) acc.add(contribution(i));
                                               return acc;
                                             });
  MatrixAccum total;
  total.init(b);
  for (const auto& p : parts) total.merge(p);

  const double n = static_cast<double>(cfg.sample_count);
  ResolutionEstimate out;
  out.samples = cfg.sample_count;
  out.estimate = total.sum / n;
  const RMatrix var_re = (total.sq_re / n - out.estimate.real().cwiseAbs2()) * (n / (n - 1.0));
  const RMatrix var_im = (total.sq_im / n - out.estimate.imag().cwiseAbs2()) * (n / (n - 1.0));
  out.std_error = ((var_re + var_im).cwiseMax(0.0) / n).cwiseSqrt();
  return out;
}

void finish(ResolutionEstimate& r) {
  r.max_deviation = (r.estimate - r.target).cwiseAbs().maxCoeff();
  r.max_std_error = r.std_error.maxCoeff();
}

double default_variance(const ResolutionOptions& o) {
  return o.proposal_variance > 0.0 ? o.proposal_variance : std::max(1.0, 0.5 * o.block);
}

}  // namespace

SpectralVector sample_spectrum(const EnsembleConfig& cfg, std::size_t sample_index) {
  if (!cfg.grid) throw DomainError("sample_spectrum: ensemble has no grid");
  if (sample_index >= cfg.sample_count) throw DomainError("sample_spectrum: index beyond sample_count");
  SampleStream s(cfg.seed, sample_index);
  CVector v = complex_normals(s, cfg.grid->size());
  switch (cfg.kind) {
    case EnsembleKind::gaussian_spectrum: break;
    case EnsembleKind::sphere_spectrum: v /= v.norm(); break;
    case EnsembleKind::coherent_plane: v *= std::sqrt(cfg.variance); break;
  }
  return {cfg.grid, std::move(v)};
}

Complex wick_moment(const MomentSpec& spec) {
  std::vector<std::size_t> plain;
  std::vector<std::size_t> conj;
  for (const auto& f : spec) (f.conjugated ? conj : plain).push_back(f.mode);
  if (plain.size() != conj.size()) return {};
  // Permanent of δ(plain_k, conj_σ(k)) over all bijections σ.
  std::vector<std::size_t> perm(conj.size());
  std::iota(perm.begin(), perm.end(), 0);
  double count = 0.0;
  do {
    bool match = true;
    for (std::size_t k = 0; k < plain.size() && match; ++k) match = plain[k] == conj[perm[k]];
    if (match) count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {count, 0.0};
}

McEstimate mc_wick_moment(const EnsembleConfig& cfg, const MomentSpec& spec) {
  if (cfg.sample_count < 2) throw DomainError("mc_wick_moment: needs at least two samples");
  for (const auto& f : spec)
    if (f.mode >= cfg.grid->size()) throw DomainError("mc_wick_moment: mode out of range");
  struct Part {
    Complex sum{};
    double sq_re = 0.0;
    double sq_im = 0.0;
  };
  const auto parts = run_chunks<Part>(cfg.sample_count, cfg.chunk, cfg.workers,
                                      [&](std::size_t begin, std::size_t end) {
                                        Part p;
                                        for (std::size_t i = begin; i < end; ++i) {
                                          const SpectralVector f = sample_spectrum(cfg, i);
                                          Complex x{1.0, 0.0};
                                          for (const auto& m : spec) {
                                            const Complex c = f.coeffs[static_cast<Eigen::Index>(m.mode)];
                                            x *= m.conjugated ? std::conj(c) : c;
                                          }
                                          p.sum += x;
                                          p.sq_re += x.real() * x.real();
                                          p.sq_im += x.imag() * x.imag();
                                        }
                                        return p;
                                      });
  Part total;
  for (const auto& p : parts) {
    total.sum += p.sum;
    total.sq_re += p.sq_re;
    total.sq_im += p.sq_im;
  }
  const double n = static_cast<double>(cfg.sample_count);
  McEstimate out;
  out.samples = cfg.sample_count;
  out.value = total.sum / n;
  const double var = (total.sq_re / n - out.value.real() * out.value.real() + total.sq_im / n -
                      out.value.imag() * out.value.imag()) *
                     (n / (n - 1.0));
  out.std_error = std::sqrt(std::max(var, 0.0) / n);
  return out;
}

ResolutionEstimate mc_resolve_identity(const FockSpace& space, const EnsembleConfig& cfg, ResolutionFamily family,
                                       const ResolutionOptions& options) {
  require_same_grid(space.grid(), cfg.grid, "mc_resolve_identity");
  if (options.block < 0 || options.block > space.cutoff())
    throw DomainError("mc_resolve_identity: block must lie in [0, cutoff]");
  const std::size_t block = space.block_dim(options.block);
  const auto b = static_cast<Eigen::Index>(block);
  const std::size_t m = space.modes();
  const double md = static_cast<double>(m);
  ResolutionEstimate out;

  switch (family) {
    case ResolutionFamily::fock_sectors: {
      out = accumulate(cfg, block, [&](std::size_t i) {
        SampleStream s(cfg.seed, i);
        const CVector f = complex_normals(s, m);
        const CVector mono = monomials(space, block, f);
        CMatrix x = CMatrix::Zero(b, b);
        for (int n = 0; n <= options.block; ++n) {
          const CVector v = sector_state(space, block, mono, n);
          x += v * v.adjoint() / std::tgamma(n + 1.0);
        }
        return x;
      });
      out.target = CMatrix::Identity(b, b);
      break;
    }
    case ResolutionFamily::coherent: {
      const double var = default_variance(options);
      const double lambda = md * var;
      out = accumulate(cfg, block, [&](std::size_t i) {
        SampleStream s(cfg.seed, i);
        CVector alpha;
        double w = 0.0;
        if (!options.two_step) {
          alpha = complex_normals(s, m) * std::sqrt(var);
          w = std::pow(var, md) * std::exp(alpha.squaredNorm() / var);
        } else {
          // Radial complex amplitude times a uniform unit spectrum.
          const CVector c = complex_normals(s, 1) * std::sqrt(lambda);
          CVector dir = complex_normals(s, m);
          dir /= dir.norm();
          alpha = c[0] * dir;
          const double r2 = std::norm(c[0]);
          w = lambda * std::pow(r2, md - 1.0) * std::exp(r2 / lambda) / std::tgamma(md);
        }
        const CVector u = monomials(space, block, alpha) * std::exp(-0.5 * alpha.squaredNorm());
        return CMatrix(w * u * u.adjoint());
      });
      out.target = CMatrix::Identity(b, b);
      break;
    }
    case ResolutionFamily::stq_quadrature: {
      const double var = default_variance(options);
      out = accumulate(cfg, block, [&](std::size_t i) {
        SampleStream s(cfg.seed, i);
        RVector q(static_cast<Eigen::Index>(m));
        for (Eigen::Index k = 0; k < q.size(); ++k) q[k] = std::sqrt(var) * s.normal();
        const double w = std::pow(2.0 * kPi * var, 0.5 * md) * std::exp(q.squaredNorm() / (2.0 * var));
        std::vector<std::vector<Complex>> amps;
        amps.reserve(m);
        for (Eigen::Index k = 0; k < q.size(); ++k)
          amps.push_back(stq_mode_amplitudes(QuadKind::q, q[k], options.block));
        CVector u(b);
        for (std::size_t idx = 0; idx < block; ++idx) {
          const Occupation& occ = space.occupation(idx);
          Complex a{1.0, 0.0};
          for (std::size_t k = 0; k < m; ++k) a *= amps[k][occ[k]];
          u[static_cast<Eigen::Index>(idx)] = a;
        }
        return CMatrix(w * u * u.adjoint());
      });
      out.kappa = out.estimate.diagonal().real().mean();
      out.target = out.kappa * CMatrix::Identity(b, b);
      break;
    }
  }
  finish(out);
  return out;
}

ResolutionEstimate off_diagonal_sector_check(const FockSpace& space, const EnsembleConfig& cfg, int m, int n) {
  require_same_grid(space.grid(), cfg.grid, "off_diagonal_sector_check");
  if (m < 0 || n < 0 || std::max(m, n) > space.cutoff())
    throw DomainError("off_diagonal_sector_check: sectors must lie in [0, cutoff]");
  const std::size_t block = space.block_dim(std::max(m, n));
  const auto b = static_cast<Eigen::Index>(block);
  const std::size_t modes = space.modes();
  ResolutionEstimate out = accumulate(cfg, block, [&](std::size_t i) {
    SampleStream s(cfg.seed, i);
    const CVector f = complex_normals(s, modes);
    const CVector mono = monomials(space, block, f);
    return CMatrix(sector_state(space, block, mono, m) * sector_state(space, block, mono, n).adjoint());
  });
  out.target = CMatrix::Zero(b, b);
  if (m == n) {
    const double nf = std::tgamma(n + 1.0);
    for (std::size_t i = space.sector_begin(n); i < space.sector_begin(n + 1); ++i)
      out.target(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = nf;
  }
  finish(out);
  return out;
}

}  // namespace stq
