#include "stq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace stq {

struct FockSpace::Impl {
  GridRef grid;
  int cutoff = 0;
  std::vector<Occupation> basis;
  std::vector<int> totals;
  std::vector<std::size_t> sector_offsets;  // size cutoff + 2
  std::map<Occupation, std::size_t> index;
};

namespace {

// Appends every occupation of `modes` modes with total `n`, descending lex.
void enumerate_sector(std::size_t modes, int n, Occupation& prefix, std::vector<Occupation>& out) {
  if (prefix.size() + 1 == modes) {
    prefix.push_back(n);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = n; first >= 0; --first) {
    prefix.push_back(first);
    enumerate_sector(modes, n - first, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::size_t fock_dimension(std::size_t modes, int cutoff) {
  // binomial(modes + cutoff, modes) computed incrementally to stay exact.
  std::size_t result = 1;
  for (std::size_t i = 1; i <= modes; ++i) {
    result = result * (static_cast<std::size_t>(cutoff) + i) / i;
  }
  return result;
}

FockSpace FockSpace::create(GridRef grid, int cutoff) {
  if (!grid) throw DomainError("FockSpace: null grid");
  if (cutoff < 0) throw DomainError("FockSpace: cutoff must be non-negative");
  auto impl = std::make_shared<Impl>();
  impl->grid = std::move(grid);
  impl->cutoff = cutoff;
  const std::size_t modes = impl->grid->size();
  impl->basis.reserve(fock_dimension(modes, cutoff));
  impl->sector_offsets.push_back(0);
  for (int n = 0; n <= cutoff; ++n) {
    Occupation prefix;
    enumerate_sector(modes, n, prefix, impl->basis);
    impl->sector_offsets.push_back(impl->basis.size());
  }
  impl->totals.reserve(impl->basis.size());
  for (std::size_t i = 0; i < impl->basis.size(); ++i) {
    const Occupation& occ = impl->basis[i];
    impl->totals.push_back(std::accumulate(occ.begin(), occ.end(), 0));
    impl->index.emplace(occ, i);
  }
  return FockSpace(std::move(impl));
}

const GridRef& FockSpace::grid() const { return impl_->grid; }
std::size_t FockSpace::modes() const { return impl_->grid->size(); }
int FockSpace::cutoff() const { return impl_->cutoff; }
std::size_t FockSpace::dim() const { return impl_->basis.size(); }
const Occupation& FockSpace::occupation(std::size_t index) const { return impl_->basis.at(index); }
int FockSpace::total(std::size_t index) const { return impl_->totals.at(index); }

std::optional<std::size_t> FockSpace::index_of(const Occupation& occ) const {
  auto it = impl_->index.find(occ);
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t FockSpace::sector_begin(int n) const {
  if (n <= 0) return 0;
  if (n > impl_->cutoff) return dim();
  return impl_->sector_offsets[static_cast<std::size_t>(n)];
}

std::size_t FockSpace::block_dim(int max_total) const {
  if (max_total < 0) return 0;
  return sector_begin(max_total + 1);
}

bool FockSpace::same_as(const FockSpace& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->cutoff == other.impl_->cutoff && *impl_->grid == *other.impl_->grid;
}

namespace {

void require_same_space(const FockSpace& a, const FockSpace& b, const char* what) {
  if (!a.same_as(b)) throw DomainError(std::string(what) + ": Fock space mismatch");
}

}  // namespace

// --- StateVector -------------------------------------------------------------

StateVector StateVector::zero(const FockSpace& space) {
  return {space, CVector::Zero(static_cast<Eigen::Index>(space.dim()))};
}

StateVector StateVector::vacuum(const FockSpace& space) {
  StateVector v = zero(space);
  v.amps[0] = 1.0;
  return v;
}

StateVector StateVector::basis(const FockSpace& space, const Occupation& occ) {
  auto idx = space.index_of(occ);
  if (!idx) throw DomainError("StateVector::basis: occupation outside the truncated space");
  StateVector v = zero(space);
  v.amps[static_cast<Eigen::Index>(*idx)] = 1.0;
  return v;
}

double StateVector::block_norm(int max_total) const {
  return amps.head(static_cast<Eigen::Index>(space.block_dim(max_total))).norm();
}

StateVector StateVector::restricted(int max_total) const {
  StateVector out = *this;
  const auto keep = static_cast<Eigen::Index>(space.block_dim(max_total));
  out.amps.tail(out.amps.size() - keep).setZero();
  return out;
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_space(a.space, b.space, "inner");
  return a.amps.dot(b.amps);
}

// --- SparseOperator ----------------------------------------------------------

SparseOperator::SparseOperator(FockSpace space, Matrix m) : space_(std::move(space)), m_(std::move(m)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (m_.rows() != d || m_.cols() != d) throw DomainError("SparseOperator: shape mismatch");
  m_.makeCompressed();
}

SparseOperator SparseOperator::zero(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return {space, Matrix(d, d)};
}

SparseOperator SparseOperator::identity(const FockSpace& space) {
  return diagonal(space, CVector::Ones(static_cast<Eigen::Index>(space.dim())));
}

SparseOperator SparseOperator::diagonal(const FockSpace& space, const CVector& diag) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  if (diag.size() != d) throw DomainError("SparseOperator::diagonal: length mismatch");
  Matrix m(d, d);
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    if (diag[i] != Complex{}) trips.emplace_back(i, i, diag[i]);
  m.setFromTriplets(trips.begin(), trips.end());
  return {space, std::move(m)};
}

SparseOperator SparseOperator::adjoint() const { return {space_, Matrix(m_.adjoint())}; }

StateVector SparseOperator::apply(const StateVector& v) const {
  require_same_space(space_, v.space, "SparseOperator::apply");
  return {space_, m_ * v.amps};
}

SparseOperator SparseOperator::operator+(const SparseOperator& o) const {
  require_same_space(space_, o.space_, "operator+");
  return {space_, Matrix(m_ + o.m_)};
}

SparseOperator SparseOperator::operator-(const SparseOperator& o) const {
  require_same_space(space_, o.space_, "operator-");
  return {space_, Matrix(m_ - o.m_)};
}

SparseOperator SparseOperator::operator*(const SparseOperator& o) const {
  require_same_space(space_, o.space_, "operator*");
  return {space_, Matrix(m_ * o.m_)};
}

SparseOperator SparseOperator::operator*(Complex s) const { return {space_, Matrix(m_ * s)}; }

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) { return a * b - b * a; }

double block_max_abs(const FockSpace& space, const CMatrix& m, int max_total) {
  const auto k = static_cast<Eigen::Index>(space.block_dim(max_total));
  if (k == 0) return 0.0;
  return m.topLeftCorner(k, k).cwiseAbs().maxCoeff();
}

// --- ladder operators --------------------------------------------------------

LadderPair ladder(const FockSpace& space, std::size_t mode) {
  if (mode >= space.modes()) throw DomainError("ladder: mode index out of range");
  const auto d = static_cast<Eigen::Index>(space.dim());
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(space.dim());
  for (std::size_t col = 0; col < space.dim(); ++col) {
    Occupation occ = space.occupation(col);
    const int n = occ[mode];
    if (n == 0) continue;
    occ[mode] = n - 1;
    const std::size_t row = *space.index_of(occ);
    trips.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col),
                       Complex(std::sqrt(static_cast<double>(n)), 0.0));
  }
  SparseOperator::Matrix m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  SparseOperator annihilator(space, std::move(m));
  SparseOperator creator = annihilator.adjoint();
  return {std::move(annihilator), std::move(creator)};
}

SparseOperator number_operator(const FockSpace& space) {
  CVector diag(static_cast<Eigen::Index>(space.dim()));
  for (std::size_t i = 0; i < space.dim(); ++i)
    diag[static_cast<Eigen::Index>(i)] = static_cast<double>(space.total(i));
  return SparseOperator::diagonal(space, diag);
}

LadderPair smeared_ladder(const FockSpace& space, const SpectralVector& f) {
  require_same_grid(space.grid(), f.grid, "smeared_ladder");
  SparseOperator a = SparseOperator::zero(space);
  for (std::size_t i = 0; i < space.modes(); ++i) {
    const Complex c = std::conj(f.coeffs[static_cast<Eigen::Index>(i)]);
    if (c == Complex{}) continue;
    a = a + ladder(space, i).annihilator * c;
  }
  SparseOperator ad = a.adjoint();
  return {std::move(a), std::move(ad)};
}

StateVector raised_state(const FockSpace& space, int n, const SpectralVector& f) {
  if (n < 0) throw DomainError("fock_state: negative occupation");
  if (n > space.cutoff()) throw DomainError("fock_state: occupation exceeds the cutoff");
  const SparseOperator creator = smeared_ladder(space, f).creator;
  StateVector v = StateVector::vacuum(space);
  for (int k = 1; k <= n; ++k) {
    v = creator.apply(v);
    v.amps /= std::sqrt(static_cast<double>(k));
  }
  return v;
}

StateVector fock_state(const FockSpace& space, int n, const SpectralVector& f) {
  if (!f.is_normalized(1e-12)) throw DomainError("fock_state: spectrum is not normalized");
  return raised_state(space, n, f);
}

Complex fock_overlap_closed(int m, const SpectralVector& f, int n, const SpectralVector& g) {
  if (m < 0 || n < 0) throw DomainError("fock_overlap_closed: negative occupation");
  if (m != n) return {0.0, 0.0};
  return std::pow(inner_product(f, g), n);
}

double fixed_momentum_divergence_probe(const FockSpace& space, std::size_t mode, int n) {
  if (n > space.cutoff()) throw DomainError("divergence probe: n exceeds the cutoff");
  if (n < 0) throw DomainError("divergence probe: negative occupation");
  const double weight = (*space.grid())[mode].weight;
  const SparseOperator creator = ladder(space, mode).creator;
  StateVector v = StateVector::vacuum(space);
  for (int k = 1; k <= n; ++k) {
    // unfolded creation operator b† / √w, then the 1/√k! normalization
    v = creator.apply(v);
    v.amps /= std::sqrt(weight * static_cast<double>(k));
  }
  return v.amps.squaredNorm();
}

double discrete_incompleteness_probe(const FockSpace& space, std::size_t m, std::size_t n) {
  if (m == n) throw DomainError("incompleteness probe: modes must differ");
  if (m >= space.modes() || n >= space.modes())
    throw DomainError("incompleteness probe: mode index out of range");
  if (space.cutoff() < 2) throw DomainError("incompleteness probe: cutoff must be at least 2");
  Occupation occ(space.modes(), 0);
  occ[m] = 1;
  occ[n] = 1;
  const StateVector psi = StateVector::basis(space, occ);
  double worst = 0.0;
  for (std::size_t j = 0; j < space.modes(); ++j) {
    CVector e = CVector::Zero(static_cast<Eigen::Index>(space.modes()));
    e[static_cast<Eigen::Index>(j)] = 1.0;
    const SpectralVector basis_mode = folded_spectrum(space.grid(), e);
    for (int p = 0; p <= space.cutoff(); ++p) {
      worst = std::max(worst, std::abs(inner(fock_state(space, p, basis_mode), psi)));
    }
  }
  return worst;
}

double ccr_block_error(const FockSpace& space, std::size_t i, std::size_t j) {
  const SparseOperator bi = ladder(space, i).annihilator;
  const SparseOperator bj_dag = ladder(space, j).creator;
  CMatrix c = commutator(bi, bj_dag).dense();
  if (i == j) c -= CMatrix::Identity(c.rows(), c.cols());
  return block_max_abs(space, c, space.cutoff() - 1);
}

// --- exponentials ------------------------------------------------------------

namespace {

enum class Grading { raising, lowering, mixed };

Grading grading_of(const SparseOperator& op) {
  const auto& m = op.matrix();
  bool raising = true;
  bool lowering = true;
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    for (SparseOperator::Matrix::InnerIterator it(m, col); it; ++it) {
      if (it.value() == Complex{}) continue;
      const int rt = op.space().total(static_cast<std::size_t>(it.row()));
      const int ct = op.space().total(static_cast<std::size_t>(it.col()));
      if (rt <= ct) raising = false;
      if (rt >= ct) lowering = false;
    }
  }
  if (raising) return Grading::raising;
  if (lowering) return Grading::lowering;
  return Grading::mixed;
}

double one_norm(const SparseOperator::Matrix& m) {
  double best = 0.0;
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    double s = 0.0;
    for (SparseOperator::Matrix::InnerIterator it(m, col); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

CVector taylor_apply(const SparseOperator::Matrix& m, const CVector& v, int max_terms) {
  CVector sum = v;
  CVector term = v;
  for (int k = 1; k <= max_terms; ++k) {
    term = (m * term) / static_cast<double>(k);
    sum += term;
    const double tn = term.norm();
    if (tn == 0.0 || tn <= 1e-18 * sum.norm()) break;
  }
  return sum;
}

}  // namespace

StateVector apply_exponential(const SparseOperator& op, const StateVector& v) {
  require_same_space(op.space(), v.space, "apply_exponential");
  const Grading g = grading_of(op);
  if (g != Grading::mixed) {
    // Nilpotent on the truncated space: the series terminates after at most
    // cutoff + 1 terms.
    CVector sum = v.amps;
    CVector term = v.amps;
    for (int k = 1; k <= op.space().cutoff() + 1; ++k) {
      term = (op.matrix() * term) / static_cast<double>(k);
      if (term.squaredNorm() == 0.0) break;
      sum += term;
    }
    return {v.space, std::move(sum)};
  }
  const double norm = one_norm(op.matrix());
  const int steps = std::max(1, static_cast<int>(std::ceil(norm / 0.5)));
  const SparseOperator::Matrix scaled = op.matrix() / static_cast<double>(steps);
  CVector x = v.amps;
  for (int s = 0; s < steps; ++s) x = taylor_apply(scaled, x, 60);
  return {v.space, std::move(x)};
}

CMatrix exponential_dense(const SparseOperator& op) {
  const auto d = static_cast<Eigen::Index>(op.space().dim());
  CMatrix out(d, d);
  StateVector e = StateVector::zero(op.space());
  for (Eigen::Index c = 0; c < d; ++c) {
    e.amps.setZero();
    e.amps[c] = 1.0;
    out.col(c) = apply_exponential(op, e).amps;
  }
  return out;
}

}  // namespace stq
