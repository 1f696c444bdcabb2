#include "stq/grid.hpp"

#include <cmath>
#include <set>
#include <utility>

namespace stq {

ModeGrid::ModeGrid(std::vector<Mode> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) throw DomainError("mode grid must contain at least one mode");
  std::set<std::pair<std::array<double, 3>, int>> seen;
  for (const Mode& m : modes_) {
    if (!(m.weight > 0.0) || !std::isfinite(m.weight))
      throw DomainError("mode weights must be positive and finite");
    if (!(m.omega > 0.0)) throw DomainError("zero-frequency mode");
    if (!seen.emplace(m.k, m.spin).second)
      throw DomainError("duplicate (k, spin) pair in mode grid");
  }
}

GridRef make_grid(std::span<const std::array<double, 3>> k_samples,
                  std::span<const int> spins, double cell_volume) {
  if (k_samples.empty()) throw DomainError("make_grid: no wave-vector samples");
  if (spins.empty()) throw DomainError("make_grid: no spin labels");
  if (!(cell_volume > 0.0)) throw DomainError("make_grid: cell volume must be positive");

  const double two_pi_cubed = std::pow(2.0 * kPi, 3);
  std::vector<Mode> modes;
  modes.reserve(k_samples.size() * spins.size());
  for (const auto& k : k_samples) {
    const double kabs = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    if (kabs == 0.0)
      throw DomainError("make_grid: zero wave vector has zero frequency (singular measure)");
    const double omega = kSpeedOfLight * kabs;
    for (int s : spins) {
      modes.push_back(Mode{k, s, cell_volume / (two_pi_cubed * omega), omega});
    }
  }
  return std::make_shared<const ModeGrid>(std::move(modes));
}

GridRef make_unit_grid(std::size_t modes) {
  if (modes == 0) throw DomainError("make_unit_grid: need at least one mode");
  std::vector<std::array<double, 3>> ks;
  ks.reserve(modes);
  for (std::size_t i = 0; i < modes; ++i) {
    const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(modes);
    ks.push_back({std::cos(theta), std::sin(theta), 0.0});
  }
  // A single mode at angle zero would be (1,0,0); keep (0,0,1) for that case
  // so the canonical single-mode grid points along z.
  if (modes == 1) ks[0] = {0.0, 0.0, 1.0};
  const int spin0 = 0;
  return make_grid(ks, std::span<const int>(&spin0, 1), std::pow(2.0 * kPi, 3));
}

void require_same_grid(const GridRef& a, const GridRef& b, const char* what) {
  if (!a || !b) throw DomainError(std::string(what) + ": spectrum without a grid");
  if (a != b && !(*a == *b)) throw DomainError(std::string(what) + ": grid mismatch");
}

bool SpectralVector::is_normalized(double tol) const { return std::abs(norm2() - 1.0) <= tol; }

SpectralVector SpectralVector::normalized() const {
  const double n = coeffs.norm();
  if (n == 0.0) throw DomainError("cannot normalize a zero spectrum");
  return {grid, coeffs / n};
}

SpectralVector folded_spectrum(GridRef grid, CVector coeffs) {
  if (!grid) throw DomainError("folded_spectrum: null grid");
  if (static_cast<std::size_t>(coeffs.size()) != grid->size())
    throw DomainError("folded_spectrum: coefficient count does not match the grid");
  return {std::move(grid), std::move(coeffs)};
}

RealSpectralVector folded_real_spectrum(GridRef grid, RVector coeffs) {
  if (!grid) throw DomainError("folded_real_spectrum: null grid");
  if (static_cast<std::size_t>(coeffs.size()) != grid->size())
    throw DomainError("folded_real_spectrum: coefficient count does not match the grid");
  return {std::move(grid), std::move(coeffs)};
}

SpectralVector embed_spectrum(GridRef grid, std::span<const Complex> samples) {
  if (!grid) throw DomainError("embed_spectrum: null grid");
  if (samples.size() != grid->size())
    throw DomainError("embed_spectrum: sample count does not match the grid");
  CVector c(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i)
    c[static_cast<Eigen::Index>(i)] = samples[i] * std::sqrt((*grid)[i].weight);
  return {std::move(grid), std::move(c)};
}

Complex inner_product(const SpectralVector& f, const SpectralVector& g) {
  require_same_grid(f.grid, g.grid, "inner_product");
  return f.coeffs.dot(g.coeffs);  // Eigen's dot conjugates the left operand
}

double inner_product(const RealSpectralVector& f, const RealSpectralVector& g) {
  require_same_grid(f.grid, g.grid, "inner_product");
  return f.coeffs.dot(g.coeffs);
}

NormMetric norm_metric(const SpectralVector& a, const SpectralVector& b) {
  require_same_grid(a.grid, b.grid, "norm_metric");
  return {a.coeffs.squaredNorm(), (a.coeffs - b.coeffs).squaredNorm(),
          a.coeffs.dot(b.coeffs).imag()};
}

}  // namespace stq
