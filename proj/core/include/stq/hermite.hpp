#pragma once

#include <vector>

namespace stq {

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
double hermite(int n, double x);

/// H_0(x) .. H_n(x).
std::vector<double> hermite_table(int n, double x);

/// Normalized Hermite functions π^{-1/4} (2^k k!)^{-1/2} H_k(x) e^{-x²/2}
/// for k = 0..n, by the stable normalized recurrence (no factorial overflow).
std::vector<double> hermite_functions(int n, double x);

/// n-point Gauss–Hermite rule for the weight e^{-x²} (Golub–Welsch).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(int points);

}  // namespace stq
