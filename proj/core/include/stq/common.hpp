#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace stq {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (length mismatch, bad index,
/// unnormalized spectrum, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested object cannot be represented inside the truncated Fock space
/// to the required accuracy.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A closed form or integration path hits a pole.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Numerical integration or a statistical estimate failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace stq
