#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sympoly {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Malformed or out-of-contract input (wrong sizes, NaN, singular parameters).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Interpolation data that violates the feasibility conditions of its class.
class InfeasibleData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation that could not be carried out to the required accuracy
/// (ill-conditioned Vandermonde, failed factorization).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws InvalidInput unless both parts of `z` are finite.
void require_finite(Complex z, const char* what);
void require_finite(const Matrix& a, const char* what);

/// Spectral norm (largest singular value).
double spectral_norm(const Matrix& a);

/// 2-norm condition number; +inf for singular or empty matrices.
double condition_number(const Matrix& a);

/// (A + A*)/2.
Matrix hermitian_part(const Matrix& a);

}  // namespace sympoly
