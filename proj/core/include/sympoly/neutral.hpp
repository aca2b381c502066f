#pragma once

#include <vector>

#include "sympoly/interpolator.hpp"
#include "sympoly/matrix_polynomial.hpp"
#include "sympoly/symmetry.hpp"

namespace sympoly {

/// Psi(s) = prod_j (x_j - s) M (conj(x_j) + s) over the reduced nodes.
///
/// Psi vanishes at every x_j and at every mirror -conj(x_j), so adding any
/// multiple of it to an interpolant keeps the interpolation conditions. On
/// the imaginary axis Psi(i w) = M prod_j |x_j - i w|^2.
class NeutralPolynomial {
 public:
  NeutralPolynomial(std::vector<Complex> nodes, Matrix M);

  const std::vector<Complex>& nodes() const { return nodes_; }
  const Matrix& parameter() const { return M_; }
  const MatrixPolynomial& expansion() const { return expansion_; }
  Eigen::Index dim() const { return M_.rows(); }

  /// prod_j |x_j - i w|^2.
  double axis_weight(double omega) const;

  /// M * axis_weight(omega), without going through the expansion.
  Matrix on_axis(double omega) const { return M_ * axis_weight(omega); }

  /// True when ||M||_2 = 1 to 1e-12.
  bool is_normalized() const;

 private:
  std::vector<Complex> nodes_;
  Matrix M_;
  MatrixPolynomial expansion_;
};

/// Scalar coefficients (lowest first) of prod_j (x_j - s)(conj(x_j) + s).
std::vector<Complex> neutral_scalar_coeffs(const std::vector<Complex>& nodes);

/// M / ||M||_2; throws InvalidInput for M = 0.
Matrix normalize_spectral(const Matrix& M);

/// R diag{-I_nu, I_{m-nu}} R^*.
Matrix nugpe_parameter(const Matrix& R, int nu);

/// Residual of M against the parameter constraint of `cls` (0 when M fits):
/// Even -> M Hermitian, Odd -> M skew-Hermitian, GPE -> M Hermitian and
/// positive semidefinite, JEven / GeneralAB -> A M Hermitian, nuGPE -> M
/// equal to R diag{-I_nu, I_{m-nu}} R^*.
double neutral_parameter_residual(const Matrix& M, const SymmetryClass& cls);

/// Builds Psi for the reduced nodes after checking M against the class
/// constraint to 1e-10 (relative to ||M||); throws InvalidInput with the
/// measured residual otherwise.
NeutralPolynomial build_neutral(const ReducedData& reduced, const Matrix& M, const SymmetryClass& cls);

/// psi.on_axis(omega).
inline Matrix psi_on_axis(const NeutralPolynomial& psi, double omega) { return psi.on_axis(omega); }

}  // namespace sympoly
