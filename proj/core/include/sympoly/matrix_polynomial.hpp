#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "sympoly/types.hpp"

namespace sympoly {

inline constexpr double kDefaultTrimTol = 1e-12;
inline constexpr double kDefaultRankTol = 1e-9;

/// Square matrix polynomial F(s) = sum_k C_k s^k with m x m complex
/// coefficients, stored lowest power first.
///
/// Values are immutable once built. The formal degree is coeffs().size() - 1;
/// normalized() trims trailing blocks that are negligible relative to the
/// largest coefficient entry. The zero polynomial is a single zero block.
class MatrixPolynomial {
 public:
  /// Zero polynomial of dimension m.
  explicit MatrixPolynomial(Eigen::Index m);

  /// Takes ownership of the coefficient blocks; all must be m x m, m >= 1.
  explicit MatrixPolynomial(std::vector<Matrix> coeffs);

  /// Scalar (1 x 1) polynomial from coefficients c_0, c_1, ...
  static MatrixPolynomial scalar(std::span<const Complex> coeffs);
  static MatrixPolynomial scalar(std::initializer_list<Complex> coeffs);

  /// Constant polynomial F(s) = c.
  static MatrixPolynomial constant(const Matrix& c);

  Eigen::Index dim() const { return dim_; }
  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<Matrix>& coeffs() const { return coeffs_; }
  const Matrix& coeff(std::size_t k) const { return coeffs_.at(k); }

  /// Largest entry modulus over all coefficients.
  double max_abs_coeff() const;

  bool is_zero() const { return max_abs_coeff() == 0.0; }

  /// Copy with trailing blocks whose entries are all <= rel_tol * max_abs_coeff()
  /// removed.
  MatrixPolynomial normalized(double rel_tol = kDefaultTrimTol) const;

  /// Horner evaluation.
  Matrix evaluate(Complex s) const;

  /// F#(s) = F(-conj(s))^*: coefficient k becomes (-1)^k C_k^*.
  MatrixPolynomial hash_adjoint() const;

  /// s^q F(1/s) for the formal degree q.
  MatrixPolynomial reverse() const;

  /// Numerical rank of the block upper-triangular block-Toeplitz matrix whose
  /// first block row is C_q, C_{q-1}, ..., C_0. Singular values above
  /// rank_tol * sigma_max count. The zero polynomial has degree 0.
  std::size_t mcmillan_degree(double rank_tol = kDefaultRankTol) const;

  /// Largest coefficientwise entry difference (shorter operand zero-padded).
  static double max_coeff_distance(const MatrixPolynomial& a, const MatrixPolynomial& b);

  friend MatrixPolynomial operator+(const MatrixPolynomial& a, const MatrixPolynomial& b);
  friend MatrixPolynomial operator-(const MatrixPolynomial& a, const MatrixPolynomial& b);
  friend MatrixPolynomial operator*(Complex c, const MatrixPolynomial& a);

  /// Congruence L * F(s) * R applied coefficientwise.
  MatrixPolynomial transformed(const Matrix& left, const Matrix& right) const;

  /// Principal sub-block rows/cols given by `idx`.
  MatrixPolynomial sub_block(std::span<const Eigen::Index> idx) const;

 private:
  Eigen::Index dim_;
  std::vector<Matrix> coeffs_;
};

/// Block upper-triangular block-Toeplitz matrix used by mcmillan_degree.
Matrix block_toeplitz(const MatrixPolynomial& f);

}  // namespace sympoly
