#include "sympoly/matrix_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sympoly {

MatrixPolynomial::MatrixPolynomial(Eigen::Index m) : dim_(m) {
  if (m < 1) throw InvalidInput("MatrixPolynomial: dimension must be positive");
  coeffs_.push_back(Matrix::Zero(m, m));
}

MatrixPolynomial::MatrixPolynomial(std::vector<Matrix> coeffs) : dim_(0), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidInput("MatrixPolynomial: empty coefficient list");
  dim_ = coeffs_.front().rows();
  if (dim_ < 1) throw InvalidInput("MatrixPolynomial: dimension must be positive");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].rows() != dim_ || coeffs_[k].cols() != dim_) {
      throw InvalidInput("MatrixPolynomial: coefficient " + std::to_string(k) + " is not " +
                         std::to_string(dim_) + "x" + std::to_string(dim_));
    }
    require_finite(coeffs_[k], "MatrixPolynomial coefficient");
  }
}

MatrixPolynomial MatrixPolynomial::scalar(std::span<const Complex> coeffs) {
  std::vector<Matrix> blocks;
  blocks.reserve(coeffs.size());
  for (Complex c : coeffs) blocks.push_back(Matrix::Constant(1, 1, c));
  return MatrixPolynomial(std::move(blocks));
}

MatrixPolynomial MatrixPolynomial::scalar(std::initializer_list<Complex> coeffs) {
  return scalar(std::span<const Complex>(coeffs.begin(), coeffs.size()));
}

MatrixPolynomial MatrixPolynomial::constant(const Matrix& c) { return MatrixPolynomial(std::vector<Matrix>{c}); }

double MatrixPolynomial::max_abs_coeff() const {
  double best = 0.0;
  for (const auto& c : coeffs_) best = std::max(best, c.cwiseAbs().maxCoeff());
  return best;
}

MatrixPolynomial MatrixPolynomial::normalized(double rel_tol) const {
  const double cutoff = rel_tol * max_abs_coeff();
  std::size_t len = coeffs_.size();
  while (len > 1 && coeffs_[len - 1].cwiseAbs().maxCoeff() <= cutoff) --len;
  return MatrixPolynomial(std::vector<Matrix>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(len)));
}

Matrix MatrixPolynomial::evaluate(Complex s) const {
  Matrix acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
    acc *= s;
    acc += coeffs_[k];
  }
  return acc;
}

MatrixPolynomial MatrixPolynomial::hash_adjoint() const {
  std::vector<Matrix> out;
  out.reserve(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    Matrix c = coeffs_[k].adjoint();
    if (k % 2 == 1) c = -c;
    out.push_back(std::move(c));
  }
  return MatrixPolynomial(std::move(out));
}

MatrixPolynomial MatrixPolynomial::reverse() const {
  return MatrixPolynomial(std::vector<Matrix>(coeffs_.rbegin(), coeffs_.rend()));
}

Matrix block_toeplitz(const MatrixPolynomial& f) {
  const auto m = f.dim();
  const auto q = static_cast<Eigen::Index>(f.degree());
  Matrix t = Matrix::Zero((q + 1) * m, (q + 1) * m);
  for (Eigen::Index i = 0; i <= q; ++i) {
    for (Eigen::Index j = i; j <= q; ++j) {
      t.block(i * m, j * m, m, m) = f.coeff(static_cast<std::size_t>(q - (j - i)));
    }
  }
  return t;
}

std::size_t MatrixPolynomial::mcmillan_degree(double rank_tol) const {
  if (!(rank_tol > 0.0)) throw InvalidInput("mcmillan_degree: rank_tol must be positive");
  const MatrixPolynomial f = normalized();
  if (f.is_zero()) return 0;
  Eigen::BDCSVD<Matrix> svd(block_toeplitz(f));
  const auto& sv = svd.singularValues();
  const double cutoff = rank_tol * sv(0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

double MatrixPolynomial::max_coeff_distance(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  if (a.dim() != b.dim()) throw InvalidInput("max_coeff_distance: dimension mismatch");
  const std::size_t len = std::max(a.coeffs_.size(), b.coeffs_.size());
  double best = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    const bool ha = k < a.coeffs_.size();
    const bool hb = k < b.coeffs_.size();
    double d = 0.0;
    if (ha && hb) {
      d = (a.coeffs_[k] - b.coeffs_[k]).cwiseAbs().maxCoeff();
    } else {
      d = (ha ? a.coeffs_[k] : b.coeffs_[k]).cwiseAbs().maxCoeff();
    }
    best = std::max(best, d);
  }
  return best;
}

MatrixPolynomial operator+(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  if (a.dim() != b.dim()) throw InvalidInput("MatrixPolynomial +: dimension mismatch");
  std::vector<Matrix> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Matrix::Zero(a.dim(), a.dim()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
  return MatrixPolynomial(std::move(out));
}

MatrixPolynomial operator*(Complex c, const MatrixPolynomial& a) {
  std::vector<Matrix> out;
  out.reserve(a.coeffs_.size());
  for (const auto& blk : a.coeffs_) out.push_back(c * blk);
  return MatrixPolynomial(std::move(out));
}

MatrixPolynomial operator-(const MatrixPolynomial& a, const MatrixPolynomial& b) { return a + Complex(-1.0) * b; }

MatrixPolynomial MatrixPolynomial::transformed(const Matrix& left, const Matrix& right) const {
  if (left.cols() != dim_ || right.rows() != dim_ || left.rows() != right.cols()) {
    throw InvalidInput("MatrixPolynomial::transformed: incompatible dimensions");
  }
  std::vector<Matrix> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(left * c * right);
  return MatrixPolynomial(std::move(out));
}

MatrixPolynomial MatrixPolynomial::sub_block(std::span<const Eigen::Index> idx) const {
  if (idx.empty()) throw InvalidInput("sub_block: empty index set");
  const auto r = static_cast<Eigen::Index>(idx.size());
  std::vector<Matrix> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    Matrix b(r, r);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < r; ++j) b(i, j) = c(idx[i], idx[j]);
    }
    out.push_back(std::move(b));
  }
  return MatrixPolynomial(std::move(out));
}

}  // namespace sympoly
