#include "sympoly/types.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sympoly {

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidInput(std::string(what) + ": non-finite value");
  }
}

void require_finite(const Matrix& a, const char* what) {
  for (Eigen::Index i = 0; i < a.size(); ++i) require_finite(a.data()[i], what);
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double condition_number(const Matrix& a) {
  if (a.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

Matrix hermitian_part(const Matrix& a) { return (a + a.adjoint()) / 2.0; }

}  // namespace sympoly
