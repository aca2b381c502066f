#include "sympoly/neutral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sympoly {
namespace {

MatrixPolynomial expand(const std::vector<Complex>& nodes, const Matrix& M) {
  const auto scalar = neutral_scalar_coeffs(nodes);
  std::vector<Matrix> coeffs;
  coeffs.reserve(scalar.size());
  for (Complex c : scalar) coeffs.push_back(c * M);
  return MatrixPolynomial(std::move(coeffs));
}

}  // namespace

std::vector<Complex> neutral_scalar_coeffs(const std::vector<Complex>& nodes) {
  std::vector<Complex> acc{1.0};
  for (Complex x : nodes) {
    // (x - s)(conj(x) + s) = |x|^2 + (x - conj(x)) s - s^2
    const Complex q0 = std::norm(x);
    const Complex q1 = x - std::conj(x);
    const Complex q2 = -1.0;
    std::vector<Complex> next(acc.size() + 2, 0.0);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k] += q0 * acc[k];
      next[k + 1] += q1 * acc[k];
      next[k + 2] += q2 * acc[k];
    }
    acc = std::move(next);
  }
  return acc;
}

NeutralPolynomial::NeutralPolynomial(std::vector<Complex> nodes, Matrix M)
    : nodes_(std::move(nodes)), M_(std::move(M)), expansion_(expand(nodes_, M_)) {
  if (M_.rows() < 1 || M_.rows() != M_.cols()) throw InvalidInput("neutral parameter M must be square");
  for (Complex x : nodes_) require_finite(x, "neutral node");
}

double NeutralPolynomial::axis_weight(double omega) const {
  double w = 1.0;
  for (Complex x : nodes_) w *= std::norm(x - Complex(0.0, omega));
  return w;
}

bool NeutralPolynomial::is_normalized() const { return std::abs(spectral_norm(M_) - 1.0) <= 1e-12; }

Matrix normalize_spectral(const Matrix& M) {
  const double n = spectral_norm(M);
  if (n == 0.0) throw InvalidInput("cannot normalize a zero parameter matrix");
  return M / n;
}

Matrix nugpe_parameter(const Matrix& R, int nu) {
  return R * signature_matrix(R.rows(), nu) * R.adjoint();
}

double neutral_parameter_residual(const Matrix& M, const SymmetryClass& cls) {
  const auto m = M.rows();
  auto herm_res = [](const Matrix& a) { return (a - a.adjoint()).cwiseAbs().maxCoeff(); };
  switch (cls.tag()) {
    case SymmetryTag::Even: return herm_res(M);
    case SymmetryTag::Odd: return (M + M.adjoint()).cwiseAbs().maxCoeff();
    case SymmetryTag::Gpe: {
      const double h = herm_res(M);
      if (m == 0) return h;
      return std::max(h, std::max(0.0, -min_eigenvalue(M)));
    }
    case SymmetryTag::JEven:
    case SymmetryTag::GeneralAB: {
      const auto [A, B] = cls.structure_pair(m);
      return herm_res(A * M);
    }
    case SymmetryTag::NuGpe: {
      const auto& p = std::get<SymmetryClass::NuGpe>(cls.payload());
      return (M - nugpe_parameter(p.R, p.nu)).cwiseAbs().maxCoeff();
    }
  }
  return 0.0;
}

NeutralPolynomial build_neutral(const ReducedData& reduced, const Matrix& M, const SymmetryClass& cls) {
  if (reduced.nodes.empty()) throw InvalidInput("build_neutral: empty reduced data");
  if (M.rows() != reduced.dim() || M.cols() != reduced.dim()) {
    throw InvalidInput("build_neutral: M must be " + std::to_string(reduced.dim()) + "x" +
                       std::to_string(reduced.dim()));
  }
  require_finite(M, "neutral parameter M");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const double res = neutral_parameter_residual(M, cls);
  if (res > 1e-10 * scale) {
    throw InvalidInput("neutral parameter M violates the " + std::string(cls.name()) + " constraint (residual " +
                       std::to_string(res) + ")");
  }
  return NeutralPolynomial(reduced.nodes, M);
}

}  // namespace sympoly
