#pragma once

// Test-only reference computations. Nothing here calls into the solver
// paths it is used to check.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sympoly/sympoly.hpp"

namespace sympoly::testing {

/// sum_k C_k s^k by explicit powers (no Horner).
inline Matrix power_sum(const std::vector<Matrix>& coeffs, Complex s) {
  Matrix acc = Matrix::Zero(coeffs.front().rows(), coeffs.front().cols());
  for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * std::pow(s, static_cast<int>(k));
  return acc;
}

inline double node_weight(const std::vector<Complex>& nodes, double w) {
  double out = 1.0;
  for (Complex x : nodes) {
    const double re = x.real();
    const double im = x.imag() - w;
    out *= re * re + im * im;
  }
  return out;
}

/// Smallest real part of the eigenvalues of M^{-1} H via a general complex
/// eigensolver (no Cholesky congruence).
inline double min_eig_general(const Matrix& M, const Matrix& H) {
  const Matrix prod = M.fullPivLu().solve(H);
  Eigen::ComplexEigenSolver<Matrix> es(prod, false);
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) best = std::min(best, es.eigenvalues()(i).real());
  return best;
}

struct OracleResult {
  double beta_hat;
  double arg;
};

/// Brute-force GPE threshold on a uniform grid of `points` samples over
/// [-half_width, half_width].
inline OracleResult brute_force_beta_gpe(const std::vector<Matrix>& P, const std::vector<Complex>& nodes,
                                         const Matrix& M, double half_width, int points = 1'000'000) {
  double best = std::numeric_limits<double>::infinity();
  double arg = 0.0;
  const bool scalar = M.rows() == 1;
  const Complex m00 = M(0, 0);
  for (int i = 0; i < points; ++i) {
    const double w = -half_width + 2.0 * half_width * i / (points - 1);
    const double wt = node_weight(nodes, w);
    if (wt <= 0.0) continue;
    double l;
    if (scalar) {
      Complex acc = 0.0;
      Complex pw = 1.0;
      const Complex s(0.0, w);
      for (const auto& c : P) {
        acc += c(0, 0) * pw;
        pw *= s;
      }
      l = (acc / m00).real();
    } else {
      l = min_eig_general(M, power_sum(P, Complex(0.0, w)));
    }
    const double v = l / wt;
    if (v < best) {
      best = v;
      arg = w;
    }
  }
  return {std::max(0.0, -best), arg};
}

/// Brute-force nuGPE bound max_w ||R^-1 P(i w) R^-*||_2 / weight.
inline OracleResult brute_force_beta_nugpe(const std::vector<Matrix>& P, const std::vector<Complex>& nodes,
                                           const Matrix& R, double half_width, int points = 1'000'000) {
  const Matrix rinv = R.fullPivLu().inverse();
  double best = 0.0;
  double arg = 0.0;
  for (int i = 0; i < points; ++i) {
    const double w = -half_width + 2.0 * half_width * i / (points - 1);
    const double wt = node_weight(nodes, w);
    if (wt <= 0.0) continue;
    const Matrix k = rinv * power_sum(P, Complex(0.0, w)) * rinv.adjoint();
    Eigen::JacobiSVD<Matrix> svd(k);
    const double v = svd.singularValues()(0) / wt;
    if (v > best) {
      best = v;
      arg = w;
    }
  }
  return {best, arg};
}

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  return {nd(rng), nd(rng)};
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index m, double scale = 1.0) {
  Matrix a(m, m);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = random_complex(rng, scale);
  return a;
}

inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index m) {
  const Matrix a = random_matrix(rng, m);
  return (a + a.adjoint()) / 2.0;
}

/// Positive definite with spectral norm 1.
inline Matrix random_pd_unit(std::mt19937_64& rng, Eigen::Index m) {
  const Matrix a = random_matrix(rng, m);
  Matrix M = a * a.adjoint() + 0.5 * Matrix::Identity(m, m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  return M / es.eigenvalues().maxCoeff();
}

/// Nodes with |Re x| >= min_re and no mirror or duplicate pairs.
inline std::vector<Complex> random_off_axis_nodes(std::mt19937_64& rng, std::size_t n, double min_re = 0.3) {
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  std::vector<Complex> out;
  while (out.size() < n) {
    const Complex x(ud(rng), ud(rng));
    if (std::abs(x.real()) < min_re) continue;
    bool ok = true;
    for (Complex y : out) {
      if (std::abs(x - y) < 0.3 || std::abs(x + std::conj(y)) < 0.3) ok = false;
    }
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace sympoly::testing
