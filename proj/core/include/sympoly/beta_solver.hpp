#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "sympoly/interpolator.hpp"
#include "sympoly/matrix_polynomial.hpp"
#include "sympoly/neutral.hpp"
#include "sympoly/symmetry.hpp"

namespace sympoly {

/// Sampling plan for the imaginary-axis searches.
struct GridSpec {
  /// Half-width of the sweep; nullopt picks it from the data (see
  /// choose_omega_max).
  std::optional<double> omega_max;
  int points = 4096;
  /// Half-width of the window skipped around on-axis nodes; nullopt means
  /// 1e-4 * (1 + omega_max).
  std::optional<double> exclusion_radius;
  /// Golden-section iterations per local extremum.
  int refine_iters = 64;

  void validate() const;
};

/// Evidence for a computed threshold.
struct Certificate {
  std::vector<double> grid;
  std::vector<Exclusion> exclusions;
  double omega_max = 0.0;
  /// Location and value of the extremum of the objective ratio.
  double arg_omega = 0.0;
  double value = 0.0;
  /// The extremum sits on the edge of an exclusion window, so the
  /// supremum may not be attained.
  bool at_exclusion_boundary = false;
};

struct BetaResult {
  double beta_hat = 0.0;
  Certificate certificate;
};

enum class FamilyMode { Structured, Gpe, GpeRefined, NuGpe };

std::string_view to_string(FamilyMode mode);
std::optional<FamilyMode> parse_family_mode(std::string_view name);

struct Refinement {
  Matrix T;
  int r = 0;
};

/// F(s) = P(s) + beta Psi(s) together with the admissible range of beta.
struct InterpolantFamily {
  MatrixPolynomial P;
  NeutralPolynomial psi;
  double beta_hat = 0.0;
  FamilyMode mode = FamilyMode::Gpe;
  Certificate certificate;
  std::optional<Refinement> refinement;

  /// nuGPE thresholds are strict (beta > beta_hat); GPE ones are not.
  bool strict() const { return mode == FamilyMode::NuGpe; }
  MatrixPolynomial at(double beta) const;
};

/// P + beta * Psi, coefficientwise.
MatrixPolynomial assemble(const MatrixPolynomial& P, const NeutralPolynomial& psi, double beta);

/// max(10 (1 + max|x_j|), the omega beyond which |P| / weight is estimated to
/// stay below 1e-6 of its observed maximum), capped at 1e4 times the first
/// term.
double choose_omega_max(const MatrixPolynomial& P, const std::vector<Complex>& nodes);

/// Windows [w_j - radius, w_j + radius] around nodes x_j = i w_j.
std::vector<Exclusion> axis_exclusions(const std::vector<Complex>& nodes, double radius, double match_tol);

/// The sweep grid for P over the reduced nodes, with exclusion edges added
/// as sample points.
struct SweepPlan {
  std::vector<double> grid;
  std::vector<Exclusion> exclusions;
  double omega_max = 0.0;
};
SweepPlan plan_sweep(const MatrixPolynomial& P, const ReducedData& reduced, const GridSpec& spec);

/// Result of scanning a scalar objective on a grid and polishing its local
/// minima with golden-section search.
struct ScanResult {
  double arg = 0.0;
  double value = 0.0;
};

/// Minimizes `objective` over the non-excluded grid points, then refines the
/// best local minima inside their grid brackets. Ties prefer smaller |w|,
/// then negative w.
ScanResult scan_minimum(const std::function<double(double)>& objective, const std::vector<double>& grid,
                        std::span<const Exclusion> exclusions, int refine_iters);

/// Threshold for P + beta Psi to be GPE when Psi has a positive definite
/// parameter M with ||M||_2 = 1:
///   beta_hat = max(0, -min_w lambda_min(L^-1 P(i w) L^-*) / prod_j |x_j - i w|^2)
/// with M = L L^*. The certificate value is the signed minimum ratio.
BetaResult beta_hat_gpe(const MatrixPolynomial& P, const NeutralPolynomial& psi, const SweepPlan& plan,
                        int refine_iters = 64);
BetaResult beta_hat_gpe(const MatrixPolynomial& P, const NeutralPolynomial& psi, const ReducedData& reduced,
                        const GridSpec& spec);

/// Split of T P T^* into a GPE-failing leading block of size r and a
/// GPE-passing trailing block.
struct BlockSplit {
  /// Effective congruence, including the ordering permutation.
  Matrix T;
  int r = 0;
  /// Indices of T_in P T_in^* forming each block, in order.
  std::vector<Eigen::Index> failing;
  std::vector<Eigen::Index> passing;
  std::optional<MatrixPolynomial> P_r;
  std::optional<MatrixPolynomial> P_rest;
};

/// Finds the connected components of the joint nonzero pattern of the
/// coefficients of T P T^* (T = I when not given), sweeps each component,
/// and groups failing components first. One component means r = 0 (P is
/// GPE) or r = m (full-block mode).
BlockSplit block_diagonalize(const MatrixPolynomial& P, const std::optional<Matrix>& T, const SweepPlan& plan,
                             double tol);

/// Threshold computed over the failing r x r block only, with
/// T Psi T^* = g diag{M_r, M_rest} g#. Requires 1 <= r <= m-1,
/// M_r positive definite with ||M_r||_2 = 1 and M_rest positive semidefinite.
InterpolantFamily beta_hat_refined(const MatrixPolynomial& P, const ReducedData& reduced, const Matrix& M_r,
                                   const Matrix& M_rest, const BlockSplit& split, const SweepPlan& plan,
                                   int refine_iters = 64);

enum class NormKind { Spectral };
std::optional<NormKind> parse_norm(std::string_view name);

/// Threshold above which P + beta Psi, Psi built from R diag{-I_nu, I_{m-nu}} R^*,
/// keeps inertia (nu, m - nu) on the imaginary axis:
///   beta_hat = max_w ||R^-1 P(i w) R^-*|| / prod_j |x_j - i w|^2
/// over the non-excluded sweep.
InterpolantFamily beta_hat_nugpe(const MatrixPolynomial& P, const ReducedData& reduced, const Matrix& R, int nu,
                                 const SweepPlan& plan, NormKind norm = NormKind::Spectral, int refine_iters = 64);

}  // namespace sympoly
