#pragma once

#include <optional>
#include <vector>

#include "sympoly/beta_solver.hpp"
#include "sympoly/interpolator.hpp"

namespace sympoly {

struct PipelineOptions {
  GridSpec grid;
  /// Sweep tolerance on eigenvalues.
  double tol = 1e-9;
  NormKind norm = NormKind::Spectral;
  /// Neutral parameter. For GPE, supplying M forces the full-block
  /// threshold with that (normalized) M; otherwise the block detector runs
  /// with M_r = I and M_rest = 0.
  std::optional<Matrix> M;
  double rank_tol = kDefaultRankTol;
};

struct Residuals {
  /// max_j ||F(x_j) - Y_j|| over all original nodes, at the reported beta.
  double node = 0.0;
  /// max_k ||C_k^* - (-1)^k A C_k B|| of P.
  double coefficient_symmetry = 0.0;
};

struct PipelineResult {
  ReducedData reduced;
  InterpolantFamily family;
  /// beta at which the reported F is assembled: beta_hat, or
  /// beta_hat * (1 + 1e-6) for strict (nuGPE) thresholds.
  double beta_reported = 0.0;
  std::size_t mcmillan_degree_P = 0;
  std::size_t mcmillan_degree_F = 0;
  Residuals residuals;
};

/// Admissible beta to report for a family: beta_hat, nudged up for strict
/// thresholds.
double reported_beta(const InterpolantFamily& family);

/// Runs feasibility, reduction, the structured solve, the neutral family and
/// the threshold for the problem's class. Throws InfeasibleData,
/// InvalidInput or NumericalFailure.
PipelineResult interpolate(const InterpolationProblem& problem, const PipelineOptions& options = {});

}  // namespace sympoly
