#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sympoly/matrix_polynomial.hpp"
#include "sympoly/symmetry.hpp"
#include "sympoly/types.hpp"

namespace sympoly {

/// Vandermonde systems with a reciprocal condition estimate below this are
/// reported as numerical failures.
inline constexpr double kMaxVandermondeCondition = 1e12;

struct InterpolationProblem {
  std::vector<Complex> nodes;
  std::vector<Matrix> values;
  SymmetryClass symmetry = SymmetryClass::even();
  /// Node coincidence tolerance; nullopt means 1e-9 * (1 + max |x_j|).
  std::optional<double> match_tol;

  Eigen::Index dim() const { return values.empty() ? 0 : values.front().rows(); }
  double node_tol() const;
  /// Throws InvalidInput on size mismatches, non-finite data or p = 0.
  void validate() const;
};

enum class ViolationKind {
  DuplicateMismatch,  ///< x_j = x_k but Y_j != Y_k
  MirrorMismatch,     ///< x_j = -conj(x_k) but Y_j != (A Y_k B)^*
  OnAxisNotPsd,       ///< GPE: on-axis value not positive semidefinite
  OnAxisInertia,      ///< nuGPE: on-axis value with the wrong inertia
  OnAxisSingular,     ///< nuGPE: on-axis value singular (unsupported)
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t j;
  std::size_t k;  ///< equals j for single-node conditions
  double residual;
  std::string describe() const;
};

/// Every feasibility violation of the data for its symmetry class. Empty
/// means feasible.
std::vector<Violation> check_feasible(const InterpolationProblem& problem);

struct ReducedData {
  std::vector<Complex> nodes;
  std::vector<Matrix> values;
  /// kept_indices[i] is the index of nodes[i] in the original problem.
  std::vector<std::size_t> kept_indices;
  double match_tol = 0.0;

  std::size_t size() const { return nodes.size(); }
  Eigen::Index dim() const { return values.front().rows(); }
  /// Nodes on the imaginary axis (|Re x| <= match_tol).
  std::vector<std::size_t> on_axis() const;
};

/// Greedy reduction in input order: a node is dropped when it coincides
/// with, or is the mirror -conj(x) of, a node already kept.
/// Throws InfeasibleData when check_feasible reports violations.
ReducedData reduce_data(const InterpolationProblem& problem);

/// Polynomial P of formal degree <= 2n-1 with P(x_j) = Y_j and
/// P(-conj(x_j)) = (A Y_j B)^*. The scalar Vandermonde on the 2n nodes is
/// factored once and applied to all m^2 entries. On-axis nodes contribute a
/// single condition since x_j = -conj(x_j). When B = (A^*)^{-1} the
/// coefficients are projected onto C_k^* = (-1)^k A C_k B.
MatrixPolynomial solve_structured(const ReducedData& reduced, const Matrix& A, const Matrix& B);

/// Classical interpolant of formal degree <= p-1 through distinct nodes.
MatrixPolynomial solve_unstructured(const InterpolationProblem& problem);

/// Solves V c = rhs for the scalar Vandermonde V(i, k) = nodes[i]^k using
/// partial-pivoted LU with one step of iterative refinement. Throws
/// NumericalFailure naming the closest node pair when V is too
/// ill-conditioned.
Matrix solve_vandermonde(const std::vector<Complex>& nodes, const Matrix& rhs);

/// max_j ||P(x_j) - Y_j||_max over the given nodes/values.
double max_node_residual(const MatrixPolynomial& p, const std::vector<Complex>& nodes,
                         const std::vector<Matrix>& values);

}  // namespace sympoly
