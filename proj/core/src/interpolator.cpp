#include "sympoly/interpolator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sympoly {
namespace {

double max_abs(const std::vector<Matrix>& values) {
  double best = 0.0;
  for (const auto& y : values) best = std::max(best, y.cwiseAbs().maxCoeff());
  return best;
}

double value_tol(const InterpolationProblem& p) {
  const double rel = p.match_tol.value_or(1e-9);
  return rel * (1.0 + max_abs(p.values));
}

double dist(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Row-major flattening of an m x m block into one row of length m^2.
void put_row(Matrix& rhs, Eigen::Index row, const Matrix& y) {
  const auto m = y.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) rhs(row, i * m + j) = y(i, j);
  }
}

Matrix get_block(const Matrix& sol, Eigen::Index row, Eigen::Index m) {
  Matrix c(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) c(i, j) = sol(row, i * m + j);
  }
  return c;
}

}  // namespace

double InterpolationProblem::node_tol() const {
  if (match_tol) return *match_tol;
  double r = 0.0;
  for (Complex x : nodes) r = std::max(r, std::abs(x));
  return 1e-9 * (1.0 + r);
}

void InterpolationProblem::validate() const {
  if (nodes.empty()) throw InvalidInput("interpolation problem has no nodes");
  if (nodes.size() != values.size()) {
    throw InvalidInput("interpolation problem has " + std::to_string(nodes.size()) + " nodes but " +
                       std::to_string(values.size()) + " values");
  }
  const auto m = values.front().rows();
  if (m < 1) throw InvalidInput("interpolation values must be nonempty matrices");
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j].rows() != m || values[j].cols() != m) {
      throw InvalidInput("value " + std::to_string(j) + " is not " + std::to_string(m) + "x" + std::to_string(m));
    }
    require_finite(values[j], "interpolation value");
    require_finite(nodes[j], "interpolation node");
  }
  if (match_tol && !(*match_tol > 0.0)) throw InvalidInput("match_tol must be positive");
  (void)symmetry.structure_pair(m);
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DuplicateMismatch: return "duplicate_mismatch";
    case ViolationKind::MirrorMismatch: return "mirror_mismatch";
    case ViolationKind::OnAxisNotPsd: return "on_axis_not_psd";
    case ViolationKind::OnAxisInertia: return "on_axis_inertia";
    case ViolationKind::OnAxisSingular: return "on_axis_singular";
  }
  return "unknown";
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << to_string(kind) << " at nodes (" << j << ", " << k << "), residual " << residual;
  return os.str();
}

std::vector<Violation> check_feasible(const InterpolationProblem& problem) {
  problem.validate();
  const auto m = problem.dim();
  const auto [A, B] = problem.symmetry.structure_pair(m);
  const double xtol = problem.node_tol();
  const double ytol = value_tol(problem);
  const auto& x = problem.nodes;
  const auto& y = problem.values;
  const std::size_t p = x.size();

  std::vector<Violation> out;
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j; k < p; ++k) {
      if (k > j && std::abs(x[j] - x[k]) <= xtol) {
        const double r = dist(y[j], y[k]);
        if (r > ytol) out.push_back({ViolationKind::DuplicateMismatch, j, k, r});
      }
      if (std::abs(x[j] + std::conj(x[k])) <= xtol) {
        const double r = dist(y[j], (A * y[k] * B).adjoint());
        if (r > ytol) out.push_back({ViolationKind::MirrorMismatch, j, k, r});
      }
    }
  }

  const auto tag = problem.symmetry.tag();
  if (tag == SymmetryTag::Gpe || tag == SymmetryTag::NuGpe) {
    for (std::size_t j = 0; j < p; ++j) {
      if (std::abs(x[j].real()) > xtol) continue;
      if (tag == SymmetryTag::Gpe) {
        const double l = min_eigenvalue(y[j]);
        if (l < -ytol) out.push_back({ViolationKind::OnAxisNotPsd, j, j, -l});
      } else {
        const int nu = std::get<SymmetryClass::NuGpe>(problem.symmetry.payload()).nu;
        const Inertia in = inertia(y[j], ytol);
        if (in.zero > 0) {
          out.push_back({ViolationKind::OnAxisSingular, j, j, static_cast<double>(in.zero)});
        } else if (in.negative != nu) {
          out.push_back({ViolationKind::OnAxisInertia, j, j, static_cast<double>(std::abs(in.negative - nu))});
        }
      }
    }
  }
  return out;
}

std::vector<std::size_t> ReducedData::on_axis() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (std::abs(nodes[j].real()) <= match_tol) out.push_back(j);
  }
  return out;
}

ReducedData reduce_data(const InterpolationProblem& problem) {
  const auto violations = check_feasible(problem);
  if (!violations.empty()) {
    std::string msg = "infeasible interpolation data:";
    for (const auto& v : violations) msg += "\n  " + v.describe();
    throw InfeasibleData(msg);
  }
  ReducedData out;
  out.match_tol = problem.node_tol();
  for (std::size_t j = 0; j < problem.nodes.size(); ++j) {
    const Complex xj = problem.nodes[j];
    const bool redundant = std::any_of(out.nodes.begin(), out.nodes.end(), [&](Complex kept) {
      return std::abs(xj - kept) <= out.match_tol || std::abs(xj + std::conj(kept)) <= out.match_tol;
    });
    if (redundant) continue;
    out.nodes.push_back(xj);
    out.values.push_back(problem.values[j]);
    out.kept_indices.push_back(j);
  }
  return out;
}

Matrix solve_vandermonde(const std::vector<Complex>& nodes, const Matrix& rhs) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  if (n == 0) throw InvalidInput("solve_vandermonde: no nodes");
  if (rhs.rows() != n) throw InvalidInput("solve_vandermonde: rhs row count mismatch");

  double scale = 0.0;
  for (Complex x : nodes) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) scale = 1.0;

  Matrix v(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex t = nodes[static_cast<std::size_t>(i)] / scale;
    Complex pw = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      v(i, k) = pw;
      pw *= t;
    }
  }
  Eigen::PartialPivLU<Matrix> lu(v);
  const double rcond = lu.rcond();
  if (!(rcond * kMaxVandermondeCondition >= 1.0)) {
    std::size_t a = 0;
    std::size_t b = 0;
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        if (const double d = std::abs(nodes[i] - nodes[j]); d < closest) {
          closest = d;
          a = i;
          b = j;
        }
      }
    }
    std::ostringstream os;
    os << "Vandermonde system is ill-conditioned (estimated condition " << 1.0 / rcond
       << "); closest nodes " << nodes[a] << " and " << nodes[b] << " at distance " << closest;
    throw NumericalFailure(os.str());
  }
  Matrix sol = lu.solve(rhs);
  sol += lu.solve(rhs - v * sol);

  Complex inv_pw = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    sol.row(k) *= inv_pw;
    inv_pw /= scale;
  }
  return sol;
}

MatrixPolynomial solve_structured(const ReducedData& reduced, const Matrix& A, const Matrix& B) {
  if (reduced.nodes.empty()) throw InvalidInput("solve_structured: empty reduced data");
  const auto m = reduced.dim();
  if (A.rows() != m || A.cols() != m || B.rows() != m || B.cols() != m) {
    throw InvalidInput("solve_structured: A and B must be " + std::to_string(m) + "x" + std::to_string(m));
  }
  if (!(condition_number(A) <= kMaxParameterCondition) || !(condition_number(B) <= kMaxParameterCondition)) {
    throw InvalidInput("solve_structured: A and B must be nonsingular");
  }

  std::vector<Complex> pts;
  std::vector<Matrix> vals;
  for (std::size_t j = 0; j < reduced.size(); ++j) {
    pts.push_back(reduced.nodes[j]);
    vals.push_back(reduced.values[j]);
  }
  for (std::size_t j = 0; j < reduced.size(); ++j) {
    const Complex mirror = -std::conj(reduced.nodes[j]);
    if (std::abs(mirror - reduced.nodes[j]) <= reduced.match_tol) continue;
    pts.push_back(mirror);
    vals.push_back((A * reduced.values[j] * B).adjoint());
  }

  const auto rows = static_cast<Eigen::Index>(pts.size());
  Matrix rhs(rows, m * m);
  for (Eigen::Index i = 0; i < rows; ++i) put_row(rhs, i, vals[static_cast<std::size_t>(i)]);
  const Matrix sol = solve_vandermonde(pts, rhs);

  std::vector<Matrix> coeffs;
  coeffs.reserve(pts.size());
  for (Eigen::Index k = 0; k < rows; ++k) coeffs.push_back(get_block(sol, k, m));

  // C -> (-1)^k (A C B)^* is an involution exactly when B A^* = I.
  const Matrix id = Matrix::Identity(m, m);
  if ((B * A.adjoint() - id).cwiseAbs().maxCoeff() <= 1e-12) {
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      Matrix mirrored = (A * coeffs[k] * B).adjoint();
      if (k % 2 == 1) mirrored = -mirrored;
      coeffs[k] = (coeffs[k] + mirrored) / 2.0;
    }
  }
  return MatrixPolynomial(std::move(coeffs));
}

MatrixPolynomial solve_unstructured(const InterpolationProblem& problem) {
  problem.validate();
  const double xtol = problem.node_tol();
  for (std::size_t j = 0; j < problem.nodes.size(); ++j) {
    for (std::size_t k = j + 1; k < problem.nodes.size(); ++k) {
      if (std::abs(problem.nodes[j] - problem.nodes[k]) <= xtol) {
        throw InvalidInput("solve_unstructured: nodes " + std::to_string(j) + " and " + std::to_string(k) +
                           " coincide");
      }
    }
  }
  const auto m = problem.dim();
  const auto p = static_cast<Eigen::Index>(problem.nodes.size());
  Matrix rhs(p, m * m);
  for (Eigen::Index i = 0; i < p; ++i) put_row(rhs, i, problem.values[static_cast<std::size_t>(i)]);
  const Matrix sol = solve_vandermonde(problem.nodes, rhs);
  std::vector<Matrix> coeffs;
  for (Eigen::Index k = 0; k < p; ++k) coeffs.push_back(get_block(sol, k, m));
  return MatrixPolynomial(std::move(coeffs));
}

double max_node_residual(const MatrixPolynomial& p, const std::vector<Complex>& nodes,
                         const std::vector<Matrix>& values) {
  double worst = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) worst = std::max(worst, dist(p.evaluate(nodes[j]), values[j]));
  return worst;
}

}  // namespace sympoly
