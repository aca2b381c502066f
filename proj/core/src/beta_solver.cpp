#include "sympoly/beta_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace sympoly {
namespace {

constexpr std::size_t kRefinedCandidates = 8;
constexpr double kTailFraction = 1e-6;
constexpr double kMaxOmegaGrowth = 1e4;

bool tie_preferred(double w, double incumbent) {
  if (std::abs(w) != std::abs(incumbent)) return std::abs(w) < std::abs(incumbent);
  return w < incumbent;
}

bool better(const ScanResult& a, const ScanResult& b) {
  if (a.value != b.value) return a.value < b.value;
  return tie_preferred(a.arg, b.arg);
}

ScanResult golden_section(const std::function<double(double)>& f, double a, double b, int iters) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < iters && c < d; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? ScanResult{c, fc} : ScanResult{d, fd};
}

// Cholesky factor inverse of a Hermitian positive definite parameter.
Matrix inverse_cholesky(const Matrix& M, const char* what) {
  if (M.rows() < 1 || M.rows() != M.cols()) throw InvalidInput(std::string(what) + " must be square");
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, M.cwiseAbs().maxCoeff())) {
    throw InvalidInput(std::string(what) + " must be Hermitian");
  }
  Eigen::LLT<Matrix> llt(hermitian_part(M));
  if (llt.info() != Eigen::Success || !(condition_number(M) <= kMaxParameterCondition)) {
    throw InvalidInput(std::string(what) + " must be positive definite (nonsingular)");
  }
  const Matrix L = llt.matrixL();
  return L.triangularView<Eigen::Lower>().solve(Matrix::Identity(M.rows(), M.cols()));
}

void require_unit_norm(const Matrix& M, const char* what) {
  const double n = spectral_norm(M);
  if (std::abs(n - 1.0) > 1e-9) {
    throw InvalidInput(std::string(what) + " must be normalized to spectral norm 1 (got " + std::to_string(n) + ")");
  }
}

double weight(const std::vector<Complex>& nodes, double omega) {
  double w = 1.0;
  for (Complex x : nodes) w *= std::norm(x - Complex(0.0, omega));
  return w;
}

bool on_boundary(double w, const std::vector<Exclusion>& ex) {
  return std::any_of(ex.begin(), ex.end(), [w](const Exclusion& e) {
    return std::abs(w - e.lo) <= 1e-12 * (1.0 + std::abs(w)) || std::abs(w - e.hi) <= 1e-12 * (1.0 + std::abs(w));
  });
}

Certificate make_certificate(const SweepPlan& plan, const ScanResult& best) {
  Certificate c;
  c.grid = plan.grid;
  c.exclusions = plan.exclusions;
  c.omega_max = plan.omega_max;
  c.arg_omega = best.arg;
  c.value = best.value;
  c.at_exclusion_boundary = on_boundary(best.arg, plan.exclusions);
  return c;
}

double min_ratio_objective(const Matrix& linv, const MatrixPolynomial& P, const std::vector<Complex>& nodes,
                           double omega) {
  const double w = weight(nodes, omega);
  const Matrix h = linv * P.evaluate(Complex(0.0, omega)) * linv.adjoint();
  return min_eigenvalue(h) / w;
}

}  // namespace

void GridSpec::validate() const {
  if (omega_max && !(*omega_max > 0.0 && std::isfinite(*omega_max))) {
    throw InvalidInput("omega_max must be positive and finite");
  }
  if (points < 3) throw InvalidInput("grid points must be at least 3");
  if (exclusion_radius && !(*exclusion_radius >= 0.0)) throw InvalidInput("exclusion_radius must be nonnegative");
  if (refine_iters < 0) throw InvalidInput("refine_iters must be nonnegative");
}

std::string_view to_string(FamilyMode mode) {
  switch (mode) {
    case FamilyMode::Structured: return "structured";
    case FamilyMode::Gpe: return "gpe";
    case FamilyMode::GpeRefined: return "gpe_refined";
    case FamilyMode::NuGpe: return "nugpe";
  }
  return "unknown";
}

std::optional<FamilyMode> parse_family_mode(std::string_view name) {
  for (auto m : {FamilyMode::Structured, FamilyMode::Gpe, FamilyMode::GpeRefined, FamilyMode::NuGpe}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::optional<NormKind> parse_norm(std::string_view name) {
  if (name == "spectral") return NormKind::Spectral;
  return std::nullopt;
}

MatrixPolynomial assemble(const MatrixPolynomial& P, const NeutralPolynomial& psi, double beta) {
  if (P.dim() != psi.dim()) throw InvalidInput("assemble: dimension mismatch");
  return P + Complex(beta) * psi.expansion();
}

MatrixPolynomial InterpolantFamily::at(double beta) const { return assemble(P, psi, beta); }

double choose_omega_max(const MatrixPolynomial& P, const std::vector<Complex>& nodes) {
  double rmax = 0.0;
  for (Complex x : nodes) rmax = std::max(rmax, std::abs(x));
  const double base = 10.0 * (1.0 + rmax);
  const MatrixPolynomial p = P.normalized();
  if (p.is_zero() || nodes.empty()) return base;

  double observed = 0.0;
  for (double w : make_omega_grid(base, 257)) {
    const double wt = weight(nodes, w);
    if (wt <= 0.0) continue;
    observed = std::max(observed, spectral_norm(p.evaluate(Complex(0.0, w))) / wt);
  }
  const double lead = spectral_norm(p.coeffs().back());
  const double decay = 2.0 * static_cast<double>(nodes.size()) - static_cast<double>(p.degree());
  if (!(observed > 0.0) || decay <= 0.0) return base;
  const double tail = std::pow(lead / (kTailFraction * observed), 1.0 / decay);
  return std::clamp(tail, base, kMaxOmegaGrowth * base);
}

std::vector<Exclusion> axis_exclusions(const std::vector<Complex>& nodes, double radius, double match_tol) {
  std::vector<Exclusion> out;
  for (Complex x : nodes) {
    if (std::abs(x.real()) <= match_tol) out.push_back({x.imag() - radius, x.imag() + radius});
  }
  return out;
}

SweepPlan plan_sweep(const MatrixPolynomial& P, const ReducedData& reduced, const GridSpec& spec) {
  spec.validate();
  SweepPlan plan;
  plan.omega_max = spec.omega_max.value_or(choose_omega_max(P, reduced.nodes));
  const double radius = spec.exclusion_radius.value_or(1e-4 * (1.0 + plan.omega_max));
  plan.exclusions = axis_exclusions(reduced.nodes, radius, reduced.match_tol);
  plan.grid = make_omega_grid(plan.omega_max, spec.points);
  for (const auto& e : plan.exclusions) {
    for (double w : {e.lo, e.hi}) {
      if (std::abs(w) <= plan.omega_max) plan.grid.push_back(w);
    }
  }
  std::sort(plan.grid.begin(), plan.grid.end());
  plan.grid.erase(std::unique(plan.grid.begin(), plan.grid.end()), plan.grid.end());
  return plan;
}

ScanResult scan_minimum(const std::function<double(double)>& objective, const std::vector<double>& grid,
                        std::span<const Exclusion> exclusions, int refine_iters) {
  const std::size_t n = grid.size();
  std::vector<double> vals(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<bool> usable(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (excluded(grid[i], exclusions)) continue;
    const double v = objective(grid[i]);
    if (!std::isfinite(v)) continue;
    vals[i] = v;
    usable[i] = true;
  }

  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < n; ++i) {
    if (!usable[i]) continue;
    const bool left_ok = i == 0 || !usable[i - 1] || vals[i] <= vals[i - 1];
    const bool right_ok = i + 1 == n || !usable[i + 1] || vals[i] <= vals[i + 1];
    if (left_ok && right_ok) minima.push_back(i);
  }
  if (minima.empty()) throw NumericalFailure("objective could not be evaluated at any non-excluded grid point");

  std::sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) {
    return better({grid[a], vals[a]}, {grid[b], vals[b]});
  });
  if (minima.size() > kRefinedCandidates) minima.resize(kRefinedCandidates);

  ScanResult best{grid[minima.front()], vals[minima.front()]};
  for (std::size_t i : minima) {
    double a = (i > 0 && usable[i - 1]) ? grid[i - 1] : grid[i];
    double b = (i + 1 < n && usable[i + 1]) ? grid[i + 1] : grid[i];
    for (const auto& e : exclusions) {
      if (e.hi < grid[i] && e.hi > a) a = e.hi;
      if (e.lo > grid[i] && e.lo < b) b = e.lo;
    }
    if (!(a < b) || refine_iters == 0) continue;
    const ScanResult r = golden_section(objective, a, b, refine_iters);
    if (std::isfinite(r.value) && better(r, best)) best = r;
  }
  return best;
}

BetaResult beta_hat_gpe(const MatrixPolynomial& P, const NeutralPolynomial& psi, const SweepPlan& plan,
                        int refine_iters) {
  if (P.dim() != psi.dim()) throw InvalidInput("beta_hat_gpe: dimension mismatch");
  if (!is_even(P, 1e-8 * (1.0 + P.max_abs_coeff()))) throw InvalidInput("beta_hat_gpe: P must be Even");
  require_unit_norm(psi.parameter(), "M");
  const Matrix linv = inverse_cholesky(psi.parameter(), "M");
  const auto& nodes = psi.nodes();
  const auto objective = [&](double w) { return min_ratio_objective(linv, P, nodes, w); };
  const ScanResult best = scan_minimum(objective, plan.grid, plan.exclusions, refine_iters);
  return {std::max(0.0, -best.value), make_certificate(plan, best)};
}

BetaResult beta_hat_gpe(const MatrixPolynomial& P, const NeutralPolynomial& psi, const ReducedData& reduced,
                        const GridSpec& spec) {
  return beta_hat_gpe(P, psi, plan_sweep(P, reduced, spec), spec.refine_iters);
}

BlockSplit block_diagonalize(const MatrixPolynomial& P, const std::optional<Matrix>& T, const SweepPlan& plan,
                             double tol) {
  const auto m = P.dim();
  const Matrix t = T.value_or(Matrix::Identity(m, m));
  if (t.rows() != m || t.cols() != m) throw InvalidInput("block_diagonalize: T has the wrong size");
  if (!(condition_number(t) <= kMaxParameterCondition)) throw InvalidInput("block_diagonalize: T must be nonsingular");
  const MatrixPolynomial q = P.transformed(t, t.adjoint());

  // Union-find over the joint off-diagonal pattern.
  const double cutoff = 1e-10 * (1.0 + q.max_abs_coeff());
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(m));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  const auto find = [&](Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (const auto& c : q.coeffs()) {
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        if (i != j && std::abs(c(i, j)) > cutoff) parent[static_cast<std::size_t>(find(i))] = find(j);
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> components;
  std::vector<Eigen::Index> root_slot(static_cast<std::size_t>(m), -1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto root = static_cast<std::size_t>(find(i));
    if (root_slot[root] < 0) {
      root_slot[root] = static_cast<Eigen::Index>(components.size());
      components.emplace_back();
    }
    components[static_cast<std::size_t>(root_slot[root])].push_back(i);
  }

  BlockSplit split;
  for (const auto& comp : components) {
    const auto verdict = gpe_sweep(q.sub_block(comp), plan.grid, tol, plan.exclusions).verdict;
    auto& dst = verdict ? split.passing : split.failing;
    dst.insert(dst.end(), comp.begin(), comp.end());
  }
  std::sort(split.failing.begin(), split.failing.end());
  std::sort(split.passing.begin(), split.passing.end());
  split.r = static_cast<int>(split.failing.size());

  Matrix perm = Matrix::Zero(m, m);
  Eigen::Index row = 0;
  for (auto i : split.failing) perm(row++, i) = 1.0;
  for (auto i : split.passing) perm(row++, i) = 1.0;
  split.T = perm * t;
  if (!split.failing.empty()) split.P_r = q.sub_block(split.failing);
  if (!split.passing.empty()) split.P_rest = q.sub_block(split.passing);
  return split;
}

InterpolantFamily beta_hat_refined(const MatrixPolynomial& P, const ReducedData& reduced, const Matrix& M_r,
                                   const Matrix& M_rest, const BlockSplit& split, const SweepPlan& plan,
                                   int refine_iters) {
  const auto m = P.dim();
  const int r = split.r;
  if (r < 1 || r > m - 1 || !split.P_r || !split.P_rest) {
    throw InvalidInput("beta_hat_refined: needs 1 <= r <= m-1, got r = " + std::to_string(r));
  }
  if (M_r.rows() != r || M_r.cols() != r) throw InvalidInput("beta_hat_refined: M_r must be r x r");
  if (M_rest.rows() != m - r || M_rest.cols() != m - r) throw InvalidInput("beta_hat_refined: M_rest must be (m-r) x (m-r)");
  require_unit_norm(M_r, "M_r");
  const Matrix linv = inverse_cholesky(M_r, "M_r");
  if (neutral_parameter_residual(M_rest, SymmetryClass::gpe()) > 1e-10 * std::max(1.0, M_rest.cwiseAbs().maxCoeff())) {
    throw InvalidInput("beta_hat_refined: M_rest must be Hermitian positive semidefinite");
  }

  const auto& P_r = *split.P_r;
  const auto objective = [&](double w) { return min_ratio_objective(linv, P_r, reduced.nodes, w); };
  const ScanResult best = scan_minimum(objective, plan.grid, plan.exclusions, refine_iters);

  Matrix blocks = Matrix::Zero(m, m);
  blocks.topLeftCorner(r, r) = M_r;
  blocks.bottomRightCorner(m - r, m - r) = M_rest;
  const Matrix tinv = split.T.inverse();
  Matrix M = tinv * blocks * tinv.adjoint();
  M = hermitian_part(M);

  return InterpolantFamily{P,
                           NeutralPolynomial(reduced.nodes, std::move(M)),
                           std::max(0.0, -best.value),
                           FamilyMode::GpeRefined,
                           make_certificate(plan, best),
                           Refinement{split.T, r}};
}

InterpolantFamily beta_hat_nugpe(const MatrixPolynomial& P, const ReducedData& reduced, const Matrix& R, int nu,
                                 const SweepPlan& plan, NormKind norm, int refine_iters) {
  const auto m = P.dim();
  if (R.rows() != m || R.cols() != m) throw InvalidInput("beta_hat_nugpe: R has the wrong size");
  if (!(condition_number(R) <= kMaxParameterCondition)) throw InvalidInput("beta_hat_nugpe: R must be nonsingular");
  if (nu < 1 || nu > m - 1) throw InvalidInput("beta_hat_nugpe: nu must lie in [1, m-1]");
  if (!is_even(P, 1e-8 * (1.0 + P.max_abs_coeff()))) throw InvalidInput("beta_hat_nugpe: P must be Even");
  (void)norm;  // spectral is the only norm offered

  const Matrix rinv = R.inverse();
  const auto objective = [&](double w) {
    const Matrix h = hermitian_part(rinv * P.evaluate(Complex(0.0, w)) * rinv.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    const double nrm = es.eigenvalues().cwiseAbs().maxCoeff();
    return -nrm / weight(reduced.nodes, w);
  };
  ScanResult best = scan_minimum(objective, plan.grid, plan.exclusions, refine_iters);
  best.value = -best.value;

  return InterpolantFamily{P,
                           NeutralPolynomial(reduced.nodes, nugpe_parameter(R, nu)),
                           std::max(0.0, best.value),
                           FamilyMode::NuGpe,
                           make_certificate(plan, best),
                           std::nullopt};
}

}  // namespace sympoly
