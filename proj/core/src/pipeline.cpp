#include "sympoly/pipeline.hpp"

#include <cmath>

namespace sympoly {
namespace {

// Default neutral parameter satisfying the class constraint, normalized.
Matrix default_parameter(const SymmetryClass& cls, Eigen::Index m) {
  const auto [A, B] = cls.structure_pair(m);
  switch (cls.tag()) {
    case SymmetryTag::Odd: return kI * Matrix::Identity(m, m);
    case SymmetryTag::JEven: return A;
    case SymmetryTag::GeneralAB: return normalize_spectral(A.inverse());
    default: return Matrix::Identity(m, m);
  }
}

InterpolantFamily gpe_family(const MatrixPolynomial& P, const ReducedData& reduced, const PipelineOptions& opt,
                             const SweepPlan& plan) {
  const auto m = P.dim();
  if (opt.M) {
    const Matrix M = normalize_spectral(*opt.M);
    auto psi = build_neutral(reduced, M, SymmetryClass::gpe());
    auto beta = beta_hat_gpe(P, psi, plan, opt.grid.refine_iters);
    return {P, std::move(psi), beta.beta_hat, FamilyMode::Gpe, std::move(beta.certificate), std::nullopt};
  }

  const BlockSplit split = block_diagonalize(P, std::nullopt, plan, opt.tol);
  if (split.r == 0) {
    // P is already GPE: beta_hat = 0 and any positive semidefinite M works.
    NeutralPolynomial psi(reduced.nodes, Matrix::Identity(m, m));
    const auto sweep = gpe_sweep(P, plan.grid, opt.tol, plan.exclusions);
    Certificate cert;
    cert.grid = plan.grid;
    cert.exclusions = plan.exclusions;
    cert.omega_max = plan.omega_max;
    cert.arg_omega = sweep.worst_omega;
    cert.value = sweep.worst_value;
    return {P, std::move(psi), 0.0, FamilyMode::Gpe, std::move(cert), Refinement{split.T, 0}};
  }
  if (split.r == m) {
    NeutralPolynomial psi(reduced.nodes, Matrix::Identity(m, m));
    auto beta = beta_hat_gpe(P, psi, plan, opt.grid.refine_iters);
    return {P, std::move(psi), beta.beta_hat, FamilyMode::Gpe, std::move(beta.certificate), std::nullopt};
  }
  const auto r = split.r;
  return beta_hat_refined(P, reduced, Matrix::Identity(r, r), Matrix::Zero(m - r, m - r), split, plan,
                          opt.grid.refine_iters);
}

}  // namespace

double reported_beta(const InterpolantFamily& family) {
  if (!family.strict()) return family.beta_hat;
  return family.beta_hat > 0.0 ? family.beta_hat * (1.0 + 1e-6) : 1e-6;
}

PipelineResult interpolate(const InterpolationProblem& problem, const PipelineOptions& options) {
  problem.validate();
  options.grid.validate();
  const auto m = problem.dim();
  ReducedData reduced = reduce_data(problem);
  const auto [A, B] = problem.symmetry.structure_pair(m);
  MatrixPolynomial P = solve_structured(reduced, A, B);

  const auto tag = problem.symmetry.tag();
  std::optional<InterpolantFamily> family;
  if (tag == SymmetryTag::Gpe) {
    const SweepPlan plan = plan_sweep(P, reduced, options.grid);
    family = gpe_family(P, reduced, options, plan);
  } else if (tag == SymmetryTag::NuGpe) {
    const auto& cls = std::get<SymmetryClass::NuGpe>(problem.symmetry.payload());
    const SweepPlan plan = plan_sweep(P, reduced, options.grid);
    family = beta_hat_nugpe(P, reduced, cls.R, cls.nu, plan, options.norm, options.grid.refine_iters);
  } else {
    const Matrix M = options.M ? normalize_spectral(*options.M) : default_parameter(problem.symmetry, m);
    family = InterpolantFamily{P, build_neutral(reduced, M, problem.symmetry), 0.0, FamilyMode::Structured, {},
                               std::nullopt};
  }

  PipelineResult out{std::move(reduced), std::move(*family), 0.0, 0, 0, {}};
  out.beta_reported = reported_beta(out.family);
  const MatrixPolynomial F = out.family.at(out.beta_reported);
  out.mcmillan_degree_P = P.mcmillan_degree(options.rank_tol);
  out.mcmillan_degree_F = F.mcmillan_degree(options.rank_tol);
  out.residuals.node = max_node_residual(F, problem.nodes, problem.values);
  out.residuals.coefficient_symmetry = general_ab_residual(P, A, B);
  return out;
}

}  // namespace sympoly
