#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace sympoly::cli {

using nlohmann::json;

namespace {

constexpr double kDefaultSweepTol = 1e-9;
constexpr int kDefaultGridPoints = 4096;

// Frequency half-width for sweeping a bare polynomial: scale of the
// coefficients relative to the leading one, or the node spread when known.
double default_verify_omega(const MatrixPolynomial& f, const std::vector<Complex>& nodes) {
  if (!nodes.empty()) {
    double r = 0.0;
    for (Complex x : nodes) r = std::max(r, std::abs(x));
    return 10.0 * (1.0 + r);
  }
  const MatrixPolynomial p = f.normalized();
  if (p.degree() == 0) return 10.0;
  const double lead = spectral_norm(p.coeffs().back());
  double ratio = 0.0;
  for (std::size_t k = 0; k + 1 < p.coeffs().size(); ++k) ratio = std::max(ratio, spectral_norm(p.coeff(k)) / lead);
  return std::min(10.0 * (1.0 + ratio), 1e6);
}

json violations_to_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    out.push_back(json{{"kind", std::string(to_string(v.kind))}, {"j", v.j}, {"k", v.k}, {"residual", v.residual}});
  }
  return out;
}

void print_matrix(std::ostream& out, const Matrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (k) out << ' ';
      out << format_complex(a(i, k));
    }
    out << '\n';
  }
}

void print_summary(std::ostream& out, const ResultFile& r) {
  out << "mode: " << r.mode << '\n'
      << "points: p = " << r.original_points << ", n = " << r.kept_indices.size() << '\n'
      << "degree(P): " << MatrixPolynomial(r.P_coeffs).normalized().degree() << '\n'
      << "beta_hat: " << format_number(r.beta_hat) << (r.strict ? " (admissible: beta > beta_hat)\n" : " (admissible: beta >= beta_hat)\n")
      << "arg_omega: " << format_number(r.certificate.arg_omega) << '\n'
      << "mcmillan_degree_P: " << r.mcmillan_degree_P << '\n'
      << "mcmillan_degree_F(beta=" << format_number(r.beta_reported) << "): " << r.mcmillan_degree_F << '\n'
      << "node_residual: " << format_number(r.node_residual) << '\n';
}

}  // namespace

std::optional<Complex> parse_point(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0;
  double im = 0.0;
  if (!(in >> re)) return std::nullopt;
  char sep = 0;
  if (in >> sep) {
    if (sep != ',' || !(in >> im)) return std::nullopt;
    if (in >> sep) return std::nullopt;
  }
  if (!std::isfinite(re) || !std::isfinite(im)) return std::nullopt;
  return Complex(re, im);
}

int cmd_interpolate(const InterpolateArgs& args, std::ostream& out, std::ostream& err) {
  const ProblemFile pf = parse_problem(read_json_file(args.problem_path));

  PipelineOptions opt;
  opt.grid.omega_max = args.sweep.omega_max ? args.sweep.omega_max : pf.options.omega_max;
  opt.grid.points = args.sweep.grid_points.value_or(pf.options.grid_points.value_or(kDefaultGridPoints));
  opt.grid.exclusion_radius = args.sweep.exclusion_radius ? args.sweep.exclusion_radius : pf.options.exclusion_radius;
  opt.tol = args.sweep.tol.value_or(pf.options.tol.value_or(kDefaultSweepTol));
  const std::string norm = args.norm.value_or(pf.options.norm.value_or("spectral"));
  const auto norm_kind = parse_norm(norm);
  if (!norm_kind) {
    err << "error: unsupported norm \"" << norm << "\" (only \"spectral\")\n";
    return kUsage;
  }
  opt.norm = *norm_kind;
  opt.M = pf.M;

  const auto violations = check_feasible(pf.problem);
  if (!violations.empty()) {
    err << "infeasible interpolation data:\n";
    for (const auto& v : violations) err << "  " << v.describe() << '\n';
    if (!args.quiet) out << json{{"feasible", false}, {"violations", violations_to_json(violations)}}.dump(2) << '\n';
    return kInfeasible;
  }

  const ResultFile result = result_from_pipeline(pf, interpolate(pf.problem, opt));
  const std::string text = to_json(result).dump(2) + "\n";
  if (args.output) {
    std::ofstream f(*args.output);
    if (!f) {
      err << "error: cannot write " << *args.output << '\n';
      return kUsage;
    }
    f << text;
    if (!args.quiet) print_summary(out, result);
  } else {
    out << text;
  }
  return kOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const auto src = parse_polynomial_source(read_json_file(args.path), args.beta);
  const auto tag = parse_symmetry_tag(args.cls);
  if (!tag || (*tag != SymmetryTag::Even && *tag != SymmetryTag::Odd && *tag != SymmetryTag::Gpe &&
               *tag != SymmetryTag::NuGpe)) {
    err << "error: --class must be one of even, odd, gpe, nugpe\n";
    return kUsage;
  }
  const MatrixPolynomial& F = src.F;
  const double tol = args.sweep.tol.value_or(kDefaultSweepTol);
  const double coeff_tol = tol * (1.0 + F.max_abs_coeff());
  const double even_res = even_residual(F);
  const double odd_res = odd_residual(F);

  out << "class: " << args.cls << '\n';
  bool verdict = false;
  if (*tag == SymmetryTag::Even || *tag == SymmetryTag::Odd) {
    verdict = (*tag == SymmetryTag::Even ? even_res : odd_res) <= coeff_tol;
  } else {
    if (even_res > 1e-8 * (1.0 + F.max_abs_coeff())) {
      out << "verdict: fail\n"
          << "reason: polynomial is not Even\n"
          << "even_residual: " << format_number(even_res) << '\n';
      return kInfeasible;
    }
    const double omega_max = args.sweep.omega_max.value_or(src.omega_max.value_or(default_verify_omega(F, src.nodes)));
    GridSpec spec;
    spec.omega_max = omega_max;
    spec.points = args.sweep.grid_points.value_or(kDefaultGridPoints);
    spec.exclusion_radius = args.sweep.exclusion_radius;
    spec.validate();
    double rmax = 0.0;
    for (Complex x : src.nodes) rmax = std::max(rmax, std::abs(x));
    const double radius = spec.exclusion_radius.value_or(1e-4 * (1.0 + omega_max));
    const auto exclusions = axis_exclusions(src.nodes, radius, 1e-9 * (1.0 + rmax));
    SweepReport rep;
    if (*tag == SymmetryTag::Gpe) {
      rep = gpe_sweep(F, make_omega_grid(omega_max, spec.points), tol, exclusions);
    } else {
      const auto nu = args.nu ? args.nu : src.nu;
      if (!nu) {
        err << "error: --nu is required for class nugpe\n";
        return kUsage;
      }
      rep = nugpe_sweep(F, *nu, make_omega_grid(omega_max, spec.points), tol, exclusions);
    }
    verdict = rep.verdict;
    out << "worst_omega: " << format_number(rep.worst_omega) << '\n'
        << "worst_value: " << format_number(rep.worst_value) << '\n'
        << "grid_points: " << rep.grid.size() << '\n'
        << "evaluated: " << rep.evaluated << '\n'
        << "omega_max: " << format_number(omega_max) << '\n';
  }
  out << "even_residual: " << format_number(even_res) << '\n'
      << "odd_residual: " << format_number(odd_res) << '\n'
      << "verdict: " << (verdict ? "pass" : "fail") << '\n';
  return verdict ? kOk : kInfeasible;
}

int cmd_degree(const DegreeArgs& args, std::ostream& out, std::ostream& /*err*/) {
  const auto src = parse_polynomial_source(read_json_file(args.path), args.beta);
  out << src.F.mcmillan_degree(args.rank_tol) << '\n';
  return kOk;
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& /*err*/) {
  const auto src = parse_polynomial_source(read_json_file(args.path), args.beta);
  const MatrixPolynomial& F = src.F;
  print_matrix(out, args.adjoint ? F.hash_adjoint().evaluate(args.s) : F.evaluate(args.s));
  return kOk;
}

int cmd_reduce(const ReduceArgs& args, std::ostream& out, std::ostream& /*err*/) {
  const ProblemFile pf = parse_problem(read_json_file(args.problem_path));
  const auto violations = check_feasible(pf.problem);
  json doc{{"p", pf.problem.nodes.size()}, {"feasible", violations.empty()}, {"violations", violations_to_json(violations)}};
  if (!violations.empty()) {
    out << doc.dump(2) << '\n';
    return kInfeasible;
  }
  const ReducedData r = reduce_data(pf.problem);
  doc["n"] = r.size();
  doc["kept_indices"] = r.kept_indices;
  json nodes = json::array();
  for (Complex x : r.nodes) nodes.push_back(complex_to_json(x));
  doc["nodes"] = nodes;
  out << doc.dump(2) << '\n';
  return kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured matrix polynomial interpolation on the imaginary axis"};
  app.require_subcommand(1);

  SweepFlags sweep;
  auto add_sweep = [&sweep](CLI::App* sub) {
    sub->add_option("--tol", sweep.tol, "Eigenvalue tolerance for sweeps");
    sub->add_option("--omega-max", sweep.omega_max, "Half-width of the frequency sweep");
    sub->add_option("--grid-points", sweep.grid_points, "Number of sweep points");
    sub->add_option("--exclusion-radius", sweep.exclusion_radius, "Window skipped around on-axis nodes");
  };

  InterpolateArgs ia;
  auto* interp = app.add_subcommand("interpolate", "Solve an interpolation problem file");
  interp->add_option("problem", ia.problem_path, "Problem file (JSON)")->required();
  add_sweep(interp);
  interp->add_option("--norm", ia.norm, "Norm for the nuGPE bound (spectral)");
  interp->add_option("--output", ia.output, "Write the result file here instead of stdout");
  interp->add_flag("--quiet", ia.quiet, "Suppress the human-readable summary");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a polynomial or result file against a class");
  verify->add_option("file", va.path, "Polynomial or result file")->required();
  verify->add_option("--class", va.cls, "even | odd | gpe | nugpe")->required();
  verify->add_option("--nu", va.nu, "Negative inertia for nugpe");
  verify->add_option("--beta", va.beta, "Assemble P + beta Psi from a result file");
  add_sweep(verify);

  DegreeArgs da;
  auto* degree = app.add_subcommand("degree", "Print the McMillan degree");
  degree->add_option("file", da.path, "Polynomial or result file")->required();
  degree->add_option("--beta", da.beta, "Assemble P + beta Psi from a result file");
  degree->add_option("--rank-tol", da.rank_tol, "Relative singular value cutoff");

  EvalArgs ea;
  std::string point;
  auto* eval = app.add_subcommand("eval", "Evaluate F(s)");
  eval->add_option("file", ea.path, "Polynomial or result file")->required();
  eval->add_option("--s", point, "Point as re or re,im")->required();
  eval->add_option("--beta", ea.beta, "Assemble P + beta Psi from a result file");
  eval->add_flag("--adjoint", ea.adjoint, "Evaluate F#(s) = F(-conj(s))^* instead");

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "Check feasibility and print the reduced node set");
  reduce->add_option("problem", ra.problem_path, "Problem file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*interp) {
      ia.sweep = sweep;
      return cmd_interpolate(ia, out, err);
    }
    if (*verify) {
      va.sweep = sweep;
      return cmd_verify(va, out, err);
    }
    if (*degree) return cmd_degree(da, out, err);
    if (*eval) {
      const auto s = parse_point(point);
      if (!s) {
        err << "error: --s expects re or re,im\n";
        return kUsage;
      }
      ea.s = *s;
      return cmd_eval(ea, out, err);
    }
    if (*reduce) return cmd_reduce(ra, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleData& e) {
    err << e.what() << '\n';
    return kInfeasible;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace sympoly::cli
