#include "file_formats.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sympoly::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ParseError(path + ": " + msg); }

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

const json* optional_field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "non-finite number");
  return v;
}

long long read_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

Complex read_complex(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected {\"re\": ..., \"im\": ...}");
  return {read_number(field(j, path, "re"), path + ".re"), read_number(field(j, path, "im"), path + ".im")};
}

const json& read_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

// Row-major flat list of m*m complex entries.
Matrix read_matrix(const json& j, const std::string& path, Eigen::Index m) {
  read_array(j, path);
  if (static_cast<Eigen::Index>(j.size()) != m * m) {
    fail(path, "expected " + std::to_string(m * m) + " entries for a " + std::to_string(m) + "x" +
                   std::to_string(m) + " matrix, got " + std::to_string(j.size()));
  }
  Matrix a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto idx = static_cast<std::size_t>(i * m + k);
      a(i, k) = read_complex(j[idx], path + "[" + std::to_string(idx) + "]");
    }
  }
  return a;
}

std::vector<Matrix> read_matrix_list(const json& j, const std::string& path, Eigen::Index m) {
  read_array(j, path);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_matrix(j[i], path + "[" + std::to_string(i) + "]", m));
  return out;
}

std::vector<Complex> read_complex_list(const json& j, const std::string& path) {
  read_array(j, path);
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_complex(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

int read_schema(const json& j) {
  const auto v = read_integer(field(j, "$", "schema_version"), "$.schema_version");
  if (v != kSchemaVersion) fail("$.schema_version", "unsupported schema version " + std::to_string(v));
  return static_cast<int>(v);
}

Eigen::Index read_dim(const json& j) {
  const auto m = read_integer(field(j, "$", "m"), "$.m");
  if (m < 1) fail("$.m", "dimension must be positive");
  return static_cast<Eigen::Index>(m);
}

SymmetryClass read_symmetry(const json& j, Eigen::Index m) {
  const std::string path = "$.symmetry";
  const auto& name_j = field(j, path, "class");
  if (!name_j.is_string()) fail(path + ".class", "expected a string");
  const auto tag = parse_symmetry_tag(name_j.get<std::string>());
  if (!tag) fail(path + ".class", "unknown symmetry class \"" + name_j.get<std::string>() + "\"");
  try {
    switch (*tag) {
      case SymmetryTag::Even: return SymmetryClass::even();
      case SymmetryTag::Odd: return SymmetryClass::odd();
      case SymmetryTag::Gpe: return SymmetryClass::gpe();
      case SymmetryTag::JEven: return SymmetryClass::j_even(read_matrix(field(j, path, "J"), path + ".J", m));
      case SymmetryTag::GeneralAB:
        return SymmetryClass::general_ab(read_matrix(field(j, path, "A"), path + ".A", m),
                                         read_matrix(field(j, path, "B"), path + ".B", m));
      case SymmetryTag::NuGpe: {
        const auto nu = read_integer(field(j, path, "nu"), path + ".nu");
        Matrix R = Matrix::Identity(m, m);
        if (const auto* r = optional_field(j, "R")) R = read_matrix(*r, path + ".R", m);
        return SymmetryClass::nu_gpe(static_cast<int>(nu), std::move(R));
      }
    }
  } catch (const InvalidInput& e) {
    fail(path, e.what());
  }
  fail(path, "unreachable");
}

json exclusion_to_json(const Exclusion& e) { return json::array({e.lo, e.hi}); }

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_number(z.real());
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json matrix_to_json(const Matrix& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) out.push_back(complex_to_json(a(i, k)));
  }
  return out;
}

namespace {

json matrix_list_to_json(const std::vector<Matrix>& list) {
  json out = json::array();
  for (const auto& a : list) out.push_back(matrix_to_json(a));
  return out;
}

json complex_list_to_json(const std::vector<Complex>& list) {
  json out = json::array();
  for (Complex z : list) out.push_back(complex_to_json(z));
  return out;
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

ProblemFile parse_problem(const json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  ProblemFile out;
  out.schema_version = read_schema(j);
  const auto m = read_dim(j);
  out.problem.nodes = read_complex_list(field(j, "$", "nodes"), "$.nodes");
  out.problem.values = read_matrix_list(field(j, "$", "values"), "$.values", m);
  if (out.problem.nodes.size() != out.problem.values.size()) {
    fail("$.values", "has " + std::to_string(out.problem.values.size()) + " entries but $.nodes has " +
                         std::to_string(out.problem.nodes.size()));
  }
  if (out.problem.nodes.empty()) fail("$.nodes", "at least one node is required");
  out.problem.symmetry = read_symmetry(field(j, "$", "symmetry"), m);
  if (const auto* mt = optional_field(j, "match_tol")) out.problem.match_tol = read_number(*mt, "$.match_tol");
  if (const auto* M = optional_field(j, "M")) out.M = read_matrix(*M, "$.M", m);
  if (const auto* o = optional_field(j, "options")) {
    if (!o->is_object()) fail("$.options", "expected an object");
    if (const auto* v = optional_field(*o, "omega_max")) out.options.omega_max = read_number(*v, "$.options.omega_max");
    if (const auto* v = optional_field(*o, "grid_points")) {
      out.options.grid_points = static_cast<int>(read_integer(*v, "$.options.grid_points"));
    }
    if (const auto* v = optional_field(*o, "exclusion_radius")) {
      out.options.exclusion_radius = read_number(*v, "$.options.exclusion_radius");
    }
    if (const auto* v = optional_field(*o, "tol")) out.options.tol = read_number(*v, "$.options.tol");
    if (const auto* v = optional_field(*o, "norm")) {
      if (!v->is_string()) fail("$.options.norm", "expected a string");
      out.options.norm = v->get<std::string>();
    }
  }
  return out;
}

ResultFile result_from_pipeline(const ProblemFile& input, const PipelineResult& r) {
  ResultFile out;
  out.symmetry = std::string(input.problem.symmetry.name());
  out.mode = std::string(to_string(r.family.mode));
  if (const auto* n = std::get_if<SymmetryClass::NuGpe>(&input.problem.symmetry.payload())) out.nu = n->nu;
  out.nodes = r.reduced.nodes;
  out.P_coeffs = r.family.P.coeffs();
  out.psi_coeffs = r.family.psi.expansion().coeffs();
  out.psi_parameter = r.family.psi.parameter();
  out.beta_hat = r.family.beta_hat;
  out.beta_reported = r.beta_reported;
  out.strict = r.family.strict();
  const auto& c = r.family.certificate;
  out.certificate = {c.arg_omega, c.value, c.grid.size(), c.omega_max, c.at_exclusion_boundary, c.exclusions};
  if (r.family.refinement) {
    out.refinement_r = r.family.refinement->r;
    out.refinement_T = r.family.refinement->T;
  }
  out.mcmillan_degree_P = r.mcmillan_degree_P;
  out.mcmillan_degree_F = r.mcmillan_degree_F;
  out.kept_indices = r.reduced.kept_indices;
  out.original_points = input.problem.nodes.size();
  out.node_residual = r.residuals.node;
  out.coefficient_symmetry_residual = r.residuals.coefficient_symmetry;
  return out;
}

json to_json(const ResultFile& r) {
  json cert{{"arg_omega", r.certificate.arg_omega},
            {"value", r.certificate.value},
            {"grid_points", r.certificate.grid_points},
            {"omega_max", r.certificate.omega_max},
            {"at_exclusion_boundary", r.certificate.at_exclusion_boundary},
            {"exclusions", json::array()}};
  for (const auto& e : r.certificate.exclusions) cert["exclusions"].push_back(exclusion_to_json(e));

  json refinement = nullptr;
  if (r.refinement_r) {
    refinement = json{{"r", *r.refinement_r}, {"T", r.refinement_T ? matrix_to_json(*r.refinement_T) : json(nullptr)}};
  }
  return json{
      {"schema_version", r.schema_version},
      {"kind", "result"},
      {"m", r.dim()},
      {"symmetry", r.symmetry},
      {"nu", r.nu ? json(*r.nu) : json(nullptr)},
      {"mode", r.mode},
      {"nodes", complex_list_to_json(r.nodes)},
      {"P_coeffs", matrix_list_to_json(r.P_coeffs)},
      {"psi_coeffs", matrix_list_to_json(r.psi_coeffs)},
      {"psi_parameter", matrix_to_json(r.psi_parameter)},
      {"beta_hat", r.beta_hat},
      {"beta_reported", r.beta_reported},
      {"strict", r.strict},
      {"certificate", cert},
      {"refinement", refinement},
      {"mcmillan_degree_P", r.mcmillan_degree_P},
      {"mcmillan_degree_F_at", json{{"beta", r.beta_reported}, {"degree", r.mcmillan_degree_F}}},
      {"diagnostics",
       json{{"feasibility", json::array()},
            {"reduction", json{{"p", r.original_points}, {"n", r.kept_indices.size()}, {"kept_indices", r.kept_indices}}},
            {"residuals",
             json{{"node", r.node_residual}, {"coefficient_symmetry", r.coefficient_symmetry_residual}}}}},
  };
}

ResultFile parse_result(const json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  ResultFile r;
  r.schema_version = read_schema(j);
  const auto m = read_dim(j);
  const auto& sym = field(j, "$", "symmetry");
  if (!sym.is_string()) fail("$.symmetry", "expected a string");
  r.symmetry = sym.get<std::string>();
  const auto& mode = field(j, "$", "mode");
  if (!mode.is_string() || !parse_family_mode(mode.get<std::string>())) fail("$.mode", "unknown mode");
  r.mode = mode.get<std::string>();
  if (const auto* nu = optional_field(j, "nu")) r.nu = static_cast<int>(read_integer(*nu, "$.nu"));
  r.nodes = read_complex_list(field(j, "$", "nodes"), "$.nodes");
  r.P_coeffs = read_matrix_list(field(j, "$", "P_coeffs"), "$.P_coeffs", m);
  r.psi_coeffs = read_matrix_list(field(j, "$", "psi_coeffs"), "$.psi_coeffs", m);
  if (r.P_coeffs.empty()) fail("$.P_coeffs", "empty coefficient list");
  if (r.psi_coeffs.empty()) fail("$.psi_coeffs", "empty coefficient list");
  r.psi_parameter = read_matrix(field(j, "$", "psi_parameter"), "$.psi_parameter", m);
  r.beta_hat = read_number(field(j, "$", "beta_hat"), "$.beta_hat");
  r.beta_reported = read_number(field(j, "$", "beta_reported"), "$.beta_reported");
  const auto& strict = field(j, "$", "strict");
  if (!strict.is_boolean()) fail("$.strict", "expected a boolean");
  r.strict = strict.get<bool>();

  const auto& c = field(j, "$", "certificate");
  r.certificate.arg_omega = read_number(field(c, "$.certificate", "arg_omega"), "$.certificate.arg_omega");
  r.certificate.value = read_number(field(c, "$.certificate", "value"), "$.certificate.value");
  r.certificate.grid_points =
      static_cast<std::size_t>(read_integer(field(c, "$.certificate", "grid_points"), "$.certificate.grid_points"));
  r.certificate.omega_max = read_number(field(c, "$.certificate", "omega_max"), "$.certificate.omega_max");
  const auto& b = field(c, "$.certificate", "at_exclusion_boundary");
  if (!b.is_boolean()) fail("$.certificate.at_exclusion_boundary", "expected a boolean");
  r.certificate.at_exclusion_boundary = b.get<bool>();
  const auto& ex = read_array(field(c, "$.certificate", "exclusions"), "$.certificate.exclusions");
  for (std::size_t i = 0; i < ex.size(); ++i) {
    const std::string p = "$.certificate.exclusions[" + std::to_string(i) + "]";
    if (!ex[i].is_array() || ex[i].size() != 2) fail(p, "expected [lo, hi]");
    r.certificate.exclusions.push_back({read_number(ex[i][0], p + "[0]"), read_number(ex[i][1], p + "[1]")});
  }

  if (const auto* ref = optional_field(j, "refinement")) {
    r.refinement_r = static_cast<int>(read_integer(field(*ref, "$.refinement", "r"), "$.refinement.r"));
    if (const auto* t = optional_field(*ref, "T")) r.refinement_T = read_matrix(*t, "$.refinement.T", m);
  }
  r.mcmillan_degree_P =
      static_cast<std::size_t>(read_integer(field(j, "$", "mcmillan_degree_P"), "$.mcmillan_degree_P"));
  const auto& fat = field(j, "$", "mcmillan_degree_F_at");
  r.mcmillan_degree_F = static_cast<std::size_t>(
      read_integer(field(fat, "$.mcmillan_degree_F_at", "degree"), "$.mcmillan_degree_F_at.degree"));

  const auto& diag = field(j, "$", "diagnostics");
  const auto& red = field(diag, "$.diagnostics", "reduction");
  r.original_points = static_cast<std::size_t>(read_integer(field(red, "$.diagnostics.reduction", "p"),
                                                            "$.diagnostics.reduction.p"));
  const auto& kept = read_array(field(red, "$.diagnostics.reduction", "kept_indices"),
                                "$.diagnostics.reduction.kept_indices");
  for (std::size_t i = 0; i < kept.size(); ++i) {
    r.kept_indices.push_back(static_cast<std::size_t>(
        read_integer(kept[i], "$.diagnostics.reduction.kept_indices[" + std::to_string(i) + "]")));
  }
  const auto& res = field(diag, "$.diagnostics", "residuals");
  r.node_residual = read_number(field(res, "$.diagnostics.residuals", "node"), "$.diagnostics.residuals.node");
  r.coefficient_symmetry_residual = read_number(field(res, "$.diagnostics.residuals", "coefficient_symmetry"),
                                                "$.diagnostics.residuals.coefficient_symmetry");
  return r;
}

json polynomial_to_json(const MatrixPolynomial& f, const std::vector<Complex>& nodes) {
  json out{{"schema_version", kSchemaVersion}, {"m", f.dim()}, {"coeffs", matrix_list_to_json(f.coeffs())}};
  if (!nodes.empty()) out["nodes"] = complex_list_to_json(nodes);
  return out;
}

PolynomialSource parse_polynomial_source(const json& j, std::optional<double> beta) {
  if (!j.is_object()) fail("$", "expected an object");
  if (j.contains("P_coeffs")) {
    ResultFile r = parse_result(j);
    const double b = beta.value_or(r.beta_reported);
    MatrixPolynomial F = MatrixPolynomial(r.P_coeffs) + Complex(b) * MatrixPolynomial(r.psi_coeffs);
    PolynomialSource src{std::move(F), r.nodes, r.nu, r.certificate.omega_max, std::nullopt};
    src.result = std::move(r);
    return src;
  }
  read_schema(j);
  const auto m = read_dim(j);
  auto coeffs = read_matrix_list(field(j, "$", "coeffs"), "$.coeffs", m);
  if (coeffs.empty()) fail("$.coeffs", "empty coefficient list");
  std::vector<Complex> nodes;
  if (const auto* n = optional_field(j, "nodes")) nodes = read_complex_list(*n, "$.nodes");
  std::optional<int> nu;
  if (const auto* v = optional_field(j, "nu")) nu = static_cast<int>(read_integer(*v, "$.nu"));
  MatrixPolynomial F(std::move(coeffs));
  if (beta && *beta != 0.0) fail("$", "--beta applies to result files only");
  return PolynomialSource{std::move(F), std::move(nodes), nu, std::nullopt, std::nullopt};
}

}  // namespace sympoly::cli
