#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sympoly/sympoly.hpp"

namespace sympoly::cli {

inline constexpr int kSchemaVersion = 1;

/// Malformed file content; `what()` carries the JSON path of the offending
/// field (or the parser position).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemOptions {
  std::optional<double> omega_max;
  std::optional<int> grid_points;
  std::optional<double> exclusion_radius;
  std::optional<double> tol;
  std::optional<std::string> norm;
};

struct ProblemFile {
  int schema_version = kSchemaVersion;
  InterpolationProblem problem;
  std::optional<Matrix> M;
  ProblemOptions options;
};

struct CertificateRecord {
  double arg_omega = 0.0;
  double value = 0.0;
  std::size_t grid_points = 0;
  double omega_max = 0.0;
  bool at_exclusion_boundary = false;
  std::vector<Exclusion> exclusions;
};

struct ResultFile {
  int schema_version = kSchemaVersion;
  std::string symmetry;
  std::string mode;
  std::optional<int> nu;
  std::vector<Complex> nodes;
  std::vector<Matrix> P_coeffs;
  std::vector<Matrix> psi_coeffs;
  Matrix psi_parameter;
  double beta_hat = 0.0;
  double beta_reported = 0.0;
  bool strict = false;
  CertificateRecord certificate;
  std::optional<int> refinement_r;
  std::optional<Matrix> refinement_T;
  std::size_t mcmillan_degree_P = 0;
  std::size_t mcmillan_degree_F = 0;
  std::vector<std::size_t> kept_indices;
  std::size_t original_points = 0;
  double node_residual = 0.0;
  double coefficient_symmetry_residual = 0.0;

  Eigen::Index dim() const { return P_coeffs.front().rows(); }
};

/// A polynomial to verify/evaluate, plus whatever sweep context the source
/// file carried.
struct PolynomialSource {
  MatrixPolynomial F;
  std::vector<Complex> nodes;
  std::optional<int> nu;
  std::optional<double> omega_max;
  std::optional<ResultFile> result;
};

nlohmann::json complex_to_json(Complex z);
nlohmann::json matrix_to_json(const Matrix& a);

ProblemFile parse_problem(const nlohmann::json& j);
ResultFile result_from_pipeline(const ProblemFile& input, const PipelineResult& r);
nlohmann::json to_json(const ResultFile& r);
ResultFile parse_result(const nlohmann::json& j);

/// A polynomial file {"schema_version", "m", "coeffs"[, "nodes"]} or a
/// result file, assembled at `beta` (default: the reported beta).
PolynomialSource parse_polynomial_source(const nlohmann::json& j, std::optional<double> beta);

nlohmann::json polynomial_to_json(const MatrixPolynomial& f, const std::vector<Complex>& nodes = {});

/// Reads and parses a JSON file; throws ParseError with the position.
nlohmann::json read_json_file(const std::string& path);

/// Fixed 17-significant-digit formatting.
std::string format_number(double x);
std::string format_complex(Complex z);

}  // namespace sympoly::cli
