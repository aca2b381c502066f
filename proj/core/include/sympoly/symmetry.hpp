#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sympoly/matrix_polynomial.hpp"
#include "sympoly/types.hpp"

namespace sympoly {

/// Parameters above this 2-norm condition number are treated as singular.
inline constexpr double kMaxParameterCondition = 1e12;

enum class SymmetryTag { Even, Odd, JEven, GeneralAB, Gpe, NuGpe };

std::string_view to_string(SymmetryTag tag);
std::optional<SymmetryTag> parse_symmetry_tag(std::string_view name);

/// Symmetry class of an interpolant with respect to the #-adjoint
/// F#(s) = F(-conj(s))^*. Every class is an instance of P# = A P B; the
/// positivity classes (GPE, nuGPE) are Even with an extra sign condition
/// on the imaginary axis.
class SymmetryClass {
 public:
  struct Even {};
  struct Odd {};
  struct JEven {
    Matrix J;
  };
  struct GeneralAB {
    Matrix A;
    Matrix B;
  };
  struct Gpe {};
  struct NuGpe {
    int nu;
    Matrix R;
  };

  static SymmetryClass even() { return SymmetryClass(Even{}); }
  static SymmetryClass odd() { return SymmetryClass(Odd{}); }
  static SymmetryClass gpe() { return SymmetryClass(Gpe{}); }
  /// J must be a Hermitian involution (J = J* = J^-1) to 1e-10.
  static SymmetryClass j_even(Matrix J);
  /// A and B must be square, same size and not singular.
  static SymmetryClass general_ab(Matrix A, Matrix B);
  /// 1 <= nu <= m-1 and R nonsingular.
  static SymmetryClass nu_gpe(int nu, Matrix R);

  SymmetryTag tag() const;
  std::string_view name() const { return to_string(tag()); }

  /// Dimension fixed by the class payload, if any.
  std::optional<Eigen::Index> payload_dim() const;

  /// The (A, B) pair of the relation P# = A P B for dimension m.
  /// Even/GPE/nuGPE -> (I, I); Odd -> (iI, iI); JEven -> (J, J).
  std::pair<Matrix, Matrix> structure_pair(Eigen::Index m) const;

  const auto& payload() const { return payload_; }

 private:
  using Payload = std::variant<Even, Odd, JEven, GeneralAB, Gpe, NuGpe>;
  explicit SymmetryClass(Payload p) : payload_(std::move(p)) {}
  Payload payload_;
};

/// diag{-I_nu, I_{m-nu}}.
Matrix signature_matrix(Eigen::Index m, int nu);

struct Inertia {
  int negative = 0;
  int zero = 0;
  int positive = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sign counts of the eigenvalues of the Hermitian part of `h`, with
/// |lambda| <= tol counted as zero.
Inertia inertia(const Matrix& h, double tol);

/// Smallest eigenvalue of the Hermitian part of `h`.
double min_eigenvalue(const Matrix& h);

// Coefficient-level membership checks.

/// max_k || C_k^* - (-1)^k A C_k B ||_max.
double general_ab_residual(const MatrixPolynomial& f, const Matrix& A, const Matrix& B);
double even_residual(const MatrixPolynomial& f);
double odd_residual(const MatrixPolynomial& f);

bool is_even(const MatrixPolynomial& f, double tol);
bool is_odd(const MatrixPolynomial& f, double tol);
bool satisfies_general_ab(const MatrixPolynomial& f, const Matrix& A, const Matrix& B, double tol);

// Sampled sweeps along s = i*omega.

/// Closed interval of omega values skipped by a sweep.
struct Exclusion {
  double lo;
  double hi;
  bool contains(double w) const { return w >= lo && w <= hi; }
};

bool excluded(double omega, std::span<const Exclusion> exclusions);

/// Symmetric hybrid grid on [-omega_max, omega_max]: about half the points
/// uniformly spaced, half logarithmically spaced toward 0, plus omega = 0.
/// Sorted ascending, no duplicates.
std::vector<double> make_omega_grid(double omega_max, int points);

struct SweepReport {
  std::vector<double> grid;
  /// gpe: smallest lambda_min seen; nugpe: largest inertia mismatch count.
  double worst_value = 0.0;
  double worst_omega = 0.0;
  bool verdict = true;
  /// Number of grid points actually examined (not excluded).
  std::size_t evaluated = 0;
};

/// Requires f Even. Verdict true iff lambda_min(F(i w)) >= -tol at every
/// non-excluded grid point.
SweepReport gpe_sweep(const MatrixPolynomial& f, std::vector<double> grid, double tol,
                      std::span<const Exclusion> exclusions = {});

/// Requires f Even and 1 <= nu <= m-1. Verdict true iff at every non-excluded
/// grid point F(i w) has exactly nu eigenvalues < -tol and m - nu > tol.
/// When the verdict holds, worst_value is 0 and worst_omega is where the
/// smallest |lambda| occurred.
SweepReport nugpe_sweep(const MatrixPolynomial& f, int nu, std::vector<double> grid, double tol,
                        std::span<const Exclusion> exclusions = {});

}  // namespace sympoly
