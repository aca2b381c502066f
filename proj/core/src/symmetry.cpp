#include "sympoly/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sympoly {
namespace {

void require_square(const Matrix& a, const char* what) {
  if (a.rows() < 1 || a.rows() != a.cols()) throw InvalidInput(std::string(what) + " must be a nonempty square matrix");
  require_finite(a, what);
}

void require_nonsingular(const Matrix& a, const char* what) {
  require_square(a, what);
  const double cond = condition_number(a);
  if (!(cond <= kMaxParameterCondition)) {
    throw InvalidInput(std::string(what) + " is singular (condition number " + std::to_string(cond) + ")");
  }
}

// Tolerance used when a sweep checks its Even precondition.
double even_guard(const MatrixPolynomial& f) { return 1e-8 * (1.0 + f.max_abs_coeff()); }

// Preferred arg when two grid points tie: smaller |w|, then negative w.
bool tie_preferred(double w, double incumbent) {
  if (std::abs(w) != std::abs(incumbent)) return std::abs(w) < std::abs(incumbent);
  return w < incumbent;
}

}  // namespace

std::string_view to_string(SymmetryTag tag) {
  switch (tag) {
    case SymmetryTag::Even: return "even";
    case SymmetryTag::Odd: return "odd";
    case SymmetryTag::JEven: return "jeven";
    case SymmetryTag::GeneralAB: return "general_ab";
    case SymmetryTag::Gpe: return "gpe";
    case SymmetryTag::NuGpe: return "nugpe";
  }
  return "unknown";
}

std::optional<SymmetryTag> parse_symmetry_tag(std::string_view name) {
  for (auto tag : {SymmetryTag::Even, SymmetryTag::Odd, SymmetryTag::JEven, SymmetryTag::GeneralAB, SymmetryTag::Gpe,
                   SymmetryTag::NuGpe}) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

SymmetryClass SymmetryClass::j_even(Matrix J) {
  require_nonsingular(J, "J");
  const double herm = (J - J.adjoint()).cwiseAbs().maxCoeff();
  const double invol = (J * J - Matrix::Identity(J.rows(), J.cols())).cwiseAbs().maxCoeff();
  if (herm > 1e-10 || invol > 1e-10) {
    throw InvalidInput("J must satisfy J = J* = J^-1 (residuals " + std::to_string(herm) + ", " +
                       std::to_string(invol) + ")");
  }
  return SymmetryClass(JEven{std::move(J)});
}

SymmetryClass SymmetryClass::general_ab(Matrix A, Matrix B) {
  require_nonsingular(A, "A");
  require_nonsingular(B, "B");
  if (A.rows() != B.rows()) throw InvalidInput("A and B must have the same dimension");
  return SymmetryClass(GeneralAB{std::move(A), std::move(B)});
}

SymmetryClass SymmetryClass::nu_gpe(int nu, Matrix R) {
  require_nonsingular(R, "R");
  if (nu < 1 || nu > R.rows() - 1) {
    throw InvalidInput("nu must lie in [1, m-1], got " + std::to_string(nu));
  }
  return SymmetryClass(NuGpe{nu, std::move(R)});
}

SymmetryTag SymmetryClass::tag() const { return static_cast<SymmetryTag>(payload_.index()); }

std::optional<Eigen::Index> SymmetryClass::payload_dim() const {
  if (const auto* j = std::get_if<JEven>(&payload_)) return j->J.rows();
  if (const auto* ab = std::get_if<GeneralAB>(&payload_)) return ab->A.rows();
  if (const auto* n = std::get_if<NuGpe>(&payload_)) return n->R.rows();
  return std::nullopt;
}

std::pair<Matrix, Matrix> SymmetryClass::structure_pair(Eigen::Index m) const {
  if (auto d = payload_dim(); d && *d != m) {
    throw InvalidInput("symmetry payload is " + std::to_string(*d) + "x" + std::to_string(*d) +
                       " but the data is " + std::to_string(m) + "x" + std::to_string(m));
  }
  const Matrix id = Matrix::Identity(m, m);
  switch (tag()) {
    case SymmetryTag::Odd: return {kI * id, kI * id};
    case SymmetryTag::JEven: {
      const auto& J = std::get<JEven>(payload_).J;
      return {J, J};
    }
    case SymmetryTag::GeneralAB: {
      const auto& ab = std::get<GeneralAB>(payload_);
      return {ab.A, ab.B};
    }
    default: return {id, id};
  }
}

Matrix signature_matrix(Eigen::Index m, int nu) {
  Matrix d = Matrix::Identity(m, m);
  for (int i = 0; i < nu; ++i) d(i, i) = -1.0;
  return d;
}

Inertia inertia(const Matrix& h, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  Inertia out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l < -tol) {
      ++out.negative;
    } else if (l > tol) {
      ++out.positive;
    } else {
      ++out.zero;
    }
  }
  return out;
}

double min_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double general_ab_residual(const MatrixPolynomial& f, const Matrix& A, const Matrix& B) {
  if (A.rows() != f.dim() || B.rows() != f.dim()) throw InvalidInput("general_ab_residual: dimension mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
    const Matrix& c = f.coeff(k);
    Matrix rhs = A * c * B;
    if (k % 2 == 1) rhs = -rhs;
    worst = std::max(worst, (c.adjoint() - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

double even_residual(const MatrixPolynomial& f) { return MatrixPolynomial::max_coeff_distance(f, f.hash_adjoint()); }

double odd_residual(const MatrixPolynomial& f) {
  return MatrixPolynomial::max_coeff_distance(f, Complex(-1.0) * f.hash_adjoint());
}

bool is_even(const MatrixPolynomial& f, double tol) { return even_residual(f) <= tol; }

bool is_odd(const MatrixPolynomial& f, double tol) { return odd_residual(f) <= tol; }

bool satisfies_general_ab(const MatrixPolynomial& f, const Matrix& A, const Matrix& B, double tol) {
  require_nonsingular(A, "A");
  require_nonsingular(B, "B");
  return general_ab_residual(f, A, B) <= tol;
}

bool excluded(double omega, std::span<const Exclusion> exclusions) {
  return std::any_of(exclusions.begin(), exclusions.end(), [omega](const Exclusion& e) { return e.contains(omega); });
}

std::vector<double> make_omega_grid(double omega_max, int points) {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw InvalidInput("grid: omega_max must be positive");
  if (points < 1) throw InvalidInput("grid: points must be positive");
  // 1 (zero) + 2 * (linear + log) ~ points
  const int half = std::max(1, (points - 1) / 2);
  const int n_lin = std::max(1, half / 2);
  const int n_log = std::max(0, half - n_lin);
  std::vector<double> pos;
  pos.reserve(static_cast<std::size_t>(half));
  for (int k = 1; k <= n_lin; ++k) pos.push_back(omega_max * k / n_lin);
  constexpr double kDecades = 8.0;
  for (int k = 0; k < n_log; ++k) {
    const double t = n_log == 1 ? 0.0 : static_cast<double>(k) / (n_log - 1);
    pos.push_back(omega_max * std::pow(10.0, -kDecades * (1.0 - t)));
  }
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());

  std::vector<double> grid;
  grid.reserve(2 * pos.size() + 1);
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) grid.push_back(-*it);
  grid.push_back(0.0);
  grid.insert(grid.end(), pos.begin(), pos.end());
  return grid;
}

SweepReport gpe_sweep(const MatrixPolynomial& f, std::vector<double> grid, double tol,
                      std::span<const Exclusion> exclusions) {
  if (grid.empty()) throw InvalidInput("gpe_sweep: empty grid");
  if (!(tol >= 0.0)) throw InvalidInput("gpe_sweep: tol must be nonnegative");
  if (!is_even(f, even_guard(f))) {
    throw InvalidInput("gpe_sweep: polynomial is not Even (residual " + std::to_string(even_residual(f)) + ")");
  }
  SweepReport rep;
  rep.worst_value = std::numeric_limits<double>::infinity();
  for (double w : grid) {
    if (excluded(w, exclusions)) continue;
    ++rep.evaluated;
    const double l = min_eigenvalue(f.evaluate(Complex(0.0, w)));
    if (l < rep.worst_value || (l == rep.worst_value && tie_preferred(w, rep.worst_omega))) {
      rep.worst_value = l;
      rep.worst_omega = w;
    }
  }
  if (rep.evaluated == 0) {
    rep.worst_value = 0.0;
    rep.worst_omega = grid.front();
  }
  rep.verdict = rep.worst_value >= -tol;
  rep.grid = std::move(grid);
  return rep;
}

SweepReport nugpe_sweep(const MatrixPolynomial& f, int nu, std::vector<double> grid, double tol,
                        std::span<const Exclusion> exclusions) {
  if (grid.empty()) throw InvalidInput("nugpe_sweep: empty grid");
  const auto m = f.dim();
  if (nu < 1 || nu > m - 1) throw InvalidInput("nugpe_sweep: nu must lie in [1, m-1]");
  if (!is_even(f, even_guard(f))) {
    throw InvalidInput("nugpe_sweep: polynomial is not Even (residual " + std::to_string(even_residual(f)) + ")");
  }
  SweepReport rep;
  int worst_mismatch = -1;
  double smallest_margin = std::numeric_limits<double>::infinity();
  double margin_omega = grid.front();
  for (double w : grid) {
    if (excluded(w, exclusions)) continue;
    ++rep.evaluated;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(f.evaluate(Complex(0.0, w))), Eigen::EigenvaluesOnly);
    int neg = 0;
    int pos = 0;
    double margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double l = es.eigenvalues()(i);
      if (l < -tol) ++neg;
      if (l > tol) ++pos;
      margin = std::min(margin, std::abs(l));
    }
    const int mismatch = std::abs(neg - nu) + std::abs(pos - static_cast<int>(m - nu));
    if (mismatch > worst_mismatch || (mismatch == worst_mismatch && mismatch > 0 && tie_preferred(w, rep.worst_omega))) {
      worst_mismatch = mismatch;
      rep.worst_omega = w;
    }
    if (margin < smallest_margin || (margin == smallest_margin && tie_preferred(w, margin_omega))) {
      smallest_margin = margin;
      margin_omega = w;
    }
  }
  if (worst_mismatch <= 0) {
    rep.worst_value = 0.0;
    rep.worst_omega = rep.evaluated == 0 ? grid.front() : margin_omega;
    rep.verdict = true;
  } else {
    rep.worst_value = worst_mismatch;
    rep.verdict = false;
  }
  rep.grid = std::move(grid);
  return rep;
}

}  // namespace sympoly
