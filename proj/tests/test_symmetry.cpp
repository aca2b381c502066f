#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sympoly/symmetry.hpp"

using namespace sympoly;
using sympoly::testing::random_hermitian;
using sympoly::testing::random_matrix;

namespace {

MatrixPolynomial diag2(std::vector<std::pair<double, double>> d) {
  std::vector<Matrix> c;
  for (auto [a, b] : d) {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 0) = a;
    x(1, 1) = b;
    c.push_back(x);
  }
  return MatrixPolynomial(std::move(c));
}

// Even polynomial with Hermitian even and skew-Hermitian odd coefficients.
MatrixPolynomial random_even(std::mt19937_64& rng, Eigen::Index m, std::size_t q) {
  std::vector<Matrix> c;
  for (std::size_t k = 0; k <= q; ++k) {
    Matrix h = random_hermitian(rng, m);
    c.push_back(k % 2 == 0 ? h : Matrix(kI * h));
  }
  return MatrixPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("symmetry class construction and validation") {
  CHECK(SymmetryClass::even().tag() == SymmetryTag::Even);
  CHECK(SymmetryClass::odd().name() == "odd");

  Matrix J = Matrix::Identity(2, 2);
  J(1, 1) = -1.0;
  CHECK(SymmetryClass::j_even(J).tag() == SymmetryTag::JEven);
  Matrix notInvolution = 2.0 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(SymmetryClass::j_even(notInvolution), InvalidInput);

  CHECK_THROWS_AS(SymmetryClass::general_ab(Matrix::Zero(2, 2), Matrix::Identity(2, 2)), InvalidInput);
  Matrix nearly = Matrix::Identity(2, 2);
  nearly(1, 1) = 1e-14;
  CHECK_THROWS_AS(SymmetryClass::general_ab(nearly, Matrix::Identity(2, 2)), InvalidInput);

  CHECK_THROWS_AS(SymmetryClass::nu_gpe(0, Matrix::Identity(2, 2)), InvalidInput);
  CHECK_THROWS_AS(SymmetryClass::nu_gpe(2, Matrix::Identity(2, 2)), InvalidInput);
  CHECK(SymmetryClass::nu_gpe(1, Matrix::Identity(3, 3)).tag() == SymmetryTag::NuGpe);

  CHECK(parse_symmetry_tag("general_ab") == SymmetryTag::GeneralAB);
  CHECK_FALSE(parse_symmetry_tag("hermitian").has_value());
}

TEST_CASE("structure pairs per class") {
  const auto [A, B] = SymmetryClass::odd().structure_pair(2);
  CHECK((A - kI * Matrix::Identity(2, 2)).norm() == 0.0);
  CHECK((B - kI * Matrix::Identity(2, 2)).norm() == 0.0);
  // B = (A^*)^-1
  CHECK((B * A.adjoint() - Matrix::Identity(2, 2)).norm() < 1e-15);
  CHECK_THROWS_AS(SymmetryClass::nu_gpe(1, Matrix::Identity(2, 2)).structure_pair(3), InvalidInput);
}

TEST_CASE("is_even examples") {
  CHECK(is_even(MatrixPolynomial::scalar({-13.0, 0.0, 34.0, 0.0, -3.0}), 1e-12));
  // real s term is Hermitian, not skew-Hermitian
  CHECK_FALSE(is_even(MatrixPolynomial::scalar({-121.0, 180.0, -45.0}), 1e-12));
  const MatrixPolynomial is(std::vector<Matrix>{Matrix::Zero(2, 2), Matrix(kI * Matrix::Identity(2, 2))});
  CHECK(is_even(is, 1e-12));
}

TEST_CASE("is_odd examples") {
  const MatrixPolynomial s(std::vector<Matrix>{Matrix::Zero(2, 2), Matrix::Identity(2, 2)});
  CHECK(is_odd(s, 1e-12));
  CHECK_FALSE(is_odd(MatrixPolynomial::constant(Matrix::Identity(2, 2)), 1e-12));
  CHECK(is_odd(MatrixPolynomial::scalar({0.0, -4.0, 0.0, 1.0}), 1e-12));
}

TEST_CASE("is_even and is_odd are exclusive for nonzero polynomials") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_even(rng, 2, static_cast<std::size_t>(trial % 5));
    CHECK(is_even(f, 1e-12));
    CHECK_FALSE(is_odd(f, 1e-12));
    const auto g = Complex(kI) * f;  // i * Even is Odd
    CHECK(is_odd(g, 1e-12));
    CHECK_FALSE(is_even(g, 1e-12));
  }
  const MatrixPolynomial zero(2);
  CHECK(is_even(zero, 0.0));
  CHECK(is_odd(zero, 0.0));
}

TEST_CASE("satisfies_general_ab examples") {
  const Matrix I = Matrix::Identity(2, 2);
  CHECK(satisfies_general_ab(MatrixPolynomial::scalar({-13.0, 0.0, 34.0}), Matrix::Identity(1, 1),
                             Matrix::Identity(1, 1), 1e-12));
  const Matrix A = kI * I;
  const Matrix B = A.adjoint().inverse();
  const MatrixPolynomial s(std::vector<Matrix>{Matrix::Zero(2, 2), I});
  CHECK(satisfies_general_ab(s, A, B, 1e-12));

  Matrix J = I;
  J(1, 1) = -1.0;
  const auto f = diag2({{0, 0}, {0, 0}, {1, -1}});
  CHECK(satisfies_general_ab(f, J, J, 1e-12));
  CHECK_THROWS_AS(satisfies_general_ab(f, Matrix::Zero(2, 2), J, 1e-12), InvalidInput);
}

TEST_CASE("Even polynomials are Hermitian on the axis; Odd ones skew-Hermitian") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> ud(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_even(rng, 3, 5);
    const Matrix v = f.evaluate(Complex(0.0, ud(rng)));
    CHECK((v - v.adjoint()).norm() <= 1e-9 * (1.0 + v.norm()));
    Eigen::ComplexEigenSolver<Matrix> es(v, false);
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(std::abs(es.eigenvalues()(i).imag()) <= 1e-9 * (1.0 + v.norm()));

    const auto g = Complex(kI) * f;
    const Matrix u = g.evaluate(Complex(0.0, ud(rng)));
    CHECK((u + u.adjoint()).norm() <= 1e-9 * (1.0 + u.norm()));
  }
}

TEST_CASE("omega grid") {
  const auto g = make_omega_grid(40.0, 4096);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
  CHECK(g.front() == -40.0);
  CHECK(g.back() == 40.0);
  CHECK(std::find(g.begin(), g.end(), 0.0) != g.end());
  CHECK(g.size() <= 4097);
  CHECK(g.size() >= 4000);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == -g[g.size() - 1 - i]);
  CHECK_THROWS_AS(make_omega_grid(0.0, 10), InvalidInput);
}

TEST_CASE("gpe_sweep examples") {
  const auto grid = make_omega_grid(40.0, 4096);
  const auto p = MatrixPolynomial::scalar({5.0, 0.0, -1.0});
  const auto rep = gpe_sweep(p, grid, 1e-9);
  CHECK(rep.verdict);
  CHECK(rep.worst_value == doctest::Approx(5.0));
  CHECK(rep.worst_omega == 0.0);
  CHECK(std::find(rep.grid.begin(), rep.grid.end(), rep.worst_omega) != rep.grid.end());

  const auto p4 = MatrixPolynomial::scalar({-13.0, 0.0, 34.0, 0.0, -3.0});
  const auto rep4 = gpe_sweep(p4, grid, 1e-9);
  CHECK_FALSE(rep4.verdict);
  // -3w^4 - 34w^2 - 13 on the axis: -13 at w = 0, more negative farther out
  CHECK(min_eigenvalue(p4.evaluate(0.0)) == doctest::Approx(-13.0));
  CHECK(rep4.worst_value <= -13.0);

  const auto zero = gpe_sweep(MatrixPolynomial(1), grid, 1e-9);
  CHECK(zero.verdict);
  CHECK(zero.worst_value == 0.0);

  CHECK_THROWS_AS(gpe_sweep(MatrixPolynomial::scalar({1.0, 1.0}), grid, 1e-9), InvalidInput);
  CHECK_THROWS_AS(gpe_sweep(p, {}, 1e-9), InvalidInput);
}

TEST_CASE("gpe_sweep honours exclusions") {
  // s^2 + 1 on the axis: 1 - w^2, negative away from |w| < 1
  const auto f = MatrixPolynomial::scalar({1.0, 0.0, 1.0});
  const std::vector<double> grid{-3.0, -2.0, 0.0, 2.0, 3.0};
  const std::vector<Exclusion> ex{{-3.5, -1.5}, {1.5, 3.5}};
  const auto rep = gpe_sweep(f, grid, 1e-9, ex);
  CHECK(rep.verdict);
  CHECK(rep.evaluated == 1);
}

TEST_CASE("nugpe_sweep examples") {
  const auto grid = make_omega_grid(40.0, 2048);
  // diag{s^2 - 1, 1 - s^2}: eigenvalues -(1 + w^2), 1 + w^2
  const auto f = diag2({{-1, 1}, {0, 0}, {1, -1}});
  CHECK(nugpe_sweep(f, 1, grid, 1e-9).verdict);

  const auto id = MatrixPolynomial::constant(Matrix::Identity(2, 2));
  const auto rep = nugpe_sweep(id, 1, grid, 1e-9);
  CHECK_FALSE(rep.verdict);
  CHECK(rep.worst_value == 2.0);

  // The sum of diag{-1, 4} and diag{4, -1} leaves the cone.
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = -1.0;
  a(1, 1) = 4.0;
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 4.0;
  b(1, 1) = -1.0;
  CHECK(nugpe_sweep(MatrixPolynomial::constant(a), 1, grid, 1e-9).verdict);
  CHECK(nugpe_sweep(MatrixPolynomial::constant(b), 1, grid, 1e-9).verdict);
  CHECK_FALSE(nugpe_sweep(MatrixPolynomial::constant(a + b), 1, grid, 1e-9).verdict);

  CHECK_THROWS_AS(nugpe_sweep(id, 0, grid, 1e-9), InvalidInput);
}

TEST_CASE("inertia counts") {
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = -2.0;
  h(1, 1) = 1e-12;
  h(2, 2) = 5.0;
  CHECK(inertia(h, 1e-9) == Inertia{1, 1, 1});
  // invariant under congruence
  std::mt19937_64 rng(23);
  const Matrix t = random_matrix(rng, 3) + 3.0 * Matrix::Identity(3, 3);
  h(1, 1) = 0.5;
  CHECK(inertia(t * h * t.adjoint(), 1e-9) == Inertia{1, 0, 2});
}
