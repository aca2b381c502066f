#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sympoly/interpolator.hpp"

using namespace sympoly;
using sympoly::testing::random_hermitian;
using sympoly::testing::random_matrix;
using sympoly::testing::random_off_axis_nodes;

namespace {

Matrix s1(Complex v) { return Matrix::Constant(1, 1, v); }

Matrix d2(double a, double b) {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 0) = a;
  x(1, 1) = b;
  return x;
}

InterpolationProblem scalar_gpe_problem() { return {{1.0, 2.0, 3.0}, {s1(18), s1(75), s1(50)}, SymmetryClass::gpe(), {}}; }

InterpolationProblem diag2_problem() {
  return {{1.0, 2.0, 3.0}, {d2(-35, 9), d2(-20, 0), d2(45, 25)}, SymmetryClass::gpe(), {}};
}

std::pair<Matrix, Matrix> pair_of(const InterpolationProblem& p) { return p.symmetry.structure_pair(p.dim()); }

}  // namespace

TEST_CASE("validate rejects malformed problems") {
  InterpolationProblem p{{1.0, 2.0, 3.0}, {s1(18), s1(75)}, SymmetryClass::even(), {}};
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p.nodes.clear();
  p.values.clear();
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  InterpolationProblem q{{std::numeric_limits<double>::infinity()}, {s1(1)}, SymmetryClass::even(), {}};
  CHECK_THROWS_AS(q.validate(), InvalidInput);
  InterpolationProblem r{{1.0, 2.0}, {s1(1), Matrix::Zero(2, 2)}, SymmetryClass::even(), {}};
  CHECK_THROWS_AS(r.validate(), InvalidInput);
}

TEST_CASE("check_feasible: distinct off-axis nodes are feasible") {
  CHECK(check_feasible(scalar_gpe_problem()).empty());
  CHECK(check_feasible(diag2_problem()).empty());
}

TEST_CASE("check_feasible: mirror mismatch") {
  // 1 + i and -1 + i are mirrors; Even needs Y_2 = Y_1^*.
  InterpolationProblem p{{Complex(1, 1), Complex(-1, 1)}, {s1(2), s1(3)}, SymmetryClass::even(), {}};
  const auto v = check_feasible(p);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::MirrorMismatch);
  CHECK(v[0].j == 0);
  CHECK(v[0].k == 1);
  CHECK(v[0].residual == doctest::Approx(1.0));
  CHECK(v[0].describe().find("mirror") != std::string::npos);
  CHECK_THROWS_AS(reduce_data(p), InfeasibleData);

  p.values[1] = s1(2);
  CHECK(check_feasible(p).empty());
  // i and -i are not mirrors of one another: i + conj(-i) = 2i.
  InterpolationProblem q{{Complex(0, 1), Complex(0, -1)}, {s1(2), s1(3)}, SymmetryClass::even(), {}};
  CHECK(check_feasible(q).empty());
}

TEST_CASE("check_feasible: duplicate mismatch and odd on-axis value") {
  InterpolationProblem p{{2.0, 2.0}, {s1(1), s1(2)}, SymmetryClass::even(), {}};
  const auto v = check_feasible(p);
  REQUIRE(v.size() >= 1);
  CHECK(v[0].kind == ViolationKind::DuplicateMismatch);

  // An on-axis node is its own mirror; for Odd this forces Y skew-Hermitian.
  InterpolationProblem q{{Complex(0, 2)}, {s1(1.0)}, SymmetryClass::odd(), {}};
  CHECK_FALSE(check_feasible(q).empty());
  q.values[0] = s1(Complex(0, 1));
  CHECK(check_feasible(q).empty());
}

TEST_CASE("check_feasible: GPE on-axis values must be PSD") {
  InterpolationProblem p{{Complex(0, 1), 2.0}, {s1(-1.0), s1(1.0)}, SymmetryClass::gpe(), {}};
  const auto v = check_feasible(p);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::OnAxisNotPsd);
  p.values[0] = s1(0.5);
  CHECK(check_feasible(p).empty());
}

TEST_CASE("check_feasible: nuGPE on-axis inertia") {
  const auto cls = SymmetryClass::nu_gpe(1, Matrix::Identity(2, 2));
  InterpolationProblem p{{Complex(0, 1)}, {d2(1, 1)}, cls, {}};
  auto v = check_feasible(p);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::OnAxisInertia);
  p.values[0] = d2(-1, 0);
  v = check_feasible(p);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::OnAxisSingular);
  p.values[0] = d2(-1, 3);
  CHECK(check_feasible(p).empty());
}

TEST_CASE("reduce_data examples") {
  const auto r = reduce_data(scalar_gpe_problem());
  CHECK(r.size() == 3);
  CHECK(r.kept_indices == std::vector<std::size_t>{0, 1, 2});

  InterpolationProblem dup{{1.0, 2.0, 1.0}, {s1(18), s1(75), s1(18)}, SymmetryClass::gpe(), {}};
  const auto rd = reduce_data(dup);
  CHECK(rd.size() == 2);
  CHECK(rd.kept_indices == std::vector<std::size_t>{0, 1});

  InterpolationProblem mir{{1.0, -1.0}, {s1(18), s1(18)}, SymmetryClass::gpe(), {}};
  CHECK(reduce_data(mir).size() == 1);

  InterpolationProblem ax{{Complex(0, 2), 1.0}, {s1(3.0), s1(1.0)}, SymmetryClass::gpe(), {}};
  const auto ra = reduce_data(ax);
  CHECK(ra.on_axis() == std::vector<std::size_t>{0});
}

TEST_CASE("solve_structured: example with scalar GPE data") {
  const auto red = reduce_data(scalar_gpe_problem());
  const auto [A, B] = pair_of(scalar_gpe_problem());
  const auto P = solve_structured(red, A, B).normalized();
  const auto expected = MatrixPolynomial::scalar({-13.0, 0.0, 34.0, 0.0, -3.0});
  CHECK(P.degree() == 4);
  CHECK(MatrixPolynomial::max_coeff_distance(P, expected) <= 1e-9);
}

TEST_CASE("solve_structured: second scalar example") {
  InterpolationProblem p{{1.0, 2.0, 3.0}, {s1(4), s1(1), s1(-4)}, SymmetryClass::gpe(), {}};
  const auto [A, B] = pair_of(p);
  const auto P = solve_structured(reduce_data(p), A, B).normalized();
  CHECK(MatrixPolynomial::max_coeff_distance(P, MatrixPolynomial::scalar({5.0, 0.0, -1.0})) <= 1e-9);
}

TEST_CASE("solve_structured: 2x2 diagonal example") {
  const auto p = diag2_problem();
  const auto [A, B] = pair_of(p);
  const auto P = solve_structured(reduce_data(p), A, B).normalized();
  const MatrixPolynomial expected(
      std::vector<Matrix>{d2(-36, 16), d2(0, 0), d2(0, -8), d2(0, 0), d2(1, 1)});
  CHECK(MatrixPolynomial::max_coeff_distance(P, expected) <= 1e-9);
  CHECK(is_even(P, 1e-9));
}

TEST_CASE("solve_unstructured: classical interpolant") {
  InterpolationProblem p{{1.0, 2.0, 3.0}, {s1(18), s1(75), s1(50)}, SymmetryClass::even(), {}};
  const auto F = solve_unstructured(p);
  const auto expected = MatrixPolynomial::scalar({-121.0, 180.0, -41.0});
  CHECK(MatrixPolynomial::max_coeff_distance(F, expected) <= 1e-9);
  InterpolationProblem dup{{1.0, 1.0}, {s1(1), s1(1)}, SymmetryClass::even(), {}};
  CHECK_THROWS_AS(solve_unstructured(dup), InvalidInput);
}

TEST_CASE("solve_vandermonde reports ill-conditioned nodes") {
  const std::vector<Complex> nodes{1.0, 1.0 + 1e-13, 2.0};
  CHECK_THROWS_AS(solve_vandermonde(nodes, Matrix::Ones(3, 1)), NumericalFailure);
}

TEST_CASE("structured solve satisfies conditions and symmetry on random data") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index m = 1 + trial % 3;
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    InterpolationProblem p;
    p.nodes = random_off_axis_nodes(rng, n);
    for (std::size_t j = 0; j < n; ++j) p.values.push_back(random_matrix(rng, m));
    p.symmetry = trial % 2 == 0 ? SymmetryClass::even() : SymmetryClass::odd();
    const auto [A, B] = pair_of(p);
    const auto red = reduce_data(p);
    const auto P = solve_structured(red, A, B);
    CHECK(P.degree() <= 2 * n - 1);
    double scale = 1.0;
    for (const auto& y : p.values) scale = std::max(scale, y.cwiseAbs().maxCoeff());
    CHECK(max_node_residual(P, p.nodes, p.values) <= 1e-8 * scale);
    std::vector<Complex> mirrors;
    std::vector<Matrix> mvals;
    for (std::size_t j = 0; j < n; ++j) {
      mirrors.push_back(-std::conj(p.nodes[j]));
      mvals.push_back((A * p.values[j] * B).adjoint());
    }
    CHECK(max_node_residual(P, mirrors, mvals) <= 1e-8 * scale);
    CHECK(general_ab_residual(P, A, B) <= 1e-10 * (1.0 + P.max_abs_coeff()));
  }
}

TEST_CASE("structured solve is invariant under node permutation") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    InterpolationProblem p;
    p.nodes = random_off_axis_nodes(rng, 4);
    for (int j = 0; j < 4; ++j) p.values.push_back(random_hermitian(rng, 2));
    p.symmetry = SymmetryClass::even();
    const auto [A, B] = pair_of(p);
    const auto P1 = solve_structured(reduce_data(p), A, B);
    std::vector<std::size_t> perm(4);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    InterpolationProblem q = p;
    for (std::size_t j = 0; j < 4; ++j) {
      q.nodes[j] = p.nodes[perm[j]];
      q.values[j] = p.values[perm[j]];
    }
    const auto P2 = solve_structured(reduce_data(q), A, B);
    CHECK(MatrixPolynomial::max_coeff_distance(P1, P2) <= 1e-8 * (1.0 + P1.max_abs_coeff()));
  }
}

TEST_CASE("structured solve equals the unstructured solve on the doubled node set") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    InterpolationProblem p;
    p.nodes = random_off_axis_nodes(rng, 3);
    for (int j = 0; j < 3; ++j) p.values.push_back(random_matrix(rng, 2));
    p.symmetry = SymmetryClass::even();
    const auto [A, B] = pair_of(p);
    const auto Ps = solve_structured(reduce_data(p), A, B);

    InterpolationProblem doubled = p;
    for (int j = 0; j < 3; ++j) {
      doubled.nodes.push_back(-std::conj(p.nodes[j]));
      doubled.values.push_back((A * p.values[j] * B).adjoint());
    }
    const auto Pu = solve_unstructured(doubled);
    CHECK(MatrixPolynomial::max_coeff_distance(Ps, Pu) <= 1e-8 * (1.0 + Pu.max_abs_coeff()));
  }
}

TEST_CASE("structured solve with an on-axis node") {
  InterpolationProblem p{{Complex(0, 2), 1.0}, {s1(3.0), s1(7.0)}, SymmetryClass::gpe(), {}};
  const auto [A, B] = pair_of(p);
  const auto P = solve_structured(reduce_data(p), A, B);
  CHECK(P.degree() <= 2);
  CHECK(max_node_residual(P, p.nodes, p.values) <= 1e-10);
  CHECK(max_node_residual(P, {-1.0}, {s1(7.0)}) <= 1e-10);
  CHECK(is_even(P, 1e-10));
}

TEST_CASE("structured solve for JEven and general (A, B)") {
  std::mt19937_64 rng(34);
  Matrix J = Matrix::Identity(2, 2);
  J(1, 1) = -1.0;
  InterpolationProblem p;
  p.nodes = random_off_axis_nodes(rng, 3);
  for (int j = 0; j < 3; ++j) p.values.push_back(random_matrix(rng, 2));
  p.symmetry = SymmetryClass::j_even(J);
  auto [A, B] = pair_of(p);
  auto P = solve_structured(reduce_data(p), A, B);
  CHECK(satisfies_general_ab(P, J, J, 1e-9));
  CHECK(max_node_residual(P, p.nodes, p.values) <= 1e-8);

  const Matrix A2 = random_matrix(rng, 2) + 2.0 * Matrix::Identity(2, 2);
  const Matrix B2 = A2.adjoint().inverse();
  p.symmetry = SymmetryClass::general_ab(A2, B2);
  std::tie(A, B) = pair_of(p);
  P = solve_structured(reduce_data(p), A, B);
  CHECK(satisfies_general_ab(P, A2, B2, 1e-8));
  CHECK(max_node_residual(P, p.nodes, p.values) <= 1e-8);
}
