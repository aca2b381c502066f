#include <random>

#include <benchmark/benchmark.h>

#include "sympoly/sympoly.hpp"

using namespace sympoly;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index m) {
  std::normal_distribution<double> nd;
  Matrix a(m, m);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = Complex(nd(rng), nd(rng));
  return a;
}

InterpolationProblem random_even_problem(std::size_t n, Eigen::Index m) {
  std::mt19937_64 rng(7);
  InterpolationProblem p;
  for (std::size_t j = 0; j < n; ++j) {
    p.nodes.emplace_back(0.5 + static_cast<double>(j), 0.3 * static_cast<double>(j));
    const Matrix a = random_matrix(rng, m);
    p.values.push_back(a * a.adjoint());
  }
  p.symmetry = SymmetryClass::gpe();
  return p;
}

void BM_SolveStructured(benchmark::State& state) {
  const auto p = random_even_problem(static_cast<std::size_t>(state.range(0)), state.range(1));
  const auto red = reduce_data(p);
  const Matrix I = Matrix::Identity(p.dim(), p.dim());
  for (auto _ : state) benchmark::DoNotOptimize(solve_structured(red, I, I));
}
BENCHMARK(BM_SolveStructured)->Args({3, 1})->Args({3, 4})->Args({6, 4})->Args({6, 8});

void BM_BetaHatGpe(benchmark::State& state) {
  const InterpolationProblem p{{1.0, 2.0, 3.0},
                               {Matrix::Constant(1, 1, 18.0), Matrix::Constant(1, 1, 75.0),
                                Matrix::Constant(1, 1, 50.0)},
                               SymmetryClass::gpe(),
                               {}};
  const auto red = reduce_data(p);
  const auto I = Matrix::Identity(1, 1);
  const auto P = solve_structured(red, I, I);
  const NeutralPolynomial psi(red.nodes, I);
  GridSpec spec;
  spec.points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(beta_hat_gpe(P, psi, red, spec));
}
BENCHMARK(BM_BetaHatGpe)->Arg(1024)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_McMillanDegree(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::vector<Matrix> c;
  for (int k = 0; k <= state.range(0); ++k) c.push_back(random_matrix(rng, state.range(1)));
  const MatrixPolynomial f(std::move(c));
  for (auto _ : state) benchmark::DoNotOptimize(f.mcmillan_degree());
}
BENCHMARK(BM_McMillanDegree)->Args({4, 2})->Args({8, 4})->Args({16, 4});

}  // namespace

BENCHMARK_MAIN();
