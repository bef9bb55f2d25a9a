#include <random>

#include <benchmark/benchmark.h>

#include "conicdual/conicdual.hpp"

using namespace conicdual;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = u(rng);
  return m;
}

void BM_Nnls(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(1);
  const Matrix M = random_matrix(rng, 2 * n, n);
  const Vector b = random_matrix(rng, 2 * n, 1).col(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_nnls(M, b));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Nnls)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_Simplex(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(2);
  LinearProgram lp(n);
  lp.objective = random_matrix(rng, n, 1).col(0).cwiseAbs();
  lp.add_ge(Matrix(random_matrix(rng, n, n) + 2.0 * Matrix::Identity(n, n)),
            Vector(random_matrix(rng, n, 1).col(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lp(lp));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Simplex)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_FarkasPrimal(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<std::pair<Operator, Vector>> pool;
  for (int i = 0; i < 64; ++i) {
    pool.emplace_back(Operator(random_matrix(rng, 5, 5)), random_matrix(rng, 5, 1).col(0));
  }
  const Cone S = Cone::orthant(5);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [A, b] = pool[k++ % pool.size()];
    benchmark::DoNotOptimize(farkas_primal(A, b, S));
  }
}
BENCHMARK(BM_FarkasPrimal);

void BM_SolveWedge(benchmark::State& state) {
  std::mt19937_64 rng(4);
  ConicProblem pb(Operator(random_matrix(rng, 6, 6) + 2.0 * Matrix::Identity(6, 6)),
                  random_matrix(rng, 6, 1).col(0), random_matrix(rng, 6, 1).col(0).cwiseAbs(),
                  Cone::wedge({0.4, 0.8, 1.2}), Cone::orthant(6));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(pb));
  }
}
BENCHMARK(BM_SolveWedge);

void BM_ContinuousLp(benchmark::State& state) {
  ContinuousLPSpec s;
  s.n_grid = static_cast<int>(state.range(0));
  s.B = [](double) { return Matrix::Constant(1, 1, 1.0); };
  s.K = [](double u, double t) { return Matrix::Constant(1, 1, u <= t ? 1.0 : 0.0); };
  s.b = [](double) { return Vector::Constant(1, 1.0); };
  s.c = [](double t) { return Vector::Constant(1, 1.0 + t); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(discretize_clp(s)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ContinuousLp)->RangeMultiplier(2)->Range(16, 256)->Complexity();

}  // namespace

BENCHMARK_MAIN();
