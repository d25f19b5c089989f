// OpenMP kernels against the serial reference implementations.

#include <random>

#include <benchmark/benchmark.h>

#include "stochhyp/convection.hpp"
#include "stochhyp/liouville.hpp"
#include "stochhyp/reference.hpp"

using namespace stochhyp;

namespace {

struct ConvectionCase {
  convection::InterfaceCoefficient coef;
  convection::ConvectionGrid grid{-2.0, 6.0, 0.005, 0.001};
  gpc::OrthonormalBasis basis;
  gpc::QuadratureRule rule;
  convection::LambdaMatrices lambdas;
  gpc::NodalTable table;
  GpcField1D field;

  explicit ConvectionCase(int K)
      : basis(K), rule(gpc::gauss_rule(gpc::default_assembly_points(K))),
        lambdas(convection::build_lambda_matrices(coef, grid, basis, rule)), table(basis, rule),
        field(static_cast<std::size_t>(grid.cells()), basis.size()) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (auto& x : field.raw()) x = d(rng);
  }
};

struct LiouvilleCase {
  liouville::LiouvilleScheme scheme;
  liouville::GalerkinLiouville solver;
  GpcField2D field;

  LiouvilleCase(int K, int order)
      : scheme(liouville::PhaseSpaceGrid(2.0, 2.0, 0.03, 0.03, 0.002), liouville::PotentialBarrier{},
               liouville::SchemeOptions{order}),
        solver(scheme, K, gpc::gauss_rule(2 * K)),
        field(liouville::project_initial(liouville::two_quarter_disks, scheme.grid(), static_cast<std::size_t>(K) + 1)) {}
};

void BM_ConvectionFirstOrderReference(benchmark::State& state) {
  const ConvectionCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::convection_step_first_order(c.field, c.lambdas, c.grid));
}

void BM_ConvectionFirstOrderKernel(benchmark::State& state) {
  const ConvectionCase c(static_cast<int>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(convection::step_first_order(c.field, c.lambdas, c.grid, threads));
}

void BM_ConvectionSecondOrderReference(benchmark::State& state) {
  const ConvectionCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::convection_step_second_order(c.field, c.coef, c.lambdas, c.grid, c.table, LimiterMap::arctan));
  }
}

void BM_ConvectionSecondOrderKernel(benchmark::State& state) {
  const ConvectionCase c(static_cast<int>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        convection::step_second_order(c.field, c.coef, c.lambdas, c.grid, c.table, LimiterMap::arctan, threads));
  }
}

void BM_LiouvilleRhsReference(benchmark::State& state) {
  const LiouvilleCase c(static_cast<int>(state.range(0)), 1);
  GpcField2D out;
  for (auto _ : state) {
    reference::liouville_galerkin_rhs(c.solver, c.field, out);
    benchmark::DoNotOptimize(out.raw().data());
  }
}

void BM_LiouvilleRhsKernel(benchmark::State& state) {
  const LiouvilleCase c(static_cast<int>(state.range(0)), 1);
  const int threads = static_cast<int>(state.range(1));
  GpcField2D out;
  for (auto _ : state) {
    c.solver.galerkin_rhs(c.field, out, threads);
    benchmark::DoNotOptimize(out.raw().data());
  }
}

}  // namespace

BENCHMARK(BM_ConvectionFirstOrderReference)->Arg(20)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_ConvectionFirstOrderKernel)->Args({20, 1})->Args({20, 4})->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_ConvectionSecondOrderReference)->Arg(20)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_ConvectionSecondOrderKernel)->Args({20, 1})->Args({20, 4})->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_LiouvilleRhsReference)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LiouvilleRhsKernel)->Args({10, 1})->Args({10, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
