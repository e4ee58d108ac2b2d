// Serial reference kernels against their OpenMP counterparts on growing meshes.
// Arguments are (cells per side, element degree). Thread count follows
// OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <utility>

#include "gs/kernels.hpp"

using namespace gs;
using kernels::MatrixKind;

namespace {

const FeSpace& space_for(const benchmark::State& state) {
  static std::map<std::pair<int, int>, std::unique_ptr<FeSpace>> cache;
  const std::pair key{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
  auto& slot = cache[key];
  if (!slot)
    slot = std::make_unique<FeSpace>(build_structured_mesh({0, 1, 0, 1}, key.first), key.second);
  return *slot;
}

void report(benchmark::State& state, const FeSpace& space) {
  state.counters["dofs"] = static_cast<double>(space.n_dofs());
  state.counters["elements/s"] = benchmark::Counter(
      static_cast<double>(space.n_elements()), benchmark::Counter::kIsIterationInvariantRate);
}

template <auto Assemble>
void assemble_stiffness(benchmark::State& state) {
  const auto& space = space_for(state);
  SymmetricMatrix k(space.n_dofs());
  for (auto _ : state) {
    Assemble(space, MatrixKind::Stiffness, k);
    benchmark::DoNotOptimize(k.dense().data());
  }
  report(state, space);
}

// Interpolation followed by integration is the inner loop of every
// nonlinear-term evaluation in the time stepper, with two fields at once.
template <auto Interpolate, auto Integrate>
void forcing_roundtrip(benchmark::State& state) {
  const auto& space = space_for(state);
  const Eigen::MatrixXd nodal =
      Eigen::MatrixXd::Random(static_cast<Eigen::Index>(space.n_dofs()), 2);
  Eigen::MatrixXd qvals, load;
  for (auto _ : state) {
    Interpolate(space, nodal, qvals);
    Integrate(space, qvals, load);
    benchmark::DoNotOptimize(load.data());
  }
  report(state, space);
}

void mesh_sizes(benchmark::internal::Benchmark* b) {
  for (int degree : {2, 3})
    for (int cells : {8, 16, 32, 64}) b->Args({cells, degree});
  b->ArgNames({"cells", "degree"})->Unit(benchmark::kMicrosecond)->UseRealTime();
}

// The assembled matrices are dense, so stay below about 5000 dofs.
void assembly_sizes(benchmark::internal::Benchmark* b) {
  b->Args({8, 2})->Args({16, 2})->Args({32, 2})->Args({8, 3})->Args({16, 3});
  b->ArgNames({"cells", "degree"})->Unit(benchmark::kMicrosecond)->UseRealTime();
}

}  // namespace

BENCHMARK(assemble_stiffness<kernels::serial::assemble>)->Name("assemble/serial")->Apply(assembly_sizes);
BENCHMARK(assemble_stiffness<kernels::omp::assemble>)->Name("assemble/omp")->Apply(assembly_sizes);
BENCHMARK(forcing_roundtrip<kernels::serial::interpolate_to_quadrature,
                            kernels::serial::integrate_against_basis>)
    ->Name("forcing/serial")
    ->Apply(mesh_sizes);
BENCHMARK(forcing_roundtrip<kernels::omp::interpolate_to_quadrature,
                            kernels::omp::integrate_against_basis>)
    ->Name("forcing/omp")
    ->Apply(mesh_sizes);

BENCHMARK_MAIN();
