#include <benchmark/benchmark.h>

#include "swdrag/assembly.hpp"
#include "swdrag/diagnostics.hpp"
#include "swdrag/time_stepper.hpp"

using namespace swdrag;

namespace {

ModelParams params_for(const char* law, double f = 0.0) {
  return ModelParams::constant(0.1, 0.1, f, 1.0, DampingLaw::parse(law, 10.0));
}

void BM_AssembleOperators(benchmark::State& st) {
  const Mesh mesh = Mesh::unit_square(static_cast<std::size_t>(st.range(0)));
  const FunctionSpacePair space(mesh, static_cast<int>(st.range(1)));
  const ModelParams params = params_for("power:3", 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(assemble_operators(space, params));
  st.counters["dofs"] = static_cast<double>(space.num_velocity_dofs() + space.num_pressure_dofs());
}
BENCHMARK(BM_AssembleOperators)->Args({8, 1})->Args({20, 1})->Args({20, 2})->Unit(benchmark::kMillisecond);

void BM_DampingJacobian(benchmark::State& st) {
  const Mesh mesh = Mesh::unit_square(static_cast<std::size_t>(st.range(0)));
  const FunctionSpacePair space(mesh, 1);
  const ModelParams params = params_for("power:3");
  const Operators ops = assemble_operators(space, params);
  const State s = random_initial_state(space, params, ops, 1);
  for (auto _ : st) benchmark::DoNotOptimize(damping_jacobian(space, params, s.u));
}
BENCHMARK(BM_DampingJacobian)->Arg(8)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_Step(benchmark::State& st, const char* law) {
  const Mesh mesh = Mesh::unit_square(static_cast<std::size_t>(st.range(0)));
  const FunctionSpacePair space(mesh, 1);
  const ModelParams params = params_for(law);
  const Operators ops = assemble_operators(space, params);
  SolverConfig cfg;
  cfg.dt = 0.5 * mesh.h();
  TimeStepper stepper(space, params, ops, cfg);
  State s = random_initial_state(space, params, ops, 1);
  for (auto _ : st) s = stepper.step(s);
}
BENCHMARK_CAPTURE(BM_Step, linear, "linear")->Arg(20)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Step, quadratic, "power:3")->Arg(20)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Step, cubic, "power:4")->Arg(20)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
