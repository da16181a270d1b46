#include <benchmark/benchmark.h>

#include "warpflow/audit.hpp"
#include "warpflow/flow.hpp"

using namespace warpflow;

static void BM_rk4_step_torus(benchmark::State& state) {
  const auto space = WarpedSpace::make(WarpFunction::cosh_warp(0.0, 3.0), BaseKind::Torus);
  const BaseGrid grid = BaseGrid::make(Chart::Torus2D, static_cast<int>(state.range(0)));
  FlowConfig fc;
  fc.type = FlowType::LcfH2H1;
  fc.cfl = 0.3;
  fc.t_max = 1e12;
  fc.tol_converged = 1e-300;
  FlowEngine engine(space, grid, fc);
  FlowState st = init_random(space, grid, 1.0, 0.1, 7).state;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.step(st));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.node_count()));
}
BENCHMARK(BM_rk4_step_torus)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_rk4_step_axisym(benchmark::State& state) {
  const auto space = WarpedSpace::make(WarpFunction::sinh_warp(0.0, 4.0), BaseKind::UnitSphere);
  const BaseGrid grid = BaseGrid::make(Chart::AxisymSphere, static_cast<int>(state.range(0)));
  FlowConfig fc;
  fc.type = FlowType::LcfH2H1;
  fc.cfl = 0.3;
  fc.t_max = 1e12;
  fc.tol_converged = 1e-300;
  FlowEngine engine(space, grid, fc);
  FlowState st = init_random(space, grid, 1.0, 0.1, 7).state;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.step(st));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.node_count()));
}
BENCHMARK(BM_rk4_step_axisym)->Arg(512);

static void BM_record_assembly(benchmark::State& state) {
  const auto space = WarpedSpace::make(WarpFunction::cosh_warp(0.0, 3.0), BaseKind::Torus);
  const BaseGrid grid = BaseGrid::make(Chart::Torus2D, 128);
  GeometryComputer geom(grid);
  const ScalarField u = init_random(space, grid, 1.0, 0.1, 7).state.u;
  const GeometryFields& f = geom.compute(space, u.values, FlowType::LcfH2H1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_record(0.0, 0.0, u, space, f));
  }
}
BENCHMARK(BM_record_assembly)->Unit(benchmark::kMillisecond);

static void BM_functionals(benchmark::State& state) {
  const auto space = WarpedSpace::make(WarpFunction::cosh_warp(0.0, 3.0), BaseKind::Torus);
  const BaseGrid grid = BaseGrid::make(Chart::Torus2D, 128);
  GeometryComputer geom(grid);
  const ScalarField u = init_random(space, grid, 1.0, 0.1, 7).state.u;
  const GeometryFields& f = geom.compute(space, u.values, FlowType::LcfH2H1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(functionals(u, space, f));
  }
}
BENCHMARK(BM_functionals);
