#include <benchmark/benchmark.h>

#include "warpflow/flow.hpp"
#include "warpflow/geometry.hpp"

using namespace warpflow;

namespace {

struct TorusFixture {
  WarpedSpace space = WarpedSpace::make(WarpFunction::cosh_warp(0.0, 3.0), BaseKind::Torus);
  BaseGrid grid;
  GeometryComputer geom;
  ScalarField u;

  explicit TorusFixture(int n)
      : grid(BaseGrid::make(Chart::Torus2D, n)), geom(grid),
        u(init_random(space, grid, 1.0, 0.1, 7).state.u) {}
};

} // namespace

static void BM_flow_rhs_torus(benchmark::State& state) {
  TorusFixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fx.geom.flow_rhs(fx.space, fx.u.values, FlowType::LcfH2H1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fx.grid.node_count()));
}
BENCHMARK(BM_flow_rhs_torus)->Arg(64)->Arg(128)->Arg(256);

static void BM_full_geometry_torus(benchmark::State& state) {
  TorusFixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fx.geom.compute(fx.space, fx.u.values, FlowType::LcfH2H1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fx.grid.node_count()));
}
BENCHMARK(BM_full_geometry_torus)->Arg(128);

static void BM_partials_torus(benchmark::State& state) {
  TorusFixture fx(static_cast<int>(state.range(0)));
  ChartPartials parts;
  parts.resize(fx.grid.node_count());
  for (auto _ : state) {
    fx.grid.partials(fx.u.values, parts);
    benchmark::DoNotOptimize(parts.d12.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fx.grid.node_count()));
}
BENCHMARK(BM_partials_torus)->Arg(128)->Arg(256);

static void BM_flow_rhs_axisym(benchmark::State& state) {
  const auto space = WarpedSpace::make(WarpFunction::sinh_warp(0.0, 4.0), BaseKind::UnitSphere);
  const BaseGrid grid = BaseGrid::make(Chart::AxisymSphere, static_cast<int>(state.range(0)));
  GeometryComputer geom(grid);
  const ScalarField u = init_random(space, grid, 1.0, 0.1, 7).state.u;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geom.flow_rhs(space, u.values, FlowType::LcfH2H1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.node_count()));
}
BENCHMARK(BM_flow_rhs_axisym)->Arg(512)->Arg(2048);
