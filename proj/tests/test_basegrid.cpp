#include <doctest.h>

#include <cmath>
#include <sstream>

#include "warpflow/base_grid.hpp"
#include "warpflow/errors.hpp"
#include "warpflow/math_util.hpp"

using namespace warpflow;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<double> torus_field(const BaseGrid& g, double (*f)(double, double)) {
  const int n = g.resolution();
  const double h = g.spacing();
  std::vector<double> out(g.node_count());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = f(i * h, j * h);
  return out;
}

} // namespace

TEST_CASE("make_grid: torus node count and spacing") {
  const BaseGrid g = BaseGrid::make(Chart::Torus2D, 64);
  CHECK(g.node_count() == 4096);
  CHECK(g.spacing() == doctest::Approx(2.0 * M_PI / 64).epsilon(1e-16));
  CHECK(g.weight_sum() == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-13));
}

TEST_CASE("make_grid: axisym weights sum to the sphere area") {
  for (int m : {256, 512}) {
    const BaseGrid g = BaseGrid::make(Chart::AxisymSphere, m);
    CHECK(g.weight_sum() == doctest::Approx(4.0 * M_PI).epsilon(1e-13));
    CHECK(g.polar_angles().front() == doctest::Approx(0.5 * M_PI / m).epsilon(1e-15));
  }
}

TEST_CASE("make_grid rejects resolutions below 8") {
  CHECK_THROWS_AS((void)BaseGrid::make(Chart::Torus2D, 4), ConfigError);
  CHECK_THROWS_AS((void)BaseGrid::make(Chart::AxisymSphere, 7), ConfigError);
}

TEST_CASE("partials of a constant vanish exactly") {
  for (const BaseGrid& g :
       {BaseGrid::make(Chart::Torus2D, 16), BaseGrid::make(Chart::AxisymSphere, 32)}) {
    std::vector<double> f(g.node_count(), 3.7);
    ChartPartials p;
    g.partials(f, p);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(p.d1[i] == 0.0);
      CHECK(p.d2[i] == 0.0);
      CHECK(p.d11[i] == 0.0);
      CHECK(p.d12[i] == 0.0);
      CHECK(p.d22[i] == 0.0);
    }
  }
}

TEST_CASE("torus stencil error on sin(y1) matches the 4th-order bound") {
  // Truncation constant for the 5-point first-derivative stencil is h^4/30,
  // i.e. 3.1e-6 at N=64 on sin; computed, not assumed.
  const BaseGrid g = BaseGrid::make(Chart::Torus2D, 64);
  const auto f = torus_field(g, [](double y1, double) { return std::sin(y1); });
  const auto want = torus_field(g, [](double y1, double) { return std::cos(y1); });
  ChartPartials p;
  g.partials(f, p);
  const double err = max_abs_diff(p.d1, want);
  CHECK(err < 3.5e-6);
  CHECK(err > 1e-7); // guards against accidentally comparing zero fields
}

TEST_CASE("torus stencils are 4th order under refinement") {
  auto worst_err = [](int n) {
    const BaseGrid g = BaseGrid::make(Chart::Torus2D, n);
    const auto f = torus_field(
        g, [](double y1, double y2) { return std::sin(2 * y1) * std::cos(y2); });
    ChartPartials p;
    g.partials(f, p);
    const auto d1 = torus_field(
        g, [](double y1, double y2) { return 2 * std::cos(2 * y1) * std::cos(y2); });
    const auto d12 = torus_field(
        g, [](double y1, double y2) { return -2 * std::cos(2 * y1) * std::sin(y2); });
    const auto d22 = torus_field(
        g, [](double y1, double y2) { return -std::sin(2 * y1) * std::cos(y2); });
    ChartPartials w;
    double e = 0.0;
    e = std::max(e, max_abs_diff(p.d1, d1));
    e = std::max(e, max_abs_diff(p.d12, d12));
    e = std::max(e, max_abs_diff(p.d22, d22));
    return e;
  };
  const double e32 = worst_err(32), e64 = worst_err(64), e128 = worst_err(128);
  CHECK(std::log2(e32 / e64) > 3.8);
  CHECK(std::log2(e64 / e128) > 3.8);
}

TEST_CASE("axisym stencil differentiates cos(phi) at 4th order") {
  auto err_at = [](int m) {
    const BaseGrid g = BaseGrid::make(Chart::AxisymSphere, m);
    std::vector<double> f(g.node_count()), want(g.node_count());
    for (std::size_t j = 0; j < f.size(); ++j) {
      f[j] = std::cos(g.polar_angles()[j]);
      want[j] = -std::sin(g.polar_angles()[j]);
    }
    ChartPartials p;
    g.partials(f, p);
    double e = max_abs_diff(p.d1, want);
    for (std::size_t j = 0; j < f.size(); ++j) {
      CHECK(p.d2[j] == 0.0);
      CHECK(p.d12[j] == 0.0);
      CHECK(p.d22[j] == 0.0);
    }
    return e;
  };
  const double e64 = err_at(64), e128 = err_at(128);
  CHECK(e64 < 2e-7);
  CHECK(std::log2(e64 / e128) > 3.8);
}

TEST_CASE("integrate: uniform field on the torus is exact") {
  const BaseGrid g = BaseGrid::make(Chart::Torus2D, 64);
  std::vector<double> ones(g.node_count(), 1.0);
  CHECK(g.integrate(ones) == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("integrate: uniform field on the axisym sphere") {
  const BaseGrid g = BaseGrid::make(Chart::AxisymSphere, 256);
  std::vector<double> ones(g.node_count(), 1.0);
  // The exact-cell weights make this exact; well inside the 1e-4 contract.
  CHECK(g.integrate(ones) == doctest::Approx(4.0 * M_PI).epsilon(1e-13));
}

TEST_CASE("integrate: mean-zero periodic field") {
  const BaseGrid g = BaseGrid::make(Chart::Torus2D, 64);
  const auto f = torus_field(g, [](double y1, double) { return std::sin(y1); });
  CHECK(g.integrate(f) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("integrate with density weights") {
  const BaseGrid g = BaseGrid::make(Chart::Torus2D, 32);
  std::vector<double> f(g.node_count(), 2.0), d(g.node_count(), 0.5);
  CHECK(g.integrate(f, d) == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-13));
}

TEST_CASE("discrete integration by parts on the torus") {
  const BaseGrid g = BaseGrid::make(Chart::Torus2D, 48);
  SplitMix64 rng(3);
  for (int it = 0; it < 5; ++it) {
    std::vector<double> f(g.node_count()), q(g.node_count());
    const double a1 = rng.next_symmetric(), a2 = rng.next_symmetric();
    const double b1 = rng.next_symmetric(), b2 = rng.next_symmetric();
    const int n = g.resolution();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double y1 = i * g.spacing(), y2 = j * g.spacing();
        f[static_cast<std::size_t>(i) * n + j] =
            a1 * std::sin(y1 + 2 * y2) + a2 * std::cos(3 * y1);
        q[static_cast<std::size_t>(i) * n + j] =
            b1 * std::cos(2 * y1 - y2) + b2 * std::sin(y2);
      }
    ChartPartials pf, pq;
    g.partials(f, pf);
    g.partials(q, pq);
    const double lhs = g.integrate(pf.d1, q) + g.integrate(pq.d1, f);
    const double norm_f = std::sqrt(g.integrate(f, f));
    const double norm_q = std::sqrt(g.integrate(q, q));
    CHECK(std::abs(lhs) <= 1e-10 * norm_f * norm_q);
  }
}

TEST_CASE("field dump round trip") {
  const BaseGrid g = BaseGrid::make(Chart::AxisymSphere, 16);
  std::vector<double> f(g.node_count());
  SplitMix64 rng(9);
  for (auto& x : f) x = rng.next_symmetric() * 1.7;
  std::stringstream ss;
  g.dump_field(ss, f, 0.625);
  const auto dump = BaseGrid::read_field(ss);
  CHECK(dump.chart == Chart::AxisymSphere);
  CHECK(dump.resolution == 16);
  CHECK(dump.time == 0.625);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(dump.values[i] == f[i]); // 17 digits round-trip
}
