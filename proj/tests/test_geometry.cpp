#include <doctest.h>

#include <cmath>

#include <limits>
#include "oracle_1d.hpp"
#include "warpflow/errors.hpp"
#include "warpflow/flow.hpp"
#include "warpflow/geometry.hpp"
#include "warpflow/math_util.hpp"

using namespace warpflow;

namespace {

WarpedSpace hyperbolic3(double b = 4.0) {
  return WarpedSpace::make(WarpFunction::sinh_warp(0.0, b), BaseKind::UnitSphere);
}
WarpedSpace cosh_torus() {
  return WarpedSpace::make(WarpFunction::cosh_warp(0.0, 3.0), BaseKind::Torus);
}

ScalarField axisym_field(const BaseGrid& g, const std::function<double(double)>& f) {
  ScalarField u(g);
  for (std::size_t j = 0; j < u.size(); ++j) u.values[j] = f(g.polar_angles()[j]);
  return u;
}

} // namespace

TEST_CASE("slices are umbilic with kappa = theta'/theta on both charts") {
  for (int m : {16, 96, 201}) {
    const auto space = hyperbolic3();
    const BaseGrid grid = BaseGrid::make(Chart::AxisymSphere, m);
    GeometryComputer gc(grid);
    ScalarField u(grid, 1.0);
    const auto& f = gc.compute(space, u.values, FlowType::LcfH2H1);
    const double want = 1.0 / std::tanh(1.0);
    for (std::size_t i = 0; i < f.size; ++i) {
      CHECK(std::abs(f.kappa1[i] - want) < 1e-10);
      CHECK(std::abs(f.kappa2[i] - want) < 1e-10);
      CHECK(f.v[i] == 1.0);
      CHECK(f.s[i] == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
    }
    CHECK(umbilicity(f) < 1e-12);
  }
  for (int n : {12, 24, 40}) {
    const auto space = cosh_torus();
    const BaseGrid grid = BaseGrid::make(Chart::Torus2D, n);
    GeometryComputer gc(grid);
    ScalarField u(grid, 1.0);
    const auto& f = gc.compute(space, u.values, FlowType::LcfH2H1);
    const double want = std::tanh(1.0);
    for (std::size_t i = 0; i < f.size; ++i) {
      CHECK(std::abs(f.kappa1[i] - want) < 1e-10);
      CHECK(std::abs(f.kappa2[i] - want) < 1e-10);
    }
    CHECK(gc.reductions().speed_abs_max < 1e-10);
  }
}

TEST_CASE("induced metric of an axisymmetric perturbed graph") {
  const auto space = hyperbolic3();
  // Odd resolution puts a node exactly at phi = pi/2.
  const BaseGrid grid = BaseGrid::make(Chart::AxisymSphere, 257);
  const ScalarField u =
      axisym_field(grid, [](double phi) { return 1.0 + 0.1 * std::cos(phi); });
  const GeometryFields f = induced_metric(u, space);

  // Closed form: v = sqrt(1 + (0.1 sin phi)^2 / sinh^2(u)).
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double phi = grid.polar_angles()[j];
    const double du = -0.1 * std::sin(phi);
    const double th = std::sinh(u.values[j]);
    const double v_want = std::sqrt(1.0 + du * du / (th * th));
    CHECK(f.v[j] == doctest::Approx(v_want).epsilon(1e-9));
    CHECK(f.s[j] == doctest::Approx(th / v_want).epsilon(1e-9));
    CHECK(f.v[j] >= 1.0);
    CHECK(f.s[j] > 0.0);
  }
  const std::size_t mid = 128; // phi = pi/2 exactly
  CHECK(grid.polar_angles()[mid] == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(f.v[mid] == doctest::Approx(1.003613778607).epsilon(1e-9));
}

TEST_CASE("support function bounded by theta with equality at critical points") {
  const auto space = hyperbolic3();
  const BaseGrid grid = BaseGrid::make(Chart::Torus2D, 32);
  GeometryComputer gc(grid);
  ScalarField u(grid);
  const int n = grid.resolution();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      u.values[static_cast<std::size_t>(i) * n + j] = 1.0 + 0.05 * std::sin(i * grid.spacing());
  const auto& f = gc.compute_geometry_only(space, u.values);
  for (std::size_t i = 0; i < f.size; ++i)
    CHECK(f.s[i] <= f.theta[i] * (1.0 + 1e-12));
  // Equality where cos(y1) = 0: rows i = n/4 and 3n/4.
  const std::size_t crest = static_cast<std::size_t>(n / 4) * n + 3;
  CHECK(f.s[crest] == doctest::Approx(f.theta[crest]).epsilon(1e-12));
}

TEST_CASE("curvature matches the independent fine-grid oracle") {
  const auto space = hyperbolic3();
  const int m_prod = 512, m_oracle = 8192;
  const BaseGrid grid = BaseGrid::make(Chart::AxisymSphere, m_prod);
  GeometryComputer gc(grid);

  auto theta = [](double r) { return std::sinh(r); };
  auto theta1 = [](double r) { return std::cosh(r); };

  SUBCASE("small perturbation eps = 1e-4") {
    auto ufn = [](double phi) { return 1.0 + 1e-4 * std::cos(phi); };
    const ScalarField u = axisym_field(grid, ufn);
    const auto& f = gc.compute(space, u.values, FlowType::LcfH2H1);
    const auto ref = oracle1d::sphere(ufn, theta, theta1, m_oracle);
    const int stride = m_oracle / m_prod;
    double worst = 0.0;
    for (int j = 0; j < m_prod; ++j) {
      const int k = stride * j + stride / 2;
      REQUIRE(ref.phi[static_cast<std::size_t>(k)] ==
              doctest::Approx(grid.polar_angles()[static_cast<std::size_t>(j)]).epsilon(1e-13));
      worst = std::max(worst, std::abs(f.kappa1[static_cast<std::size_t>(j)] -
                                       ref.kappa1[static_cast<std::size_t>(k)]));
      worst = std::max(worst, std::abs(f.kappa2[static_cast<std::size_t>(j)] -
                                       ref.kappa2[static_cast<std::size_t>(k)]));
    }
    CHECK(worst < 1e-6);
  }

  SUBCASE("seeded random band-limited graphs, eps = 0.1") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      SplitMix64 rng(seed);
      double c[4];
      for (auto& x : c) x = rng.next_symmetric();
      auto ufn = [&](double phi) {
        double acc = 0.0;
        for (int k = 1; k <= 4; ++k) acc += c[k - 1] * std::cos(k * phi);
        return 1.0 + 0.05 * acc;
      };
      const ScalarField u = axisym_field(grid, ufn);
      const auto& f = gc.compute_geometry_only(space, u.values);
      const auto ref = oracle1d::sphere(ufn, theta, theta1, m_oracle);
      const int stride = m_oracle / m_prod;
      double worst = 0.0;
      for (int j = 0; j < m_prod; ++j) {
        const int k = stride * j + stride / 2;
        worst = std::max(worst, std::abs(f.kappa1[static_cast<std::size_t>(j)] -
                                         ref.kappa1[static_cast<std::size_t>(k)]));
        worst = std::max(worst, std::abs(f.H1[static_cast<std::size_t>(j)] -
                                         ref.H1[static_cast<std::size_t>(k)]));
        worst = std::max(worst, std::abs(f.s[static_cast<std::size_t>(j)] -
                                         ref.s[static_cast<std::size_t>(k)]));
      }
      CHECK(worst < 1e-6);
    }
  }
}

TEST_CASE("curvature error decays with observed order >= 1.8 under refinement") {
  const auto space = cosh_torus();
  auto ufn = [](double y1) { return 1.0 + 0.1 * std::sin(y1); };
  const auto ref = oracle1d::flat_periodic(
      ufn, [](double r) { return std::cosh(r); }, [](double r) { return std::sinh(r); }, 8192);
  auto worst_err = [&](int n) {
    const BaseGrid grid = BaseGrid::make(Chart::Torus2D, n);
    GeometryComputer gc(grid);
    ScalarField u(grid);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        u.values[static_cast<std::size_t>(i) * n + j] = ufn(i * grid.spacing());
    const auto& f = gc.compute_geometry_only(space, u.values);
    const int stride = 8192 / n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::size_t node = static_cast<std::size_t>(i) * n; // j = 0 column
      const std::size_t k = static_cast<std::size_t>(stride * i);
      worst = std::max(worst, std::abs(f.kappa1[node] - ref.kappa1[k]));
      worst = std::max(worst, std::abs(f.kappa2[node] - ref.kappa2[k]));
    }
    return worst;
  };
  const double e64 = worst_err(64), e128 = worst_err(128), e256 = worst_err(256);
  CHECK(std::log2(e64 / e128) > 1.8);
  CHECK(std::log2(e128 / e256) > 1.8);
}

TEST_CASE("curvature function evaluation") {
  CHECK(curvature_function_eval(CurvatureKind::QuotientH2H1, 1.0, 1.0) == 1.0);
  CHECK(curvature_function_eval(CurvatureKind::QuotientH2H1, 1.0, 2.0) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(curvature_function_eval(CurvatureKind::QuotientH2H1, 1e-12, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-11));
  CHECK(curvature_function_eval(CurvatureKind::Mean, 1.0, 3.0) == 2.0);
  CHECK_THROWS_AS((void)curvature_function_eval(CurvatureKind::QuotientH2H1, -0.1, 1.0),
                  ConvexityLossError);
  CHECK_THROWS_AS((void)curvature_function_eval(CurvatureKind::Mean, -2.0, 1.0),
                  MeanConvexityLossError);
}

TEST_CASE("normal speeds at slices") {
  const auto space = hyperbolic3();
  const BaseGrid grid = BaseGrid::make(Chart::AxisymSphere, 64);
  GeometryComputer gc(grid);
  ScalarField u(grid, 1.0);

  gc.compute(space, u.values, FlowType::LcfH2H1);
  CHECK(gc.reductions().speed_abs_max < 1e-12);

  gc.compute(space, u.values, FlowType::Gl);
  CHECK(gc.reductions().speed_abs_max < 1e-12);

  const auto& f = gc.compute(space, u.values, FlowType::Imcf);
  const double want = std::tanh(1.0) / 2.0; // 1/(2 coth 1) ~ 0.380797
  for (std::size_t i = 0; i < f.size; ++i)
    CHECK(f.speed[i] == doctest::Approx(want).epsilon(1e-12));

  // The standalone speed_field op agrees with the fused kernel per flow type.
  const GeometryFields snap = second_fundamental_form(u, space);
  for (FlowType type : {FlowType::LcfH2H1, FlowType::Imcf, FlowType::Gl}) {
    const ScalarField psi = speed_field(space, snap, type, grid);
    const auto& fused = gc.compute(space, u.values, type);
    for (std::size_t i = 0; i < psi.size(); ++i)
      CHECK(psi.values[i] == doctest::Approx(fused.speed[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("umbilicity of a single anisotropic node") {
  const auto [k1, k2] = principal_curvatures(1, 0, 1, 1, 0, 2);
  CHECK((k2 - k1) / (k1 + k2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("umbilicity decays linearly in the perturbation size") {
  const auto space = hyperbolic3();
  const BaseGrid grid = BaseGrid::make(Chart::AxisymSphere, 128);
  GeometryComputer gc(grid);
  // cos(phi) is an infinitesimal isometry mode (umbilicity quadratic in eps);
  // cos(2 phi) probes a genuine first-order shape change.
  auto umb_at = [&](double eps) {
    const ScalarField u =
        axisym_field(grid, [&](double phi) { return 1.0 + eps * std::cos(2.0 * phi); });
    return umbilicity(gc.compute_geometry_only(space, u.values));
  };
  const double u1 = umb_at(1e-3), u2 = umb_at(5e-4), u3 = umb_at(2.5e-4);
  CHECK(u1 / u2 == doctest::Approx(2.0).epsilon(0.02));
  CHECK(u2 / u3 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("Newton-Maclaurin H2 <= H1^2 with equality only at umbilic nodes") {
  const auto space = cosh_torus();
  const BaseGrid grid = BaseGrid::make(Chart::Torus2D, 48);
  GeometryComputer gc(grid);
  const RandomInit init = init_random(space, grid, 1.0, 0.1, 99);
  const auto& f = gc.compute_geometry_only(space, init.state.u.values);
  for (std::size_t i = 0; i < f.size; ++i) {
    CHECK(f.H2[i] <= f.H1[i] * f.H1[i] * (1.0 + 1e-14));
    if (std::abs(f.kappa1[i] - f.kappa2[i]) < 1e-12 * std::abs(f.kappa1[i]))
      CHECK(std::abs(f.H1[i] * f.H1[i] - f.H2[i]) <= 1e-14 * f.H1[i] * f.H1[i]);
    CHECK(f.v[i] >= 1.0);
    CHECK(f.s[i] > 0.0);
  }
}

TEST_CASE("geometry error taxonomy") {
  const auto space = hyperbolic3(2.0);
  const BaseGrid grid = BaseGrid::make(Chart::AxisymSphere, 32);
  GeometryComputer gc(grid);

  SUBCASE("radial range exit names the worst node") {
    ScalarField u(grid, 1.0);
    u.values[7] = 2.5; // beyond b = 2
    try {
      gc.compute_geometry_only(space, u.values);
      FAIL("expected RadialRangeError");
    } catch (const RadialRangeError& e) {
      CHECK(e.node == 7);
      CHECK(e.value == 2.5);
    }
  }

  SUBCASE("quotient speed on a non-convex graph raises convexity loss") {
    // Deep concave dimple: kappa_1 < 0 somewhere.
    const ScalarField u =
        axisym_field(grid, [](double phi) { return 1.0 + 0.45 * std::cos(2 * phi); });
    const auto& f = gc.compute_geometry_only(space, u.values);
    REQUIRE(gc.reductions().kappa_min < 0.0);
    (void)f;
    CHECK_THROWS_AS((void)gc.compute(space, u.values, FlowType::LcfH2H1), ConvexityLossError);
  }

  SUBCASE("non-finite input raises a propagation error") {
    ScalarField u(grid, 1.0);
    u.values[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)gc.compute_geometry_only(space, u.values), NonFiniteError);
  }
}
