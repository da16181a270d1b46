#include "warpflow/warped_space.hpp"

#include <cmath>
#include <sstream>

#include "warpflow/errors.hpp"

namespace warpflow {

std::string to_string(BaseKind base) {
  return base == BaseKind::Torus ? "torus" : "unit-sphere";
}

WarpedSpace WarpedSpace::make(WarpFunction warp, BaseKind base, int n) {
  if (n < 2) throw ConfigError("space.n", "requires n >= 2");
  double c_base = 0.0, area = 0.0;
  if (base == BaseKind::Torus) {
    c_base = 0.0;
    area = std::pow(2.0 * M_PI, n);
  } else {
    c_base = static_cast<double>(n - 1);
    // |S^n| = 2 pi^{(n+1)/2} / Gamma((n+1)/2)
    area = 2.0 * std::pow(M_PI, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
  }
  return WarpedSpace{std::move(warp), base, n, c_base, area};
}

std::string WarpedSpace::describe() const {
  std::ostringstream os;
  os << warp.describe() << ", base " << to_string(base) << ", n=" << n;
  return os.str();
}

AssumptionReport check_assumptions(const WarpedSpace& space, int samples) {
  if (samples < 2) throw ConfigError("samples", "requires samples >= 2");
  const WarpFunction& w = space.warp;
  const double a = w.domain_min(), b = w.domain_max();
  AssumptionReport rep;
  rep.theta_positive_derivative = true;
  rep.theta_dd_nonneg = true;
  rep.theta_dd_nonpos = true;
  rep.ricci_radially_monotone = true;
  double max_cond = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double r = a + (i + 0.5) * (b - a) / samples;
    const WarpFunction::Jet j = w.eval(r);
    if (!(j.d1 > 0.0)) rep.theta_positive_derivative = false;
    if (j.d2 < 0.0) rep.theta_dd_nonneg = false;
    if (j.d2 > 0.0) rep.theta_dd_nonpos = false;
    // d/dr (theta''/theta) = (theta''' theta - theta'' theta') / theta^2
    if (j.d3 * j.value - j.d2 * j.d1 > 0.0) rep.ricci_radially_monotone = false;
    max_cond = std::max(max_cond, j.d1 * j.d1 - j.d2 * j.value);
  }
  if (rep.theta_dd_nonneg)
    rep.branch = AssumptionReport::Branch::DdNonneg;
  else if (rep.theta_dd_nonpos && rep.ricci_radially_monotone)
    rep.branch = AssumptionReport::Branch::DdNonposMonotone;
  else
    rep.branch = AssumptionReport::Branch::Neither;

  // Margins carry roundoff from the sampled sweep; flags use an ulp-scale
  // band so exact-equality cases (margin 0) report as non-strict holds.
  const double tol = 1e-12 * (1.0 + std::abs(space.base_ricci_constant) + std::abs(max_cond));
  rep.mink_margin = space.base_ricci_constant - (space.n - 1) * max_cond;
  rep.mink_condition = rep.mink_margin >= -tol;
  rep.mink_strict = rep.mink_margin > tol;

  double alpha = 0.0, beta = 0.0;
  if (w.sinh_cosh_coefficients(alpha, beta)) {
    rep.genmink_applicable = alpha >= beta && beta >= 0.0 && alpha > 0.0;
    rep.genmink_margin =
        space.base_ricci_constant - (space.n - 1) * (alpha * alpha - beta * beta);
    rep.genmink_condition = rep.genmink_applicable && rep.genmink_margin >= -tol;
    rep.genmink_strict = rep.genmink_applicable && rep.genmink_margin > tol;
  }
  return rep;
}

double ambient_ricci_block(const WarpedSpace& space, double r, double xr_yr, double sigma_xy) {
  const WarpFunction::Jet j = space.warp.eval(r);
  const double n = space.n;
  const double radial_block = -n * j.d2 / j.value;
  const double base_block =
      space.base_ricci_constant - j.value * j.d2 - (n - 1.0) * j.d1 * j.d1;
  return radial_block * xr_yr + base_block * sigma_xy;
}

double ambient_ricci(const WarpedSpace& space, double r, const AmbientVector& x,
                     const AmbientVector& y) {
  const double sigma_xy = x.base[0] * y.base[0] + x.base[1] * y.base[1];
  return ambient_ricci_block(space, r, x.radial * y.radial, sigma_xy);
}

double ambient_metric(const WarpedSpace& space, double r, const AmbientVector& x,
                      const AmbientVector& y) {
  const WarpFunction::Jet j = space.warp.eval(r);
  const double sigma_xy = x.base[0] * y.base[0] + x.base[1] * y.base[1];
  return x.radial * y.radial + j.value * j.value * sigma_xy;
}

double theta_primitive(const WarpedSpace& space, double r) {
  return space.warp.primitive(r);
}

} // namespace warpflow
