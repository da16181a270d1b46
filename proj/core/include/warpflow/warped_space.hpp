#ifndef WARPFLOW_WARPED_SPACE_HPP
#define WARPFLOW_WARPED_SPACE_HPP

#include <array>
#include <string>

#include "warpflow/warp_function.hpp"

namespace warpflow {

enum class BaseKind { Torus, UnitSphere };

std::string to_string(BaseKind base);

/// Warped product N = (a,b) x S0 with metric dr^2 + theta^2(r) sigma.
/// Supported bases have constant-curvature sigma, so the base Ricci tensor
/// is c_base * sigma exactly (torus: 0, unit n-sphere: n-1).
struct WarpedSpace {
  WarpFunction warp;
  BaseKind base;
  int n; // base dimension; flows fix n = 2, radial formulas accept general n
  double base_ricci_constant;
  double base_area; // |S0|_sigma

  static WarpedSpace make(WarpFunction warp, BaseKind base, int n = 2);

  std::string describe() const;
};

/// Result of sampling the standing assumptions on (theta, base).
struct AssumptionReport {
  bool theta_positive_derivative = false; // theta' > 0 on the sampled domain
  bool theta_dd_nonneg = false;           // theta'' >= 0 everywhere
  bool theta_dd_nonpos = false;           // theta'' <= 0 everywhere
  bool ricci_radially_monotone = false;   // d/dr (theta''/theta) <= 0
  enum class Branch { DdNonneg, DdNonposMonotone, Neither };
  Branch branch = Branch::Neither;

  bool mink_condition = false; // base Ricci >= (n-1)(theta'^2 - theta'' theta) sigma
  double mink_margin = 0.0;    // c_base - (n-1) max_r(theta'^2 - theta'' theta)
  bool mink_strict = false;

  bool genmink_applicable = false; // family expressible as alpha sinh + beta cosh
  bool genmink_condition = false;  // base Ricci >= (n-1)(alpha^2 - beta^2) sigma
  double genmink_margin = 0.0;
  bool genmink_strict = false;

  /// Supported for slice-convergence flows (theta' > 0 and a valid branch).
  bool supported() const {
    return theta_positive_derivative && branch != Branch::Neither;
  }
};

/// Samples r on a uniform grid of (a,b) (cell centers, `samples` >= 2 points)
/// and reports assumption flags with minimal sampled margins.
AssumptionReport check_assumptions(const WarpedSpace& space, int samples = 1024);

/// Ambient Ricci in block form, for X, Y split into a radial component and
/// base components; sigma_xy is the sigma-inner product of the base parts.
///   Rc(dr, dr)      = -n theta''/theta
///   Rc(dr, base)    = 0
///   Rc(base, base)  = (c_base - theta theta'' - (n-1) theta'^2) sigma(X, Y)
double ambient_ricci_block(const WarpedSpace& space, double r, double xr_yr, double sigma_xy);

/// Ambient vector given as radial component plus base components with respect
/// to a sigma-orthonormal frame.
struct AmbientVector {
  double radial;
  std::array<double, 2> base;
};

double ambient_ricci(const WarpedSpace& space, double r, const AmbientVector& x,
                     const AmbientVector& y);

/// ambient metric g-bar(X, X) for the same frame convention (used by tests).
double ambient_metric(const WarpedSpace& space, double r, const AmbientVector& x,
                      const AmbientVector& y);

/// Primitive Theta of theta with Theta(a) = 0.
double theta_primitive(const WarpedSpace& space, double r);

} // namespace warpflow

#endif
