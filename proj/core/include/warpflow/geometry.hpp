#ifndef WARPFLOW_GEOMETRY_HPP
#define WARPFLOW_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "warpflow/base_grid.hpp"
#include "warpflow/warped_space.hpp"

namespace warpflow {

/// Curvature function entering the flow speed.
enum class CurvatureKind {
  None,         // no speed (geometry only / gl flow curvature function)
  QuotientH2H1, // F = H2/H1, requires kappa in the positive cone
  Mean,         // F = H1, requires H > 0 (inverse mean curvature speed 1/(n H1))
};

enum class FlowType { LcfH2H1, Imcf, Gl };

CurvatureKind curvature_kind_for(FlowType type);

/// Per-node extrinsic geometry of the graph M = {(u(y), y)}.
struct GeometryFields {
  std::size_t size = 0;
  std::vector<double> g11, g12, g22, det_g; // induced metric
  std::vector<double> v, s;                 // gradient factor, support function
  std::vector<double> theta, theta1;        // warp values along the graph
  std::vector<double> h11, h12, h22;        // second fundamental form
  std::vector<double> kappa1, kappa2;       // principal curvatures, ascending
  std::vector<double> H1, H2, F_value;      // normalized symmetric functions, F
  std::vector<double> speed;                // normal speed psi
  std::vector<double> grad_u_sq;            // |grad u|^2_g = g^{ij} u_i u_j
  std::vector<double> area_density;         // sqrt(det g / det sigma)

  void resize(std::size_t n);
};

/// Reductions gathered during a geometry pass.
struct GeomReductions {
  double u_min = 0.0, u_max = 0.0;
  double kappa_min = 0.0, kappa_max = 0.0;
  double H1_min = 0.0;
  double v_max = 0.0;
  double det_g_min = 0.0;
  double speed_abs_max = 0.0;
  double rhs_abs_max = 0.0;
  double dt_scale_min = 0.0;  // min over nodes of the parabolic dt quantity
  double finite_probe = 0.0;  // NaN/Inf sentinel accumulated over nodes
};

/// Evaluates graph geometry on a grid, reusing scratch buffers between calls.
/// All outputs are immutable snapshots of the last compute() call.  Instances
/// are not shareable across threads; independent instances over the same grid
/// evaluate concurrently without shared state.
class GeometryComputer {
public:
  explicit GeometryComputer(const BaseGrid& grid);

  /// Full per-node evaluation.  Throws RadialRangeError when u leaves the
  /// domain, SingularMetricError on a degenerate induced metric,
  /// ConvexityLossError / MeanConvexityLossError when the speed's cone
  /// precondition fails, NonFiniteError on NaN propagation.
  const GeometryFields& compute(const WarpedSpace& space, std::span<const double> u,
                                FlowType flow);

  /// Geometry without a speed precondition (initialization probes, audits of
  /// non-convex states).
  const GeometryFields& compute_geometry_only(const WarpedSpace& space,
                                              std::span<const double> u);

  /// Hot path for time stepping: computes only the graph velocity
  /// rhs = psi * v and the reductions; per-node fields are not stored.
  std::span<const double> flow_rhs(const WarpedSpace& space, std::span<const double> u,
                                   FlowType flow);

  const GeometryFields& fields() const { return fields_; }
  const GeomReductions& reductions() const { return red_; }
  const BaseGrid& grid() const { return *grid_; }

private:
  template <int SpeedSel, bool Store>
  void kernel_torus(const WarpedSpace& space, std::span<const double> u);
  template <int SpeedSel, bool Store>
  void kernel_axisym(const WarpedSpace& space, std::span<const double> u);
  template <bool Store>
  void run_kernel(const WarpedSpace& space, std::span<const double> u, int speed_sel);
  void validate_radial_range(const WarpedSpace& space, std::span<const double> u);
  void post_checks(const WarpedSpace& space, std::span<const double> u, int speed_sel);

  const BaseGrid* grid_;
  ChartPartials parts_;
  std::vector<double> th_, th1_;
  std::vector<double> rhs_;
  GeometryFields fields_;
  GeomReductions red_;
};

/// Named operations built on GeometryComputer (test and audit surface).

/// Induced metric data of the graph: g_ij = u_i u_j + theta^2 sigma_ij with
/// v and the support function s = theta/v.  No convexity requirement.
GeometryFields induced_metric(const ScalarField& u, const WarpedSpace& space);

/// Second fundamental form via the support-function identity
/// h_ij = (theta' theta^2 sigma_ij - theta u_;ij)/s (covariant Hessian with
/// analytic induced Christoffel symbols); kappa come along for free.
GeometryFields second_fundamental_form(const ScalarField& u, const WarpedSpace& space);

/// Principal curvatures of the pencil (h, g) at one node, ascending.
std::pair<double, double> principal_curvatures(double g11, double g12, double g22,
                                               double h11, double h12, double h22);

/// F(kappa) for the descriptor kind; checks the cone precondition.
double curvature_function_eval(CurvatureKind kind, double kappa1, double kappa2);

/// Per-node normal speed psi for the flow type, from precomputed geometry;
/// checks the flow's cone precondition.
ScalarField speed_field(const WarpedSpace& space, const GeometryFields& geom,
                        FlowType type, const BaseGrid& grid);

/// max over nodes of (kappa2 - kappa1)/(kappa1 + kappa2); 0 iff umbilic.
double umbilicity(const GeometryFields& geom);

/// Pointwise normal speed for a flow type from precomputed geometry.
double normal_speed(FlowType type, double theta1, double s, double kappa1, double kappa2);

} // namespace warpflow

#endif
