#include "warpflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "warpflow/errors.hpp"
#include "warpflow/math_util.hpp"

namespace warpflow {

CurvatureKind curvature_kind_for(FlowType type) {
  switch (type) {
    case FlowType::LcfH2H1: return CurvatureKind::QuotientH2H1;
    case FlowType::Imcf: return CurvatureKind::Mean;
    case FlowType::Gl: return CurvatureKind::None;
  }
  return CurvatureKind::None;
}

void GeometryFields::resize(std::size_t n) {
  size = n;
  for (auto* vec : {&g11, &g12, &g22, &det_g, &v, &s, &theta, &theta1, &h11, &h12, &h22,
                    &kappa1, &kappa2, &H1, &H2, &F_value, &speed, &grad_u_sq, &area_density})
    vec->assign(n, 0.0);
}

GeometryComputer::GeometryComputer(const BaseGrid& grid) : grid_(&grid) {
  const std::size_t n = grid.node_count();
  th_.resize(n);
  th1_.resize(n);
  rhs_.resize(n);
}

void GeometryComputer::validate_radial_range(const WarpedSpace& space,
                                             std::span<const double> u) {
  double lo = u[0], hi = u[0];
  for (double x : u) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  red_.u_min = lo;
  red_.u_max = hi;
  const double a = space.warp.domain_min(), b = space.warp.domain_max();
  if (!(lo > a && hi < b) || !std::isfinite(lo) || !std::isfinite(hi)) {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (!(u[i] > a && u[i] < b)) throw RadialRangeError(i, u[i], a, b);
    throw RadialRangeError(0, lo, a, b);
  }
}

namespace {
// Speed selectors, compile-time: 0 none, 1 lcf quotient, 2 imcf, 3 gl.
constexpr int kSpeedNone = 0;
constexpr int kSpeedLcf = 1;
constexpr int kSpeedImcf = 2;
constexpr int kSpeedGl = 3;

inline int speed_sel_for(FlowType flow) {
  switch (flow) {
    case FlowType::LcfH2H1: return kSpeedLcf;
    case FlowType::Imcf: return kSpeedImcf;
    case FlowType::Gl: return kSpeedGl;
  }
  return kSpeedNone;
}
} // namespace

template <int SpeedSel, bool Store>
void GeometryComputer::kernel_torus(const WarpedSpace& space, std::span<const double> u) {
  (void)space;
  const std::size_t n = u.size();
  const double* __restrict d1 = parts_.d1.data();
  const double* __restrict d2 = parts_.d2.data();
  const double* __restrict d11 = parts_.d11.data();
  const double* __restrict d12 = parts_.d12.data();
  const double* __restrict d22 = parts_.d22.data();
  const double* __restrict th = th_.data();
  const double* __restrict th1 = th1_.data();
  double* __restrict rhs = rhs_.data();

  double kmin = std::numeric_limits<double>::infinity();
  double kmax = -std::numeric_limits<double>::infinity();
  double h1min = std::numeric_limits<double>::infinity();
  double vmax = 1.0;
  double detmin = std::numeric_limits<double>::infinity();
  double psimax = 0.0, rhsmax = 0.0;
  double dtmin = std::numeric_limits<double>::infinity();
  double nan_acc = 0.0;

#pragma omp simd reduction(min : kmin, h1min, detmin, dtmin) \
    reduction(max : kmax, vmax, psimax, rhsmax) reduction(+ : nan_acc)
  for (std::size_t i = 0; i < n; ++i) {
    const double u1 = d1[i], u2 = d2[i];
    const double u11 = d11[i], u12 = d12[i], u22 = d22[i];
    const double t = th[i], t1 = th1[i];
    const double t_sq = t * t;

    const double g11 = u1 * u1 + t_sq;
    const double g12 = u1 * u2;
    const double g22 = u2 * u2 + t_sq;
    const double det = g11 * g22 - g12 * g12;
    const double inv_det = 1.0 / det;

    const double grad_sigma = u1 * u1 + u2 * u2;
    const double v = std::sqrt(1.0 + grad_sigma / t_sq);
    const double s = t / v;

    // d_k g_ij from the analytic expansion (sigma = identity on the torus).
    const double tt = 2.0 * t * t1;
    const double dg1_11 = 2.0 * u11 * u1 + tt * u1;
    const double dg1_12 = u11 * u2 + u1 * u12;
    const double dg1_22 = 2.0 * u12 * u2 + tt * u1;
    const double dg2_11 = 2.0 * u12 * u1 + tt * u2;
    const double dg2_12 = u12 * u2 + u1 * u22;
    const double dg2_22 = 2.0 * u22 * u2 + tt * u2;

    const double a1_11 = 0.5 * dg1_11;
    const double a2_11 = dg1_12 - 0.5 * dg2_11;
    const double a1_12 = 0.5 * dg2_11;
    const double a2_12 = 0.5 * dg1_22;
    const double a1_22 = dg2_12 - 0.5 * dg1_22;
    const double a2_22 = 0.5 * dg2_22;

    const double gi11 = g22 * inv_det, gi12 = -g12 * inv_det, gi22 = g11 * inv_det;
    const double c1_11 = gi11 * a1_11 + gi12 * a2_11;
    const double c2_11 = gi12 * a1_11 + gi22 * a2_11;
    const double c1_12 = gi11 * a1_12 + gi12 * a2_12;
    const double c2_12 = gi12 * a1_12 + gi22 * a2_12;
    const double c1_22 = gi11 * a1_22 + gi12 * a2_22;
    const double c2_22 = gi12 * a1_22 + gi22 * a2_22;

    const double uc11 = u11 - c1_11 * u1 - c2_11 * u2;
    const double uc12 = u12 - c1_12 * u1 - c2_12 * u2;
    const double uc22 = u22 - c1_22 * u1 - c2_22 * u2;

    // h_ij = (theta' theta^2 sigma_ij - theta u_;ij) / s
    const double inv_s = v / t;
    const double diag = t1 * t_sq;
    const double h11 = (diag - t * uc11) * inv_s;
    const double h12 = (-t * uc12) * inv_s;
    const double h22 = (diag - t * uc22) * inv_s;

    // Pencil eigenvalues of (h, g) via m = g^{-1} h; the discriminant uses
    // the cancellation-free similarity form so umbilic nodes stay exact.
    const double m11 = (g22 * h11 - g12 * h12) * inv_det;
    const double m12 = (g22 * h12 - g12 * h22) * inv_det;
    const double m21 = (g11 * h12 - g12 * h11) * inv_det;
    const double m22 = (g11 * h22 - g12 * h12) * inv_det;
    const double trace = m11 + m22;
    const double deth = m11 * m22 - m12 * m21;
    const double diff = m11 - m22;
    double disc = diff * diff + 4.0 * m12 * m21;
    const double scale2 = trace * trace + 4.0 * std::abs(deth);
    disc = (disc < 0.0 && disc >= -1e-14 * scale2) ? 0.0 : disc;
    const double root = std::sqrt(disc);
    const double q = (trace >= 0.0) ? 0.5 * (trace + root) : 0.5 * (trace - root);
    const double other = (q != 0.0) ? deth / q : 0.0;
    const double k1 = std::min(q, other);
    const double k2 = std::max(q, other);

    double psi = 0.0, fval = 0.0;
    if constexpr (SpeedSel == kSpeedLcf) {
      fval = 2.0 * deth / trace; // H2/H1
      psi = t1 / fval - s;
    } else if constexpr (SpeedSel == kSpeedImcf) {
      fval = 0.5 * trace; // H1
      psi = 1.0 / trace;  // 1/(n H1)
    } else if constexpr (SpeedSel == kSpeedGl) {
      psi = t1 - s * 0.5 * trace;
    }
    rhs[i] = psi * v;

    if constexpr (SpeedSel == kSpeedLcf) {
      const double lam = (g11 + g22 + std::sqrt((g11 - g22) * (g11 - g22) + 4.0 * g12 * g12)) *
                         (0.5 * inv_det);
      dtmin = std::min(dtmin, fval * fval / (t1 * lam));
    } else if constexpr (SpeedSel == kSpeedImcf) {
      const double lam = (g11 + g22 + std::sqrt((g11 - g22) * (g11 - g22) + 4.0 * g12 * g12)) *
                         (0.5 * inv_det);
      dtmin = std::min(dtmin, trace * trace / lam);
    }

    kmin = std::min(kmin, k1);
    kmax = std::max(kmax, k2);
    h1min = std::min(h1min, 0.5 * trace);
    vmax = std::max(vmax, v);
    detmin = std::min(detmin, det);
    psimax = std::max(psimax, std::abs(psi));
    rhsmax = std::max(rhsmax, std::abs(rhs[i]));
    nan_acc += k1 + k2 + s;

    if constexpr (Store) {
      fields_.g11[i] = g11;
      fields_.g12[i] = g12;
      fields_.g22[i] = g22;
      fields_.det_g[i] = det;
      fields_.v[i] = v;
      fields_.s[i] = s;
      fields_.theta[i] = t;
      fields_.theta1[i] = t1;
      fields_.h11[i] = h11;
      fields_.h12[i] = h12;
      fields_.h22[i] = h22;
      fields_.kappa1[i] = k1;
      fields_.kappa2[i] = k2;
      fields_.H1[i] = 0.5 * trace;
      fields_.H2[i] = deth;
      fields_.F_value[i] = fval;
      fields_.speed[i] = psi;
      fields_.grad_u_sq[i] =
          gi11 * u1 * u1 + 2.0 * gi12 * u1 * u2 + gi22 * u2 * u2;
      fields_.area_density[i] = t_sq * v;
    }
  }

  red_.kappa_min = kmin;
  red_.kappa_max = kmax;
  red_.H1_min = h1min;
  red_.v_max = vmax;
  red_.det_g_min = detmin;
  red_.speed_abs_max = psimax;
  red_.rhs_abs_max = rhsmax;
  red_.dt_scale_min = (SpeedSel == kSpeedLcf || SpeedSel == kSpeedImcf) ? dtmin : 1.0;
  red_.finite_probe = nan_acc;
}

template <int SpeedSel, bool Store>
void GeometryComputer::kernel_axisym(const WarpedSpace& space, std::span<const double> u) {
  const std::size_t n = u.size();
  const double* __restrict d1 = parts_.d1.data();
  const double* __restrict d11 = parts_.d11.data();
  const double* __restrict th = th_.data();
  const double* __restrict th1 = th1_.data();
  const double* __restrict phi = grid_->polar_angles().data();
  double* __restrict rhs = rhs_.data();

  double kmin = std::numeric_limits<double>::infinity();
  double kmax = -std::numeric_limits<double>::infinity();
  double h1min = std::numeric_limits<double>::infinity();
  double vmax = 1.0;
  double detmin = std::numeric_limits<double>::infinity();
  double psimax = 0.0, rhsmax = 0.0;
  double dtmin = std::numeric_limits<double>::infinity();
  double nan_acc = 0.0;

#pragma omp simd reduction(min : kmin, h1min, detmin, dtmin) \
    reduction(max : kmax, vmax, psimax, rhsmax) reduction(+ : nan_acc)
  for (std::size_t i = 0; i < n; ++i) {
    const double u1 = d1[i], u11 = d11[i];
    const double t = th[i], t1 = th1[i];
    const double t_sq = t * t;
    const double sin_phi = std::sin(phi[i]);
    const double cos_phi = std::cos(phi[i]);
    const double s22 = sin_phi * sin_phi;     // sigma_22
    const double ds22 = 2.0 * sin_phi * cos_phi; // d sigma_22 / d phi

    const double g11 = u1 * u1 + t_sq;
    const double g22 = t_sq * s22;
    const double det = g11 * g22;
    const double v = std::sqrt(1.0 + u1 * u1 / t_sq);
    const double s = t / v;

    const double tt = 2.0 * t * t1;
    const double dg1_11 = 2.0 * u11 * u1 + tt * u1;
    const double dg1_22 = tt * u1 * s22 + t_sq * ds22;

    const double inv_g11 = 1.0 / g11;
    const double c1_11 = 0.5 * dg1_11 * inv_g11;
    const double c1_22 = -0.5 * dg1_22 * inv_g11;

    const double uc11 = u11 - c1_11 * u1;
    const double uc22 = -c1_22 * u1;

    const double inv_s = v / t;
    const double h11 = (t1 * t_sq - t * uc11) * inv_s;
    const double h22 = (t1 * t_sq * s22 - t * uc22) * inv_s;

    // Diagonal pencil: m12 = m21 = 0, the discriminant is an exact square.
    const double m11 = h11 * inv_g11;
    const double m22 = h22 / g22;
    const double trace = m11 + m22;
    const double deth = m11 * m22;
    const double root = std::abs(m11 - m22);
    const double q = (trace >= 0.0) ? 0.5 * (trace + root) : 0.5 * (trace - root);
    const double other = (q != 0.0) ? deth / q : 0.0;
    const double k1 = std::min(q, other);
    const double k2 = std::max(q, other);

    double psi = 0.0, fval = 0.0;
    if constexpr (SpeedSel == kSpeedLcf) {
      fval = 2.0 * deth / trace;
      psi = t1 / fval - s;
    } else if constexpr (SpeedSel == kSpeedImcf) {
      fval = 0.5 * trace;
      psi = 1.0 / trace;
    } else if constexpr (SpeedSel == kSpeedGl) {
      psi = t1 - s * 0.5 * trace;
    }
    rhs[i] = psi * v;

    // Axisymmetric fields vary in phi only, so the parabolic scale uses g^11.
    if constexpr (SpeedSel == kSpeedLcf) {
      dtmin = std::min(dtmin, fval * fval * g11 / t1);
    } else if constexpr (SpeedSel == kSpeedImcf) {
      dtmin = std::min(dtmin, trace * trace * g11);
    }

    kmin = std::min(kmin, k1);
    kmax = std::max(kmax, k2);
    h1min = std::min(h1min, 0.5 * trace);
    vmax = std::max(vmax, v);
    detmin = std::min(detmin, det);
    psimax = std::max(psimax, std::abs(psi));
    rhsmax = std::max(rhsmax, std::abs(rhs[i]));
    nan_acc += k1 + k2 + s;

    if constexpr (Store) {
      fields_.g11[i] = g11;
      fields_.g12[i] = 0.0;
      fields_.g22[i] = g22;
      fields_.det_g[i] = det;
      fields_.v[i] = v;
      fields_.s[i] = s;
      fields_.theta[i] = t;
      fields_.theta1[i] = t1;
      fields_.h11[i] = h11;
      fields_.h12[i] = 0.0;
      fields_.h22[i] = h22;
      fields_.kappa1[i] = k1;
      fields_.kappa2[i] = k2;
      fields_.H1[i] = 0.5 * trace;
      fields_.H2[i] = deth;
      fields_.F_value[i] = fval;
      fields_.speed[i] = psi;
      fields_.grad_u_sq[i] = u1 * u1 * inv_g11;
      fields_.area_density[i] = t_sq * v;
    }
  }

  red_.kappa_min = kmin;
  red_.kappa_max = kmax;
  red_.H1_min = h1min;
  red_.v_max = vmax;
  red_.det_g_min = detmin;
  red_.speed_abs_max = psimax;
  red_.rhs_abs_max = rhsmax;
  red_.dt_scale_min = (SpeedSel == kSpeedLcf || SpeedSel == kSpeedImcf) ? dtmin : 1.0;
  red_.finite_probe = nan_acc;
  (void)space;
}

template <bool Store>
void GeometryComputer::run_kernel(const WarpedSpace& space, std::span<const double> u,
                                  int speed_sel) {
  validate_radial_range(space, u);
  grid_->partials(u, parts_);
  space.warp.eval_many(u.data(), u.size(), th_.data(), th1_.data());
  if constexpr (Store)
    if (fields_.size != u.size()) fields_.resize(u.size());
  if (grid_->chart() == Chart::Torus2D) {
    switch (speed_sel) {
      case kSpeedNone: kernel_torus<kSpeedNone, Store>(space, u); break;
      case kSpeedLcf: kernel_torus<kSpeedLcf, Store>(space, u); break;
      case kSpeedImcf: kernel_torus<kSpeedImcf, Store>(space, u); break;
      default: kernel_torus<kSpeedGl, Store>(space, u); break;
    }
  } else {
    switch (speed_sel) {
      case kSpeedNone: kernel_axisym<kSpeedNone, Store>(space, u); break;
      case kSpeedLcf: kernel_axisym<kSpeedLcf, Store>(space, u); break;
      case kSpeedImcf: kernel_axisym<kSpeedImcf, Store>(space, u); break;
      default: kernel_axisym<kSpeedGl, Store>(space, u); break;
    }
  }
}

void GeometryComputer::post_checks(const WarpedSpace& space, std::span<const double> u,
                                   int speed_sel) {
  // Save reductions before any diagnostic rescan overwrites them.
  const GeomReductions red = red_;
  auto rescan = [&]() -> const GeometryFields& {
    run_kernel<true>(space, u, kSpeedNone);
    red_ = red;
    return fields_;
  };
  if (!(red.det_g_min > 0.0)) {
    const auto& f = rescan();
    for (std::size_t i = 0; i < f.size; ++i)
      if (!(f.det_g[i] > 0.0)) throw SingularMetricError(i, f.det_g[i]);
    throw SingularMetricError(0, red.det_g_min);
  }
  if (!std::isfinite(red.finite_probe)) throw NonFiniteError("graph geometry");
  if (speed_sel == kSpeedLcf && !(red.kappa_min > 0.0)) {
    const auto& f = rescan();
    for (std::size_t i = 0; i < f.size; ++i)
      if (!(f.kappa1[i] > 0.0)) throw ConvexityLossError(i, f.kappa1[i], f.kappa2[i]);
    throw ConvexityLossError(0, red.kappa_min, red.kappa_max);
  }
  if (speed_sel == kSpeedImcf && !(red.H1_min > 0.0)) {
    const auto& f = rescan();
    for (std::size_t i = 0; i < f.size; ++i)
      if (!(f.H1[i] > 0.0)) throw MeanConvexityLossError(i, f.H1[i]);
    throw MeanConvexityLossError(0, red.H1_min);
  }
}

const GeometryFields& GeometryComputer::compute(const WarpedSpace& space,
                                                std::span<const double> u, FlowType flow) {
  const int sel = speed_sel_for(flow);
  run_kernel<true>(space, u, sel);
  post_checks(space, u, sel);
  return fields_;
}

const GeometryFields& GeometryComputer::compute_geometry_only(const WarpedSpace& space,
                                                              std::span<const double> u) {
  run_kernel<true>(space, u, kSpeedNone);
  post_checks(space, u, kSpeedNone);
  return fields_;
}

std::span<const double> GeometryComputer::flow_rhs(const WarpedSpace& space,
                                                   std::span<const double> u, FlowType flow) {
  const int sel = speed_sel_for(flow);
  run_kernel<false>(space, u, sel);
  post_checks(space, u, sel);
  return rhs_;
}

GeometryFields induced_metric(const ScalarField& u, const WarpedSpace& space) {
  GeometryComputer computer(*u.grid);
  return computer.compute_geometry_only(space, u.values);
}

GeometryFields second_fundamental_form(const ScalarField& u, const WarpedSpace& space) {
  GeometryComputer computer(*u.grid);
  return computer.compute_geometry_only(space, u.values);
}

std::pair<double, double> principal_curvatures(double g11, double g12, double g22, double h11,
                                               double h12, double h22) {
  return pencil_eigenvalues_2x2(g11, g12, g22, h11, h12, h22);
}

ScalarField speed_field(const WarpedSpace& space, const GeometryFields& geom, FlowType type,
                        const BaseGrid& grid) {
  (void)space;
  ScalarField psi(grid);
  for (std::size_t i = 0; i < geom.size; ++i)
    psi.values[i] = normal_speed(type, geom.theta1[i], geom.s[i], geom.kappa1[i],
                                 geom.kappa2[i]);
  return psi;
}

double curvature_function_eval(CurvatureKind kind, double kappa1, double kappa2) {
  switch (kind) {
    case CurvatureKind::QuotientH2H1: {
      if (!(kappa1 > 0.0) || !(kappa2 > 0.0))
        throw ConvexityLossError(0, kappa1, kappa2);
      return 2.0 * kappa1 * kappa2 / (kappa1 + kappa2);
    }
    case CurvatureKind::Mean: {
      const double h1 = 0.5 * (kappa1 + kappa2);
      if (!(h1 > 0.0)) throw MeanConvexityLossError(0, h1);
      return h1;
    }
    case CurvatureKind::None:
      return 0.0;
  }
  return 0.0;
}

double umbilicity(const GeometryFields& geom) {
  double worst = 0.0;
  for (std::size_t i = 0; i < geom.size; ++i) {
    const double sum = geom.kappa1[i] + geom.kappa2[i];
    if (!(sum > 0.0)) throw MeanConvexityLossError(i, 0.5 * sum);
    worst = std::max(worst, (geom.kappa2[i] - geom.kappa1[i]) / sum);
  }
  return worst;
}

double normal_speed(FlowType type, double theta1, double s, double kappa1, double kappa2) {
  switch (type) {
    case FlowType::LcfH2H1:
      return theta1 / curvature_function_eval(CurvatureKind::QuotientH2H1, kappa1, kappa2) - s;
    case FlowType::Imcf:
      return 0.5 / curvature_function_eval(CurvatureKind::Mean, kappa1, kappa2);
    case FlowType::Gl:
      return theta1 - s * 0.5 * (kappa1 + kappa2);
  }
  return 0.0;
}

} // namespace warpflow
