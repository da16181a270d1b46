#include "warpflow/slice_functionals.hpp"

#include <cmath>

#include "warpflow/errors.hpp"

namespace warpflow {

SliceData slice_functionals(const WarpedSpace& space, double r) {
  const WarpFunction& w = space.warp;
  const WarpFunction::Jet j = w.eval(r);
  const double n = space.n;
  SliceData d;
  d.H1 = j.d1 / j.value;
  d.area = std::pow(j.value, n) * space.base_area;
  d.int_H1 = d.H1 * d.area;
  d.volume = space.base_area * w.integral_power(r, space.n);
  d.bulk_ricci_term = -space.base_area * w.integral_dd_power(r, space.n);
  d.W2 = d.int_H1 + d.bulk_ricci_term;
  return d;
}

double slice_comparison_value(const WarpedSpace& space, double r, ComparisonFunctional which) {
  const SliceData d = slice_functionals(space, r);
  return which == ComparisonFunctional::W2 ? d.W2 : d.int_H1 - d.volume;
}

namespace {

// Bisection for a strictly increasing map of r; `value` names the quantity
// for range diagnostics.
template <class F>
double invert_increasing(const WarpedSpace& space, F&& f, double target, const char* quantity) {
  const double a = space.warp.domain_min(), b = space.warp.domain_max();
  const double pad = 1e-12 * (b - a);
  double lo = a + pad, hi = b - pad;
  const double f_lo = f(lo), f_hi = f(hi);
  if (!(target >= f_lo && target <= f_hi)) throw RangeError(quantity, target, f_lo, f_hi);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

} // namespace

double slice_radius_of_area(const WarpedSpace& space, double area) {
  const double n = space.n;
  return invert_increasing(
      space,
      [&](double r) { return std::pow(space.warp.eval(r).value, n) * space.base_area; },
      area, "area");
}

double slice_radius_of_volume(const WarpedSpace& space, double volume) {
  return invert_increasing(
      space,
      [&](double r) { return space.base_area * space.warp.integral_power(r, space.n); },
      volume, "volume");
}

double phi_of_area(const WarpedSpace& space, double area, ComparisonFunctional which) {
  return slice_comparison_value(space, slice_radius_of_area(space, area), which);
}

double psi_of_volume(const WarpedSpace& space, double volume, ComparisonFunctional which) {
  return slice_comparison_value(space, slice_radius_of_volume(space, volume), which);
}

} // namespace warpflow
