#ifndef WARPFLOW_SLICE_FUNCTIONALS_HPP
#define WARPFLOW_SLICE_FUNCTIONALS_HPP

#include "warpflow/warped_space.hpp"

namespace warpflow {

/// Exact functionals of the radial slice S_r.
struct SliceData {
  double area;            // theta^n |S0|
  double volume;          // |S0| int_a^r theta^n
  double int_H1;          // H1 * area
  double bulk_ricci_term; // (1/n) int over the enclosed region of Rc(dr,dr)
  double W2;              // int_H1 + bulk_ricci_term
  double H1;              // theta'/theta
};

SliceData slice_functionals(const WarpedSpace& space, double r);

/// Which slice-equality functional the comparison function inverts.
enum class ComparisonFunctional {
  W2,      // int H1 + (1/n) int Rc(dr,dr)
  GenMink, // int H1 - enclosed volume
};

/// Slice value of the selected functional at radius r.
double slice_comparison_value(const WarpedSpace& space, double r,
                              ComparisonFunctional which = ComparisonFunctional::W2);

/// phi(A): value of the functional on the slice of area A.  The slice area is
/// strictly increasing in r (theta' > 0), so the inversion is a bisection to
/// relative 1e-12.  Throws RangeError outside the attainable area range.
double phi_of_area(const WarpedSpace& space, double area,
                   ComparisonFunctional which = ComparisonFunctional::W2);

/// psi(V): same with the enclosed slice volume as the coordinate.
double psi_of_volume(const WarpedSpace& space, double volume,
                     ComparisonFunctional which = ComparisonFunctional::W2);

/// Radius of the slice with the given area (the bisection behind phi).
double slice_radius_of_area(const WarpedSpace& space, double area);
double slice_radius_of_volume(const WarpedSpace& space, double volume);

} // namespace warpflow

#endif
