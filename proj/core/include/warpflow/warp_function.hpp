#ifndef WARPFLOW_WARP_FUNCTION_HPP
#define WARPFLOW_WARP_FUNCTION_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace warpflow {

enum class WarpFamily { Sinh, Cosh, LinearCombination, Affine, Polynomial };

std::string to_string(WarpFamily family);

/// Warp function family on an open radial domain (a, b), with theta > 0
/// on the domain and closed-form derivatives up to third order.
///
/// Families: sinh(r), cosh(r), alpha*sinh(r) + beta*cosh(r), r + c,
/// and user polynomials sum_k c_k r^k.
class WarpFunction {
public:
  struct Jet {
    double value; // theta
    double d1;    // theta'
    double d2;    // theta''
    double d3;    // theta'''
  };

  static WarpFunction sinh_warp(double a, double b);
  static WarpFunction cosh_warp(double a, double b);
  static WarpFunction linear_combination(double alpha, double beta, double a, double b);
  static WarpFunction affine(double c, double a, double b);
  static WarpFunction polynomial(std::vector<double> coeffs, double a, double b);

  WarpFamily family() const { return family_; }
  double domain_min() const { return a_; }
  double domain_max() const { return b_; }
  bool in_domain(double r) const { return r > a_ && r < b_; }
  void require_in_domain(double r) const;

  /// True when theta'' == theta identically (sinh/cosh combinations), so the
  /// bulk Ricci term reduces to minus the enclosed volume.
  bool second_derivative_equals_value() const {
    return family_ == WarpFamily::Sinh || family_ == WarpFamily::Cosh ||
           family_ == WarpFamily::LinearCombination;
  }

  /// Coefficients (alpha, beta) when the family is alpha*sinh + beta*cosh;
  /// sinh = (1,0), cosh = (0,1).  Returns false for affine/polynomial.
  bool sinh_cosh_coefficients(double& alpha, double& beta) const;

  /// theta and derivatives at r; throws DomainError outside (a, b).
  Jet eval(double r) const;

  /// Hot-path evaluation of theta, theta' for pre-validated radii.
  void eval_many(const double* r, std::size_t n, double* theta, double* theta1) const;

  /// Primitive Theta(r) = int_a^r theta, normalized Theta(a) = 0.
  double primitive(double r) const;

  /// int_a^r theta^n (closed form for n = 2 standard families, adaptive
  /// Gauss-Legendre otherwise, relative 1e-12).
  double integral_power(double r, int n) const;

  /// int_a^r theta'' theta^(n-1), same evaluation strategy.
  double integral_dd_power(double r, int n) const;

  std::string describe() const;

private:
  WarpFunction(WarpFamily family, double a, double b);
  Jet eval_unchecked(double r) const;
  void validate_positive() const;

  WarpFamily family_;
  double a_, b_;
  double alpha_ = 0.0, beta_ = 0.0; // lincomb
  double offset_ = 0.0;             // affine r + c
  std::vector<double> coeffs_;      // polynomial
};

} // namespace warpflow

#endif
