#include "warpflow/warp_function.hpp"

#include <cmath>
#include <sstream>

#include "warpflow/errors.hpp"
#include "warpflow/math_util.hpp"

namespace warpflow {

std::string to_string(WarpFamily family) {
  switch (family) {
    case WarpFamily::Sinh: return "sinh";
    case WarpFamily::Cosh: return "cosh";
    case WarpFamily::LinearCombination: return "lincomb";
    case WarpFamily::Affine: return "affine";
    case WarpFamily::Polynomial: return "poly";
  }
  return "?";
}

WarpFunction::WarpFunction(WarpFamily family, double a, double b)
    : family_(family), a_(a), b_(b) {
  if (!(a < b)) throw ConfigError("space.a", "requires a < b");
  if (!std::isfinite(a) || !std::isfinite(b)) throw ConfigError("space.a", "non-finite domain");
}

WarpFunction WarpFunction::sinh_warp(double a, double b) {
  WarpFunction w(WarpFamily::Sinh, a, b);
  w.alpha_ = 1.0;
  w.validate_positive();
  return w;
}

WarpFunction WarpFunction::cosh_warp(double a, double b) {
  WarpFunction w(WarpFamily::Cosh, a, b);
  w.beta_ = 1.0;
  w.validate_positive();
  return w;
}

WarpFunction WarpFunction::linear_combination(double alpha, double beta, double a, double b) {
  WarpFunction w(WarpFamily::LinearCombination, a, b);
  w.alpha_ = alpha;
  w.beta_ = beta;
  w.validate_positive();
  return w;
}

WarpFunction WarpFunction::affine(double c, double a, double b) {
  WarpFunction w(WarpFamily::Affine, a, b);
  w.offset_ = c;
  w.validate_positive();
  return w;
}

WarpFunction WarpFunction::polynomial(std::vector<double> coeffs, double a, double b) {
  WarpFunction w(WarpFamily::Polynomial, a, b);
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) throw ConfigError("space.coeffs", "empty polynomial");
  w.coeffs_ = std::move(coeffs);
  w.validate_positive();
  return w;
}

void WarpFunction::validate_positive() const {
  // Sampled positivity check; supports user polynomials where a symbolic
  // argument is unavailable.
  constexpr int samples = 4096;
  for (int i = 0; i < samples; ++i) {
    const double r = a_ + (i + 0.5) * (b_ - a_) / samples;
    if (!(eval_unchecked(r).value > 0.0))
      throw ConfigError("space.warp", "theta(r) <= 0 at r = " + std::to_string(r));
  }
}

void WarpFunction::require_in_domain(double r) const {
  if (!in_domain(r)) throw DomainError(r, a_, b_);
}

bool WarpFunction::sinh_cosh_coefficients(double& alpha, double& beta) const {
  if (family_ == WarpFamily::Affine || family_ == WarpFamily::Polynomial) return false;
  alpha = alpha_;
  beta = beta_;
  return true;
}

WarpFunction::Jet WarpFunction::eval_unchecked(double r) const {
  switch (family_) {
    case WarpFamily::Sinh:
    case WarpFamily::Cosh:
    case WarpFamily::LinearCombination: {
      double sh, ch;
      fast_sinh_cosh(r, sh, ch);
      const double value = alpha_ * sh + beta_ * ch;
      const double d1 = alpha_ * ch + beta_ * sh;
      return {value, d1, value, d1};
    }
    case WarpFamily::Affine:
      return {r + offset_, 1.0, 0.0, 0.0};
    case WarpFamily::Polynomial: {
      // Horner for the value and first three derivatives.
      double p = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;
      for (std::size_t i = coeffs_.size(); i-- > 0;) {
        d3 = d3 * r + 3.0 * d2;
        d2 = d2 * r + 2.0 * d1;
        d1 = d1 * r + p;
        p = p * r + coeffs_[i];
      }
      return {p, d1, d2, d3};
    }
  }
  return {0, 0, 0, 0};
}

WarpFunction::Jet WarpFunction::eval(double r) const {
  require_in_domain(r);
  return eval_unchecked(r);
}

void WarpFunction::eval_many(const double* r, std::size_t n, double* theta,
                             double* theta1) const {
  switch (family_) {
    case WarpFamily::Sinh:
    case WarpFamily::Cosh:
    case WarpFamily::LinearCombination: {
      const double ca = 0.5 * (alpha_ + beta_);
      const double cb = 0.5 * (beta_ - alpha_);
      for (std::size_t i = 0; i < n; ++i) {
        const double e = fast_exp(r[i]);
        const double ei = 1.0 / e;
        theta[i] = ca * e + cb * ei;
        theta1[i] = ca * e - cb * ei;
      }
      return;
    }
    case WarpFamily::Affine:
      for (std::size_t i = 0; i < n; ++i) {
        theta[i] = r[i] + offset_;
        theta1[i] = 1.0;
      }
      return;
    case WarpFamily::Polynomial:
      for (std::size_t i = 0; i < n; ++i) {
        const Jet j = eval_unchecked(r[i]);
        theta[i] = j.value;
        theta1[i] = j.d1;
      }
      return;
  }
}

double WarpFunction::primitive(double r) const {
  require_in_domain(r);
  switch (family_) {
    case WarpFamily::Sinh:
    case WarpFamily::Cosh:
    case WarpFamily::LinearCombination: {
      double sh_r, ch_r, sh_a, ch_a;
      fast_sinh_cosh(r, sh_r, ch_r);
      fast_sinh_cosh(a_, sh_a, ch_a);
      return alpha_ * (ch_r - ch_a) + beta_ * (sh_r - sh_a);
    }
    case WarpFamily::Affine: {
      const double ra = r + offset_, aa = a_ + offset_;
      return 0.5 * (ra * ra - aa * aa);
    }
    case WarpFamily::Polynomial: {
      auto anti = [&](double x) {
        double acc = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;)
          acc = acc * x + coeffs_[i] / static_cast<double>(i + 1);
        return acc * x;
      };
      return anti(r) - anti(a_);
    }
  }
  return 0.0;
}

double WarpFunction::integral_power(double r, int n) const {
  require_in_domain(r);
  if (n == 2) {
    switch (family_) {
      case WarpFamily::Sinh:
      case WarpFamily::Cosh:
      case WarpFamily::LinearCombination: {
        // theta^2 = (a^2+b^2) sinh(2r)/4 + ab sinh^2(r) + (b^2-a^2) r/2 + C'
        auto anti = [&](double x) {
          double sh, ch;
          fast_sinh_cosh(x, sh, ch);
          const double sh2x = 2.0 * sh * ch;
          return (alpha_ * alpha_ + beta_ * beta_) * 0.25 * sh2x + alpha_ * beta_ * sh * sh +
                 (beta_ * beta_ - alpha_ * alpha_) * 0.5 * x;
        };
        return anti(r) - anti(a_);
      }
      case WarpFamily::Affine: {
        const double ra = r + offset_, aa = a_ + offset_;
        return (ra * ra * ra - aa * aa * aa) / 3.0;
      }
      case WarpFamily::Polynomial:
        break;
    }
  }
  return adaptive_gauss_legendre(
      [&](double x) { return std::pow(eval_unchecked(x).value, n); }, a_, r);
}

double WarpFunction::integral_dd_power(double r, int n) const {
  require_in_domain(r);
  if (second_derivative_equals_value()) return integral_power(r, n); // theta'' = theta
  if (family_ == WarpFamily::Affine) return 0.0;
  return adaptive_gauss_legendre(
      [&](double x) {
        const Jet j = eval_unchecked(x);
        return j.d2 * std::pow(j.value, n - 1);
      },
      a_, r);
}

std::string WarpFunction::describe() const {
  std::ostringstream os;
  os << to_string(family_);
  switch (family_) {
    case WarpFamily::LinearCombination:
      os << "(" << alpha_ << "," << beta_ << ")";
      break;
    case WarpFamily::Affine:
      os << "(c=" << offset_ << ")";
      break;
    case WarpFamily::Polynomial:
      os << "(";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
      os << ")";
      break;
    default:
      break;
  }
  os << " on (" << a_ << "," << b_ << ")";
  return os.str();
}

} // namespace warpflow
