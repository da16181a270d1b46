#ifndef WARPFLOW_MATH_UTIL_HPP
#define WARPFLOW_MATH_UTIL_HPP

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>

namespace warpflow {

// Polynomial exp with Cody-Waite argument reduction.  Plain arithmetic
// (no libm call), so loops over nodes auto-vectorize; accuracy ~2 ulp on
// |x| <= 700.  Keeps every code path bit-deterministic across runs.
inline double fast_exp(double x) {
  constexpr double inv_ln2 = 1.4426950408889634074;
  constexpr double ln2_hi = 6.93147180369123816490e-01;
  constexpr double ln2_lo = 1.90821492927058770002e-10;
  const double kd = std::floor(x * inv_ln2 + 0.5);
  const double r = (x - kd * ln2_hi) - kd * ln2_lo;
  // Taylor to degree 13 on |r| <= ln2/2; remainder < 1e-17 relative.
  double p = 1.0 / 6227020800.0; // 1/13!
  p = p * r + 1.0 / 479001600.0;
  p = p * r + 1.0 / 39916800.0;
  p = p * r + 1.0 / 3628800.0;
  p = p * r + 1.0 / 362880.0;
  p = p * r + 1.0 / 40320.0;
  p = p * r + 1.0 / 5040.0;
  p = p * r + 1.0 / 720.0;
  p = p * r + 1.0 / 120.0;
  p = p * r + 1.0 / 24.0;
  p = p * r + 1.0 / 6.0;
  p = p * r + 0.5;
  p = p * r + 1.0;
  p = p * r + 1.0;
  const auto k = static_cast<std::int64_t>(kd);
  const double scale = std::bit_cast<double>(static_cast<std::uint64_t>(k + 1023) << 52);
  return p * scale;
}

inline void fast_sinh_cosh(double x, double& sh, double& ch) {
  const double e = fast_exp(x);
  const double ei = 1.0 / e;
  sh = 0.5 * (e - ei);
  ch = 0.5 * (e + ei);
}

/// SplitMix64: the documented seed -> coefficient stream for all randomness.
/// state' = state + 0x9E3779B97F4A7C15; output mixes with shifts/multiplies.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [-1, 1).
  double next_symmetric() {
    return static_cast<double>(next_u64() >> 11) * (2.0 / 9007199254740992.0) - 1.0;
  }
  /// Uniform in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
  }

private:
  std::uint64_t state_;
};

/// Compensated (Kahan) accumulator for audit-grade integrals.
class KahanSum {
public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

private:
  double s_ = 0.0, c_ = 0.0;
};

namespace detail {
// 15-point Gauss-Legendre nodes/weights on [-1,1], computed once by Newton
// iteration on P_15 so no literal table needs to be maintained.
struct GaussLegendre15 {
  std::array<double, 15> x{}, w{};
  GaussLegendre15() {
    constexpr int n = 15;
    for (int i = 0; i < n; ++i) {
      double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      x[static_cast<std::size_t>(i)] = t;
      w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};
inline const GaussLegendre15& gl15() {
  static const GaussLegendre15 table;
  return table;
}
} // namespace detail

template <class F>
double gauss_legendre_15(F&& f, double lo, double hi) {
  const auto& t = detail::gl15();
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int i = 0; i < 15; ++i) acc += t.w[static_cast<std::size_t>(i)] * f(mid + half * t.x[static_cast<std::size_t>(i)]);
  return acc * half;
}

/// Adaptive Gauss-Legendre to ~1e-12 relative (panel vs split-panel test).
template <class F>
double adaptive_gauss_legendre(F&& f, double lo, double hi, double rel_tol = 1e-13,
                               int max_depth = 48) {
  struct Rec {
    const F& f;
    double rel_tol;
    double integrate(double a, double b, double whole, double scale, int depth) const {
      const double m = 0.5 * (a + b);
      const double left = gauss_legendre_15(f, a, m);
      const double right = gauss_legendre_15(f, m, b);
      const double split = left + right;
      if (depth <= 0 || std::abs(split - whole) <= rel_tol * (std::abs(split) + scale))
        return split;
      return integrate(a, m, left, scale, depth - 1) + integrate(m, b, right, scale, depth - 1);
    }
  };
  if (lo == hi) return 0.0;
  const double whole = gauss_legendre_15(f, lo, hi);
  const Rec rec{f, rel_tol};
  return rec.integrate(lo, hi, whole, 1e-300 + std::abs(whole) * 1e-16, max_depth);
}

/// Eigenvalues of the symmetric pencil (h, g) with g positive definite:
/// roots of det(h - k g) = 0, returned ascending.  Works on m = g^{-1} h and
/// evaluates the discriminant in the cancellation-free similarity form
/// (m11 - m22)^2 + 4 m12 m21, so near-umbilic states keep full precision;
/// roundoff negatives are clamped at 1e-14 of the natural scale and the
/// smaller root comes from Vieta's product, LAPACK dlae2 style.
inline std::pair<double, double> pencil_eigenvalues_2x2(double g11, double g12, double g22,
                                                        double h11, double h12, double h22) {
  const double det_g = g11 * g22 - g12 * g12;
  const double gi11 = g22 / det_g, gi12 = -g12 / det_g, gi22 = g11 / det_g;
  const double m11 = gi11 * h11 + gi12 * h12;
  const double m12 = gi11 * h12 + gi12 * h22;
  const double m21 = gi12 * h11 + gi22 * h12;
  const double m22 = gi12 * h12 + gi22 * h22;
  const double trace = m11 + m22;
  const double det = m11 * m22 - m12 * m21;
  const double diff = m11 - m22;
  double disc = diff * diff + 4.0 * m12 * m21;
  const double scale2 = trace * trace + 4.0 * std::abs(det);
  if (disc < 0.0 && disc >= -1e-14 * scale2) disc = 0.0;
  const double root = std::sqrt(disc); // NaN propagates if disc is genuinely negative
  double lo, hi;
  if (trace >= 0.0) {
    hi = 0.5 * (trace + root);
    lo = (hi != 0.0) ? det / hi : 0.5 * (trace - root);
  } else {
    lo = 0.5 * (trace - root);
    hi = (lo != 0.0) ? det / lo : 0.5 * (trace + root);
  }
  return {lo, hi};
}

/// FNV-1a 64-bit, used for config digests in checkpoints.
inline std::uint64_t fnv1a64(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

} // namespace warpflow

#endif
