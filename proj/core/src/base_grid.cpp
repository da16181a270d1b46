#include "warpflow/base_grid.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "warpflow/errors.hpp"
#include "warpflow/math_util.hpp"

namespace warpflow {

std::string chart_name(Chart chart) {
  return chart == Chart::Torus2D ? "torus2d" : "axisym-sphere";
}

Chart chart_from_name(const std::string& name) {
  if (name == "torus2d") return Chart::Torus2D;
  if (name == "axisym-sphere") return Chart::AxisymSphere;
  throw ConfigError("space.base", "unknown chart '" + name + "'");
}

void ChartPartials::resize(std::size_t n) {
  d1.assign(n, 0.0);
  d2.assign(n, 0.0);
  d11.assign(n, 0.0);
  d12.assign(n, 0.0);
  d22.assign(n, 0.0);
}

BaseGrid BaseGrid::make(Chart chart, int resolution) {
  if (resolution < 8)
    throw ConfigError("space.resolution", "requires resolution >= 8, got " +
                                              std::to_string(resolution));
  BaseGrid g;
  g.chart_ = chart;
  g.resolution_ = resolution;
  if (chart == Chart::Torus2D) {
    g.h_ = 2.0 * M_PI / resolution;
    const std::size_t n = static_cast<std::size_t>(resolution) * resolution;
    g.weights_.assign(n, g.h_ * g.h_);
  } else {
    const int m = resolution;
    g.h_ = M_PI / m;
    g.phi_.resize(static_cast<std::size_t>(m));
    g.weights_.resize(static_cast<std::size_t>(m));
    const double cell = 2.0 * std::sin(0.5 * g.h_); // exact cell integral factor
    for (int j = 0; j < m; ++j) {
      const double phi = (j + 0.5) * g.h_;
      g.phi_[static_cast<std::size_t>(j)] = phi;
      g.weights_[static_cast<std::size_t>(j)] = 2.0 * M_PI * std::sin(phi) * cell;
    }
  }
  KahanSum total;
  for (double w : g.weights_) total.add(w);
  g.weight_sum_ = total.value();
  return g;
}

void BaseGrid::partials(std::span<const double> f, ChartPartials& out) const {
  if (f.size() != node_count()) throw Error("field size does not match grid");
  if (chart_ == Chart::Torus2D)
    partials_torus(f, out);
  else
    partials_axisym(f, out);
}

void BaseGrid::partials_torus(std::span<const double> f, ChartPartials& out) const {
  const int n = resolution_;
  const std::size_t total = node_count();
  if (out.d1.size() != total) out.resize(total);
  const double c1 = 1.0 / (12.0 * h_);
  const double c2 = 1.0 / (12.0 * h_ * h_);
  const double* F = f.data();

  // Stencils are grouped as symmetric differences so constants annihilate
  // exactly (no residual from contraction or rounding):
  //   D1 f = (8 (f+1 - f-1) - (f+2 - f-2)) / (12 h)
  //   D2 f = (16 ((f+1 - f0) + (f-1 - f0)) - ((f+2 - f0) + (f-2 - f0))) / (12 h^2)

  // Direction 1 (rows, stride n): shifted-row loads stay contiguous in j.
  for (int i = 0; i < n; ++i) {
    const double* rm2 = F + static_cast<std::size_t>((i - 2 + n) % n) * n;
    const double* rm1 = F + static_cast<std::size_t>((i - 1 + n) % n) * n;
    const double* r0 = F + static_cast<std::size_t>(i) * n;
    const double* rp1 = F + static_cast<std::size_t>((i + 1) % n) * n;
    const double* rp2 = F + static_cast<std::size_t>((i + 2) % n) * n;
    double* d1 = out.d1.data() + static_cast<std::size_t>(i) * n;
    double* d11 = out.d11.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      d1[j] = (8.0 * (rp1[j] - rm1[j]) - (rp2[j] - rm2[j])) * c1;
      d11[j] = (16.0 * ((rp1[j] - r0[j]) + (rm1[j] - r0[j])) -
                ((rp2[j] - r0[j]) + (rm2[j] - r0[j]))) *
               c2;
    }
  }

  // Direction 2 (columns, stride 1) for f, then the mixed derivative as the
  // second-direction first derivative of d1 (consistent O(h^4)).
  auto column_pass = [&](const double* src, double* dst1, double* dst2) {
    for (int i = 0; i < n; ++i) {
      const double* row = src + static_cast<std::size_t>(i) * n;
      double* o1 = dst1 ? dst1 + static_cast<std::size_t>(i) * n : nullptr;
      double* o2 = dst2 ? dst2 + static_cast<std::size_t>(i) * n : nullptr;
      auto apply = [&](int j, int jm2, int jm1, int jp1, int jp2) {
        if (o1)
          o1[j] = (8.0 * (row[jp1] - row[jm1]) - (row[jp2] - row[jm2])) * c1;
        if (o2)
          o2[j] = (16.0 * ((row[jp1] - row[j]) + (row[jm1] - row[j])) -
                   ((row[jp2] - row[j]) + (row[jm2] - row[j]))) *
                  c2;
      };
      apply(0, n - 2, n - 1, 1, 2);
      apply(1, n - 1, 0, 2, 3);
      for (int j = 2; j < n - 2; ++j) apply(j, j - 2, j - 1, j + 1, j + 2);
      apply(n - 2, n - 4, n - 3, n - 1, 0);
      apply(n - 1, n - 3, n - 2, 0, 1);
    }
  };
  column_pass(F, out.d2.data(), out.d22.data());
  column_pass(out.d1.data(), out.d12.data(), nullptr);
}

void BaseGrid::partials_axisym(std::span<const double> f, ChartPartials& out) const {
  const int m = resolution_;
  const std::size_t total = node_count();
  if (out.d1.size() != total) out.resize(total);
  std::fill(out.d2.begin(), out.d2.end(), 0.0);
  std::fill(out.d12.begin(), out.d12.end(), 0.0);
  std::fill(out.d22.begin(), out.d22.end(), 0.0);
  const double c1 = 1.0 / (12.0 * h_);
  const double c2 = 1.0 / (12.0 * h_ * h_);
  // Even reflection across both poles: ghost(-1-k) = f(k), ghost(m+k) = f(m-1-k).
  auto at = [&](int k) -> double {
    if (k < 0) k = -1 - k;
    if (k >= m) k = 2 * m - 1 - k;
    return f[static_cast<std::size_t>(k)];
  };
  for (int j = 0; j < m; ++j) {
    const double fm2 = at(j - 2), fm1 = at(j - 1), f0 = f[static_cast<std::size_t>(j)],
                 fp1 = at(j + 1), fp2 = at(j + 2);
    out.d1[static_cast<std::size_t>(j)] = (8.0 * (fp1 - fm1) - (fp2 - fm2)) * c1;
    out.d11[static_cast<std::size_t>(j)] =
        (16.0 * ((fp1 - f0) + (fm1 - f0)) - ((fp2 - f0) + (fm2 - f0))) * c2;
  }
}

double BaseGrid::integrate(std::span<const double> f) const {
  if (f.size() != node_count()) throw Error("field size does not match grid");
  KahanSum acc;
  for (std::size_t i = 0; i < f.size(); ++i) acc.add(f[i] * weights_[i]);
  return acc.value();
}

double BaseGrid::integrate(std::span<const double> f, std::span<const double> density) const {
  if (f.size() != node_count() || density.size() != node_count())
    throw Error("field size does not match grid");
  KahanSum acc;
  for (std::size_t i = 0; i < f.size(); ++i) acc.add(f[i] * density[i] * weights_[i]);
  return acc.value();
}

void BaseGrid::dump_field(std::ostream& os, std::span<const double> f, double time) const {
  if (f.size() != node_count()) throw Error("field size does not match grid");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", time);
  os << chart_name(chart_) << ' ' << resolution_ << ' ' << buf << '\n';
  for (double x : f) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf << '\n';
  }
  if (!os) throw IoError("field dump stream failure");
}

BaseGrid::FieldDump BaseGrid::read_field(std::istream& is) {
  std::string chart;
  int resolution = 0;
  double time = 0.0;
  if (!(is >> chart >> resolution >> time)) throw IoError("malformed field dump header");
  FieldDump dump;
  dump.chart = chart_from_name(chart);
  dump.resolution = resolution;
  dump.time = time;
  const std::size_t count = dump.chart == Chart::Torus2D
                                ? static_cast<std::size_t>(resolution) * resolution
                                : static_cast<std::size_t>(resolution);
  dump.values.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    if (!(is >> dump.values[i])) throw IoError("field dump truncated at node " + std::to_string(i));
  return dump;
}

} // namespace warpflow
