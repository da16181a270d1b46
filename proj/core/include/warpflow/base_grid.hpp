#ifndef WARPFLOW_BASE_GRID_HPP
#define WARPFLOW_BASE_GRID_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace warpflow {

enum class Chart { Torus2D, AxisymSphere };

std::string chart_name(Chart chart);
Chart chart_from_name(const std::string& name);

/// Chart partial derivatives of a scalar field (4th-order central stencils).
struct ChartPartials {
  std::vector<double> d1, d2, d11, d12, d22;
  void resize(std::size_t n);
};

/// Discretized base manifold S0 with differentiation stencils and sigma
/// quadrature weights.
///
/// torus2d: uniform N x N periodic grid on [0, 2pi)^2, node (i, j) at
///   (i h, j h), h = 2pi/N, row-major index i*N + j, weight h^2.
/// axisym-sphere: M cell-centered nodes phi_j = (j + 1/2) pi / M; fields are
///   functions of phi only and reflect evenly across both poles.  Weights are
///   the exact cell integrals of 2pi sin(phi), which telescope to 4pi.
class BaseGrid {
public:
  static BaseGrid make(Chart chart, int resolution);

  Chart chart() const { return chart_; }
  int resolution() const { return resolution_; }
  double spacing() const { return h_; }
  std::size_t node_count() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  double weight_sum() const { return weight_sum_; }

  /// Axisym chart node data (empty for the torus).
  const std::vector<double>& polar_angles() const { return phi_; }

  /// Fills all five chart partials.  Torus fields wrap periodically; axisym
  /// fields are even across the poles and have vanishing second-coordinate
  /// derivatives.
  void partials(std::span<const double> f, ChartPartials& out) const;

  /// Sum_nodes f * weight (compensated).
  double integrate(std::span<const double> f) const;
  /// Sum_nodes f * density * weight; surface integrals over the graph pass
  /// density = sqrt(det g / det sigma).
  double integrate(std::span<const double> f, std::span<const double> density) const;

  /// Field dump: header line "chart resolution time", one value per line in
  /// row-major order, 17 significant digits.
  void dump_field(std::ostream& os, std::span<const double> f, double time) const;

  struct FieldDump {
    Chart chart;
    int resolution;
    double time;
    std::vector<double> values;
  };
  static FieldDump read_field(std::istream& is);

private:
  BaseGrid() = default;
  void partials_torus(std::span<const double> f, ChartPartials& out) const;
  void partials_axisym(std::span<const double> f, ChartPartials& out) const;

  Chart chart_ = Chart::Torus2D;
  int resolution_ = 0;
  double h_ = 0.0;
  double weight_sum_ = 0.0;
  std::vector<double> weights_;
  std::vector<double> phi_;
};

/// Scalar field over a grid; one value per node.
struct ScalarField {
  const BaseGrid* grid = nullptr;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(const BaseGrid& g, double fill = 0.0)
      : grid(&g), values(g.node_count(), fill) {}
  std::size_t size() const { return values.size(); }
};

} // namespace warpflow

#endif
