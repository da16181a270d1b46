#ifndef WARPFLOW_ERRORS_HPP
#define WARPFLOW_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace warpflow {

/// Base class for all warpflow errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A radius fell outside the open radial domain (a, b) of the warp function.
class DomainError : public Error {
public:
  DomainError(double r, double a, double b)
      : Error("radius " + std::to_string(r) + " outside radial domain (" +
              std::to_string(a) + ", " + std::to_string(b) + ")"),
        radius(r) {}
  double radius;
};

/// Invalid configuration value; `field` is the dotted key path.
class ConfigError : public Error {
public:
  ConfigError(std::string field_path, const std::string& msg)
      : Error(field_path + ": " + msg), field(std::move(field_path)) {}
  std::string field;
};

/// A graph field left the radial domain; reports the worst node.
class RadialRangeError : public Error {
public:
  RadialRangeError(std::size_t node, double value, double a, double b)
      : Error("graph value " + std::to_string(value) + " at node " +
              std::to_string(node) + " outside radial domain (" +
              std::to_string(a) + ", " + std::to_string(b) + ")"),
        node(node), value(value) {}
  std::size_t node;
  double value;
};

/// Principal curvatures left the positive cone where the flow requires it.
class ConvexityLossError : public Error {
public:
  ConvexityLossError(std::size_t node, double k1, double k2)
      : Error("convexity lost at node " + std::to_string(node) +
              ": kappa = (" + std::to_string(k1) + ", " + std::to_string(k2) + ")"),
        node(node), kappa1(k1), kappa2(k2) {}
  std::size_t node;
  double kappa1, kappa2;
};

/// Mean curvature lost its sign where the flow requires H > 0.
class MeanConvexityLossError : public Error {
public:
  MeanConvexityLossError(std::size_t node, double h_mean)
      : Error("mean convexity lost at node " + std::to_string(node) +
              ": H1 = " + std::to_string(h_mean)),
        node(node), H1(h_mean) {}
  std::size_t node;
  double H1;
};

/// Induced metric not invertible at a node.
class SingularMetricError : public Error {
public:
  SingularMetricError(std::size_t node, double det_g)
      : Error("singular induced metric at node " + std::to_string(node) +
              ": det g = " + std::to_string(det_g)),
        node(node), det_g(det_g) {}
  std::size_t node;
  double det_g;
};

/// Non-finite value appeared during evaluation.
class NonFiniteError : public Error {
public:
  explicit NonFiniteError(const std::string& what_field)
      : Error("non-finite value in " + what_field) {}
};

/// Random initialization could not reach a strictly convex state.
class InitializationError : public Error {
public:
  using Error::Error;
};

/// Requested area/volume outside the attainable slice range.
class RangeError : public Error {
public:
  RangeError(const std::string& quantity, double requested, double lo, double hi)
      : Error(quantity + " " + std::to_string(requested) +
              " outside attainable slice range [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "]"),
        requested(requested), lo(lo), hi(hi) {}
  double requested, lo, hi;
};

enum class FlowErrorKind {
  ConvexityLoss,
  MeanConvexityLoss,
  RadialRange,
  SingularMetric,
  NonFinite,
  Other,
};

std::string to_string(FlowErrorKind kind);

/// Terminal flow error: wraps the cause and carries the step index.
class FlowError : public Error {
public:
  FlowError(std::int64_t step, FlowErrorKind kind, const std::string& cause)
      : Error("flow terminated at step " + std::to_string(step) + ": " + cause),
        step(step), kind(kind) {}
  std::int64_t step;
  FlowErrorKind kind;
};

/// File or stream failure.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace warpflow

#endif
