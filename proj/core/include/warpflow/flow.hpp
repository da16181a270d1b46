#ifndef WARPFLOW_FLOW_HPP
#define WARPFLOW_FLOW_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "warpflow/audit.hpp"
#include "warpflow/errors.hpp"
#include "warpflow/geometry.hpp"
#include "warpflow/records.hpp"

namespace warpflow {

struct FlowConfig {
  FlowType type = FlowType::LcfH2H1;
  double cfl = 0.2;
  double t_max = 10.0;
  double tol_converged = 1e-8; // on osc u; ignored for imcf
  std::int64_t max_steps = 10'000'000;
  std::int64_t record_every = 1;

  void validate() const; // throws ConfigError
};

struct FlowState {
  double t = 0.0;
  std::int64_t step_index = 0;
  ScalarField u;
};

enum class RunVerdict { Converged, TMaxReached, Error };

std::string to_string(RunVerdict verdict);

struct RunResult {
  FlowState final_state;
  RunVerdict verdict = RunVerdict::Error;
  std::vector<StepRecord> records;
  // Populated when verdict == Error; partial records are preserved.
  FlowErrorKind error_kind = FlowErrorKind::Other;
  std::string error_message;
};

/// u == r0 everywhere at t = 0.
FlowState init_slice(const WarpedSpace& space, const BaseGrid& grid, double r0);

/// u = r0 + eps * P(y), P a fixed-seed band-limited trigonometric perturbation
/// (torus: modes <= 4 per coordinate; axisym: cos(k phi), k <= 4) normalized to
/// sup-norm 1 and mean zero.  Strict convexity (kappa_min > 0 with margin
/// 1e-6) is verified after construction; on failure eps halves up to 20 times.
struct RandomInit {
  FlowState state;
  double eps_used = 0.0;
  int halvings = 0;
};
RandomInit init_random(const WarpedSpace& space, const BaseGrid& grid, double r0, double eps,
                       std::uint64_t seed);

/// The perturbation profile P alone (unit sup-norm); exposed for tests.
std::vector<double> perturbation_profile(const BaseGrid& grid, std::uint64_t seed);

class FlowEngine {
public:
  FlowEngine(const WarpedSpace& space, const BaseGrid& grid, FlowConfig config);

  /// One classical RK4 step of du/dt = psi v; returns the dt taken.
  /// Throws FlowError wrapping the terminal cause.
  double step(FlowState& state);

  /// Runs until osc u <= tol (non-imcf), t >= t_max, or max_steps; emits a
  /// record at step 0, every record_every steps, and at the final step.
  /// `sink`, when set, observes records as they are produced (CSV streaming);
  /// `step_hook` observes the state after every step (checkpointing).
  /// Resumed states (step_index > 0) skip the initial record so the stream
  /// continues exactly where an uninterrupted run would.
  RunResult run(FlowState initial, const std::function<void(const StepRecord&)>& sink = {},
                const std::function<void(const FlowState&)>& step_hook = {});

  /// Record row for the current state (recomputes geometry).
  StepRecord record_for(const FlowState& state, double dt_hint);

  const WarpedSpace& space() const { return *space_; }
  const BaseGrid& grid() const { return *grid_; }
  const FlowConfig& config() const { return config_; }

  double osc_u(const FlowState& state) const;

private:
  double compute_dt(const FlowState& state); // uses last reductions of stage 1
  const WarpedSpace* space_;
  const BaseGrid* grid_;
  FlowConfig config_;
  GeometryComputer geom_;
  std::vector<double> k_accum_, u_stage_, u_new_;
};

/// Checkpoint: one comment header with step index and a space/config digest,
/// then the basegrid field dump of u.
void write_checkpoint(std::ostream& os, const FlowState& state, const BaseGrid& grid,
                      std::uint64_t digest);
FlowState read_checkpoint(std::istream& is, const BaseGrid& grid, std::uint64_t expected_digest);

/// Digest of the space + flow configuration for checkpoint compatibility.
std::uint64_t config_digest(const WarpedSpace& space, const FlowConfig& config);

} // namespace warpflow

#endif
