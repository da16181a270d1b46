#ifndef WARPFLOW_AUDIT_HPP
#define WARPFLOW_AUDIT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "warpflow/geometry.hpp"
#include "warpflow/records.hpp"
#include "warpflow/slice_functionals.hpp"

namespace warpflow {

/// Global functionals of a graph state.
struct Functionals {
  double area = 0.0;       // |M|
  double volume = 0.0;     // |M-hat|
  double int_H1 = 0.0;     // int_M H1
  double bulk_ricci = 0.0; // (1/n) int_{M-hat} Rc(dr, dr)
  double W2 = 0.0;         // int_H1 + bulk_ricci
  double genmink_W2 = 0.0; // int_H1 - volume
};

Functionals functionals(const ScalarField& u, const WarpedSpace& space,
                        const GeometryFields& geom);

/// int_M s H1 - int_M theta' (vanishes pointwise on slices; a discretization
/// quality metric on general graphs).
double minkowski_residual_1(const ScalarField& u, const WarpedSpace& space,
                            const GeometryFields& geom);

/// int_M s H2 - int_M theta' H1 + (1/(n(n-1))) int_M Rc(nu, grad Theta),
/// with nu the outward normal and grad Theta the tangential gradient of the
/// primitive Theta, both evaluated through the ambient Ricci block form.
double minkowski_residual_2(const ScalarField& u, const WarpedSpace& space,
                            const GeometryFields& geom);

/// int_M theta'/H1 - int_M s (Heintze-Karcher gap; requires H1 > 0).
double heintze_karcher_gap(const ScalarField& u, const WarpedSpace& space,
                           const GeometryFields& geom);

struct InequalityGaps {
  double mink_gap = 0.0;           // W2 - phi(|M|)
  double psi_gap = 0.0;            // W2 - psi(|M-hat|)
  double genmink_gap = 0.0;        // (int H1 - |M-hat|) - phi_genmink(|M|)
  bool genmink_applicable = false; // family alpha sinh + beta cosh only
  double isoperimetric_gap = 0.0;  // |M-hat| - |S-hat_r| at equal areas
};

InequalityGaps inequality_gaps(const ScalarField& u, const WarpedSpace& space,
                               const GeometryFields& geom);

/// Assembles the full record row for a state (geometry must match u).
StepRecord make_record(double t, double dt, const ScalarField& u, const WarpedSpace& space,
                       const GeometryFields& geom);

/// Tolerances for trajectory verdicts; defaults follow the audit contracts.
/// Per-step slacks scale by the number of flow steps inside each record gap
/// (estimated from the t and dt columns), so sparse record streams are judged
/// at the same per-step strictness as dense ones.
struct AuditOptions {
  double per_step_rel_tol = 1e-8;  // monotonicity slack per flow step
  double barrier_abs_tol = 1e-10;  // barrier drift per flow step
  double osc_floor = 1e-7;         // 10 x tol_converged: strict-decrease floor
  double gl_drift_tol = 1e-7;      // relative volume drift bound
  double imcf_log_area_tol = 1e-6; // |d log area / dt - 1|
  double imcf_q_slack = 1e-7;      // per-step slack of the decaying gap
  double speed_bound_factor = 1.05;
  double convexity_guard_factor = 0.5;
};

struct MonotoneVerdict {
  std::string quantity;
  std::string direction; // "nondecreasing" / "nonincreasing" / ...
  bool checked = false;
  bool pass = false;
  bool assumed_hypothesis = false; // verdict relies on an assumed inequality
  double worst_violation = 0.0;    // most negative slack observed
  std::int64_t worst_index = -1;   // record index of the worst step
};

struct AuditReport {
  FlowType flow_type = FlowType::LcfH2H1;
  std::size_t record_count = 0;
  std::vector<MonotoneVerdict> verdicts;
  bool all_pass = false;

  // Gaps of the final record (record-stream derivable).
  double final_mink_gap = 0.0;
  double final_psi_gap = 0.0;
  std::optional<double> final_genmink_gap;
  double final_isoperimetric_gap = 0.0;
  double umbilicity_first = 0.0;
  double umbilicity_last = 0.0;
  double worst_mink1_residual = 0.0;
  double worst_mink2_residual = 0.0;
  bool hk_hypothesis_assumed = true; // false only for known substatic spaces

  /// Deterministic key-value rendering ("trajectory." prefix).
  std::string to_key_values() const;
};

/// Verdicts over a persisted record stream; pure function of the records,
/// the flow type, and the space.  Throws on fewer than 2 records.
AuditReport audit_trajectory(std::span<const StepRecord> records, FlowType flow_type,
                             const WarpedSpace& space, const AuditOptions& opt = {});

/// Known substatic ambient list for the Heintze-Karcher hypothesis label.
bool known_substatic(const WarpedSpace& space);

} // namespace warpflow

#endif
