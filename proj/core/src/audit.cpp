#include "warpflow/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "warpflow/errors.hpp"
#include "warpflow/math_util.hpp"

namespace warpflow {

Functionals functionals(const ScalarField& u, const WarpedSpace& space,
                        const GeometryFields& geom) {
  const BaseGrid& grid = *u.grid;
  const auto& w = grid.weights();
  KahanSum area, int_h1, vol, bulk;
  for (std::size_t i = 0; i < geom.size; ++i) {
    const double dmu = geom.area_density[i] * w[i];
    area.add(dmu);
    int_h1.add(geom.H1[i] * dmu);
    vol.add(space.warp.integral_power(u.values[i], space.n) * w[i]);
    bulk.add(space.warp.integral_dd_power(u.values[i], space.n) * w[i]);
  }
  Functionals f;
  f.area = area.value();
  f.int_H1 = int_h1.value();
  f.volume = vol.value();
  f.bulk_ricci = -bulk.value();
  f.W2 = f.int_H1 + f.bulk_ricci;
  f.genmink_W2 = f.int_H1 - f.volume;
  return f;
}

double minkowski_residual_1(const ScalarField& u, const WarpedSpace& space,
                            const GeometryFields& geom) {
  (void)space;
  const auto& w = u.grid->weights();
  KahanSum acc;
  for (std::size_t i = 0; i < geom.size; ++i) {
    const double dmu = geom.area_density[i] * w[i];
    acc.add((geom.s[i] * geom.H1[i] - geom.theta1[i]) * dmu);
  }
  return acc.value();
}

double minkowski_residual_2(const ScalarField& u, const WarpedSpace& space,
                            const GeometryFields& geom) {
  const auto& w = u.grid->weights();
  const double n = space.n;
  KahanSum acc;
  for (std::size_t i = 0; i < geom.size; ++i) {
    const double dmu = geom.area_density[i] * w[i];
    const double grad = geom.grad_u_sq[i];
    const double v = geom.v[i];
    const double theta = geom.theta[i];
    // nu = V + (s/theta) dr with radial part 1/v; grad Theta has radial part
    // theta |grad u|^2 and base part theta u^{;i}; sigma(V, grad Theta base)
    // contracts to -|grad u|^2 / (v theta).
    const double radial_pair = (1.0 / v) * theta * grad;
    const double sigma_pair = -grad / (v * theta);
    const double ricci = ambient_ricci_block(space, u.values[i], radial_pair, sigma_pair);
    acc.add((geom.s[i] * geom.H2[i] - geom.theta1[i] * geom.H1[i] +
             ricci / (n * (n - 1.0))) *
            dmu);
  }
  return acc.value();
}

double heintze_karcher_gap(const ScalarField& u, const WarpedSpace& space,
                           const GeometryFields& geom) {
  (void)space;
  const auto& w = u.grid->weights();
  KahanSum acc;
  for (std::size_t i = 0; i < geom.size; ++i) {
    if (!(geom.H1[i] > 0.0)) throw MeanConvexityLossError(i, geom.H1[i]);
    const double dmu = geom.area_density[i] * w[i];
    acc.add((geom.theta1[i] / geom.H1[i] - geom.s[i]) * dmu);
  }
  return acc.value();
}

InequalityGaps inequality_gaps(const ScalarField& u, const WarpedSpace& space,
                               const GeometryFields& geom) {
  const Functionals f = functionals(u, space, geom);
  InequalityGaps g;
  g.mink_gap = f.W2 - phi_of_area(space, f.area, ComparisonFunctional::W2);
  g.psi_gap = f.W2 - psi_of_volume(space, f.volume, ComparisonFunctional::W2);
  double alpha = 0.0, beta = 0.0;
  g.genmink_applicable = space.warp.sinh_cosh_coefficients(alpha, beta);
  g.genmink_gap =
      f.genmink_W2 - phi_of_area(space, f.area, ComparisonFunctional::GenMink);
  const double r_star = slice_radius_of_area(space, f.area);
  g.isoperimetric_gap = f.volume - space.base_area * space.warp.integral_power(r_star, space.n);
  return g;
}

StepRecord make_record(double t, double dt, const ScalarField& u, const WarpedSpace& space,
                       const GeometryFields& geom) {
  StepRecord r;
  r.t = t;
  r.dt = dt;
  const Functionals f = functionals(u, space, geom);
  r.area = f.area;
  r.volume = f.volume;
  r.w2 = f.W2;
  double umin = u.values[0], umax = u.values[0];
  for (double x : u.values) {
    umin = std::min(umin, x);
    umax = std::max(umax, x);
  }
  r.min_u = umin;
  r.max_u = umax;
  r.osc_u = umax - umin;
  // Theta is increasing (theta > 0), so its oscillation is the spread of the
  // primitive over the u-range.
  r.osc_theta = space.warp.primitive(umax) - space.warp.primitive(umin);
  double kmin = geom.kappa1[0], kmax = geom.kappa2[0], smax = 0.0;
  for (std::size_t i = 0; i < geom.size; ++i) {
    kmin = std::min(kmin, geom.kappa1[i]);
    kmax = std::max(kmax, geom.kappa2[i]);
    smax = std::max(smax, std::abs(geom.speed[i]));
  }
  r.kappa_min = kmin;
  r.kappa_max = kmax;
  r.speed_max = smax;
  r.umbilicity = umbilicity(geom);
  r.mink1_residual = minkowski_residual_1(u, space, geom);
  r.mink2_residual = minkowski_residual_2(u, space, geom);
  return r;
}

bool known_substatic(const WarpedSpace& space) {
  double alpha = 0.0, beta = 0.0;
  if (!space.warp.sinh_cosh_coefficients(alpha, beta)) return false;
  return space.base == BaseKind::UnitSphere && alpha == 1.0 && beta == 0.0;
}

namespace {

double rel(double x, double scale) { return x / std::max(std::abs(scale), 1e-300); }

// Records are emitted every record_every steps; per-step tolerances scale by
// the number of steps inside each record gap, estimated from the columns.
double steps_between(const StepRecord& a, const StepRecord& b) {
  if (!(b.dt > 0.0)) return 1.0;
  return std::max(1.0, std::round((b.t - a.t) / b.dt));
}

MonotoneVerdict check_pairs(std::string quantity, std::string direction,
                            std::span<const StepRecord> rec, double per_step_tol,
                            double (*deficit)(const StepRecord&, const StepRecord&)) {
  MonotoneVerdict v;
  v.quantity = std::move(quantity);
  v.direction = std::move(direction);
  v.checked = true;
  v.worst_violation = 0.0;
  v.worst_index = -1;
  v.pass = true;
  for (std::size_t k = 0; k + 1 < rec.size(); ++k) {
    const double d = deficit(rec[k], rec[k + 1]);
    if (d > per_step_tol * steps_between(rec[k], rec[k + 1])) v.pass = false;
    if (d > v.worst_violation) {
      v.worst_violation = d;
      v.worst_index = static_cast<std::int64_t>(k + 1);
    }
  }
  return v;
}

void append_kv(std::string& out, const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  out += key;
  out += " = ";
  out += buf;
  out += "\n";
}

void append_kv(std::string& out, const std::string& key, const std::string& value) {
  out += key;
  out += " = ";
  out += value;
  out += "\n";
}

} // namespace

AuditReport audit_trajectory(std::span<const StepRecord> records, FlowType flow_type,
                             const WarpedSpace& space, const AuditOptions& opt) {
  if (records.size() < 2) throw Error("audit requires at least 2 records");
  AuditReport rep;
  rep.flow_type = flow_type;
  rep.record_count = records.size();
  rep.hk_hypothesis_assumed = !known_substatic(space);

  const StepRecord& first = records.front();
  const StepRecord& last = records.back();

  // Finite columns everywhere.
  {
    MonotoneVerdict v;
    v.quantity = "columns";
    v.direction = "finite";
    v.checked = true;
    v.pass = true;
    for (std::size_t k = 0; k < records.size(); ++k)
      for (double c : records[k].columns())
        if (!std::isfinite(c)) {
          v.pass = false;
          v.worst_index = static_cast<std::int64_t>(k);
        }
    rep.verdicts.push_back(v);
  }

  if (flow_type == FlowType::LcfH2H1) {
    const double tol = opt.per_step_rel_tol;
    rep.verdicts.push_back(check_pairs(
        "area", "nondecreasing", records, tol,
        [](const StepRecord& a, const StepRecord& b) { return rel(a.area - b.area, a.area); }));
    rep.verdicts.push_back(check_pairs(
        "w2", "nonincreasing", records, tol,
        [](const StepRecord& a, const StepRecord& b) { return rel(b.w2 - a.w2, a.w2); }));

    const AssumptionReport assume = check_assumptions(space);
    if (assume.theta_dd_nonneg) {
      auto v = check_pairs("volume", "nondecreasing", records, tol,
                           [](const StepRecord& a, const StepRecord& b) {
                             return rel(a.volume - b.volume, a.volume);
                           });
      v.assumed_hypothesis = rep.hk_hypothesis_assumed;
      rep.verdicts.push_back(v);
    }

    // Strict oscillation decay above the convergence floor.
    {
      MonotoneVerdict v;
      v.quantity = "osc_theta";
      v.direction = "strictly-decreasing";
      v.checked = true;
      v.pass = true;
      for (std::size_t k = 0; k + 1 < records.size(); ++k) {
        if (records[k].osc_theta <= opt.osc_floor) continue;
        const double d = rel(records[k + 1].osc_theta - records[k].osc_theta,
                             records[k].osc_theta);
        if (d > opt.per_step_rel_tol * steps_between(records[k], records[k + 1]))
          v.pass = false;
        if (d > v.worst_violation) {
          v.worst_violation = d;
          v.worst_index = static_cast<std::int64_t>(k + 1);
        }
      }
      rep.verdicts.push_back(v);
    }

    rep.verdicts.push_back(check_pairs("min_u", "nondecreasing", records, opt.barrier_abs_tol,
                                       [](const StepRecord& a, const StepRecord& b) {
                                         return a.min_u - b.min_u;
                                       }));
    rep.verdicts.push_back(check_pairs("max_u", "nonincreasing", records, opt.barrier_abs_tol,
                                       [](const StepRecord& a, const StepRecord& b) {
                                         return b.max_u - a.max_u;
                                       }));

    // Speed bound relative to the initial record.
    {
      MonotoneVerdict v;
      v.quantity = "speed_max";
      v.direction = "bounded-by-initial";
      v.checked = true;
      const double bound = opt.speed_bound_factor * first.speed_max + opt.barrier_abs_tol;
      for (std::size_t k = 0; k < records.size(); ++k) {
        const double d = records[k].speed_max - bound;
        if (d > v.worst_violation) {
          v.worst_violation = d;
          v.worst_index = static_cast<std::int64_t>(k);
        }
      }
      v.pass = v.worst_violation <= 0.0;
      rep.verdicts.push_back(v);
    }

    // Convexity guard: kappa stays in a compact subset of the positive cone.
    {
      MonotoneVerdict v;
      v.quantity = "kappa_min";
      v.direction = "compactly-positive";
      v.checked = true;
      const double r_inf = 0.5 * (last.min_u + last.max_u);
      const WarpFunction::Jet j = space.warp.eval(r_inf);
      const double guard =
          opt.convexity_guard_factor * std::min(first.kappa_min, j.d1 / j.value);
      for (std::size_t k = 0; k < records.size(); ++k) {
        const double d = guard - records[k].kappa_min;
        if (d > v.worst_violation) {
          v.worst_violation = d;
          v.worst_index = static_cast<std::int64_t>(k);
        }
      }
      v.pass = v.worst_violation <= 0.0;
      rep.verdicts.push_back(v);
    }
  } else if (flow_type == FlowType::Gl) {
    MonotoneVerdict v;
    v.quantity = "volume";
    v.direction = "conserved";
    v.checked = true;
    for (std::size_t k = 0; k < records.size(); ++k) {
      const double drift = std::abs(records[k].volume - first.volume) /
                           std::max(std::abs(first.volume), 1e-300);
      if (drift > v.worst_violation) {
        v.worst_violation = drift;
        v.worst_index = static_cast<std::int64_t>(k);
      }
    }
    v.pass = v.worst_violation <= opt.gl_drift_tol;
    rep.verdicts.push_back(v);
  } else { // imcf
    {
      MonotoneVerdict v;
      v.quantity = "log_area_rate";
      v.direction = "equals-one";
      v.checked = true;
      for (std::size_t k = 0; k + 1 < records.size(); ++k) {
        const double dt = records[k + 1].t - records[k].t;
        if (!(dt > 0.0)) continue;
        const double rate = (std::log(records[k + 1].area) - std::log(records[k].area)) / dt;
        const double d = std::abs(rate - 1.0);
        if (d > v.worst_violation) {
          v.worst_violation = d;
          v.worst_index = static_cast<std::int64_t>(k + 1);
        }
      }
      v.pass = v.worst_violation <= opt.imcf_log_area_tol;
      rep.verdicts.push_back(v);
    }
    {
      // e^{-(n-1)t/n} (W2 - phi(|M|)) nonincreasing, with the slice comparison
      // taken in the int H1 - |M-hat| normalization.
      MonotoneVerdict v;
      v.quantity = "decaying_mink_gap";
      v.direction = "nonincreasing";
      v.checked = true;
      const double expo = (space.n - 1.0) / space.n;
      std::vector<double> q(records.size());
      for (std::size_t k = 0; k < records.size(); ++k) {
        const double phi =
            phi_of_area(space, records[k].area, ComparisonFunctional::GenMink);
        q[k] = std::exp(-expo * records[k].t) * (records[k].w2 - phi);
      }
      v.pass = true;
      for (std::size_t k = 0; k + 1 < records.size(); ++k) {
        const double d = q[k + 1] - q[k];
        if (d > opt.imcf_q_slack * steps_between(records[k], records[k + 1])) v.pass = false;
        if (d > v.worst_violation) {
          v.worst_violation = d;
          v.worst_index = static_cast<std::int64_t>(k + 1);
        }
      }
      rep.verdicts.push_back(v);
    }
  }

  rep.all_pass = true;
  for (const auto& v : rep.verdicts) rep.all_pass = rep.all_pass && v.pass;

  rep.final_mink_gap = last.w2 - phi_of_area(space, last.area, ComparisonFunctional::W2);
  rep.final_psi_gap = last.w2 - psi_of_volume(space, last.volume, ComparisonFunctional::W2);
  if (space.warp.second_derivative_equals_value())
    rep.final_genmink_gap =
        last.w2 - phi_of_area(space, last.area, ComparisonFunctional::GenMink);
  const double r_star = slice_radius_of_area(space, last.area);
  rep.final_isoperimetric_gap =
      last.volume - space.base_area * space.warp.integral_power(r_star, space.n);
  rep.umbilicity_first = first.umbilicity;
  rep.umbilicity_last = last.umbilicity;
  for (const auto& r : records) {
    rep.worst_mink1_residual = std::max(rep.worst_mink1_residual, std::abs(r.mink1_residual));
    rep.worst_mink2_residual = std::max(rep.worst_mink2_residual, std::abs(r.mink2_residual));
  }
  return rep;
}

std::string AuditReport::to_key_values() const {
  std::string out;
  const char* type = flow_type == FlowType::LcfH2H1  ? "lcf-h2h1"
                     : flow_type == FlowType::Imcf   ? "imcf"
                                                     : "gl";
  append_kv(out, "trajectory.flow_type", std::string(type));
  append_kv(out, "trajectory.records", static_cast<double>(record_count));
  append_kv(out, "trajectory.all_pass", std::string(all_pass ? "pass" : "fail"));
  for (const auto& v : verdicts) {
    const std::string base = "trajectory.verdict." + v.quantity;
    append_kv(out, base + ".direction", v.direction);
    append_kv(out, base + ".pass", std::string(v.pass ? "pass" : "fail"));
    append_kv(out, base + ".worst_violation", v.worst_violation);
    append_kv(out, base + ".worst_index", static_cast<double>(v.worst_index));
    if (v.assumed_hypothesis)
      append_kv(out, base + ".note", std::string("Heintze-Karcher hypothesis assumed"));
  }
  append_kv(out, "trajectory.final.mink_gap", final_mink_gap);
  append_kv(out, "trajectory.final.psi_gap", final_psi_gap);
  if (final_genmink_gap)
    append_kv(out, "trajectory.final.genmink_gap", *final_genmink_gap);
  append_kv(out, "trajectory.final.isoperimetric_gap", final_isoperimetric_gap);
  append_kv(out, "trajectory.umbilicity.first", umbilicity_first);
  append_kv(out, "trajectory.umbilicity.last", umbilicity_last);
  append_kv(out, "trajectory.residual.mink1_worst", worst_mink1_residual);
  append_kv(out, "trajectory.residual.mink2_worst", worst_mink2_residual);
  append_kv(out, "trajectory.hk_hypothesis",
            std::string(hk_hypothesis_assumed ? "assumed" : "known-substatic"));
  return out;
}

} // namespace warpflow
