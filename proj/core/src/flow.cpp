#include "warpflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "warpflow/errors.hpp"
#include "warpflow/math_util.hpp"

namespace warpflow {

std::string to_string(FlowErrorKind kind) {
  switch (kind) {
    case FlowErrorKind::ConvexityLoss: return "convexity-loss";
    case FlowErrorKind::MeanConvexityLoss: return "mean-convexity-loss";
    case FlowErrorKind::RadialRange: return "radial-range";
    case FlowErrorKind::SingularMetric: return "singular-metric";
    case FlowErrorKind::NonFinite: return "non-finite";
    case FlowErrorKind::Other: return "other";
  }
  return "other";
}

std::string to_string(RunVerdict verdict) {
  switch (verdict) {
    case RunVerdict::Converged: return "converged";
    case RunVerdict::TMaxReached: return "t_max_reached";
    case RunVerdict::Error: return "error";
  }
  return "error";
}

void FlowConfig::validate() const {
  if (!(cfl > 0.0) || cfl > 0.5) throw ConfigError("flow.cfl", "requires 0 < cfl <= 0.5");
  if (!(t_max > 0.0)) throw ConfigError("flow.t_max", "requires t_max > 0");
  if (!(tol_converged > 0.0))
    throw ConfigError("flow.tol_converged", "requires tol_converged > 0");
  if (max_steps <= 0) throw ConfigError("flow.max_steps", "requires max_steps > 0");
  if (record_every <= 0) throw ConfigError("flow.record_every", "requires record_every > 0");
}

FlowState init_slice(const WarpedSpace& space, const BaseGrid& grid, double r0) {
  space.warp.require_in_domain(r0);
  FlowState st;
  st.u = ScalarField(grid, r0);
  return st;
}

std::vector<double> perturbation_profile(const BaseGrid& grid, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> p(grid.node_count(), 0.0);
  if (grid.chart() == Chart::Torus2D) {
    // Half-lattice of modes |k1|, |k2| <= 4 (k1 > 0, or k1 == 0 and k2 > 0);
    // each mode draws a cosine and a sine amplitude, in this fixed order.
    const int n = grid.resolution();
    const double h = grid.spacing();
    struct Mode {
      int k1, k2;
      double a, b;
    };
    std::vector<Mode> modes;
    for (int k1 = 0; k1 <= 4; ++k1)
      for (int k2 = -4; k2 <= 4; ++k2) {
        if (k1 == 0 && k2 <= 0) continue;
        modes.push_back({k1, k2, rng.next_symmetric(), rng.next_symmetric()});
      }
    for (int i = 0; i < n; ++i) {
      const double y1 = i * h;
      for (int j = 0; j < n; ++j) {
        const double y2 = j * h;
        double acc = 0.0;
        for (const Mode& m : modes) {
          const double phase = m.k1 * y1 + m.k2 * y2;
          acc += m.a * std::cos(phase) + m.b * std::sin(phase);
        }
        p[static_cast<std::size_t>(i) * n + j] = acc;
      }
    }
  } else {
    // cos(k phi), k = 1..4; smooth across both poles by even symmetry.
    double c[4];
    for (auto& x : c) x = rng.next_symmetric();
    const auto& phi = grid.polar_angles();
    for (std::size_t j = 0; j < p.size(); ++j) {
      double acc = 0.0;
      for (int k = 1; k <= 4; ++k) acc += c[k - 1] * std::cos(k * phi[j]);
      p[j] = acc;
    }
  }
  double sup = 0.0;
  for (double x : p) sup = std::max(sup, std::abs(x));
  if (sup > 0.0)
    for (double& x : p) x /= sup;
  return p;
}

RandomInit init_random(const WarpedSpace& space, const BaseGrid& grid, double r0, double eps,
                       std::uint64_t seed) {
  if (eps < 0.0) throw ConfigError("init.eps", "requires eps >= 0");
  space.warp.require_in_domain(r0);
  space.warp.require_in_domain(r0 - 2.0 * eps);
  space.warp.require_in_domain(r0 + 2.0 * eps);

  RandomInit out;
  out.state = init_slice(space, grid, r0);
  if (eps == 0.0) return out;

  const std::vector<double> profile = perturbation_profile(grid, seed);
  GeometryComputer geom(grid);
  double eps_try = eps;
  for (int attempt = 0; attempt <= 20; ++attempt) {
    FlowState st = init_slice(space, grid, r0);
    for (std::size_t i = 0; i < profile.size(); ++i)
      st.u.values[i] = r0 + eps_try * profile[i];
    geom.compute_geometry_only(space, st.u.values);
    if (geom.reductions().kappa_min >= 1e-6) {
      out.state = std::move(st);
      out.eps_used = eps_try;
      out.halvings = attempt;
      return out;
    }
    eps_try *= 0.5;
  }
  throw InitializationError("strict convexity unattainable after 20 eps halvings (seed " +
                            std::to_string(seed) + ", requested eps " + std::to_string(eps) +
                            ")");
}

FlowEngine::FlowEngine(const WarpedSpace& space, const BaseGrid& grid, FlowConfig config)
    : space_(&space), grid_(&grid), config_(config), geom_(grid) {
  config_.validate();
  const std::size_t n = grid.node_count();
  k_accum_.resize(n);
  u_stage_.resize(n);
  u_new_.resize(n);
}

double FlowEngine::osc_u(const FlowState& state) const {
  double lo = state.u.values[0], hi = lo;
  for (double x : state.u.values) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return hi - lo;
}

double FlowEngine::compute_dt(const FlowState& state) {
  const GeomReductions& red = geom_.reductions();
  const double h = grid_->spacing();
  double dt = config_.cfl * h * h * red.dt_scale_min;
  // Keep the update well inside the radial domain.
  const double margin = std::min(red.u_min - space_->warp.domain_min(),
                                 space_->warp.domain_max() - red.u_max);
  if (red.rhs_abs_max > 0.0) dt = std::min(dt, 0.1 * margin / red.rhs_abs_max);
  const double remaining = config_.t_max - state.t;
  if (remaining > 0.0) dt = std::min(dt, remaining);
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw FlowError(state.step_index, FlowErrorKind::NonFinite,
                    "degenerate time step dt = " + std::to_string(dt));
  return dt;
}

double FlowEngine::step(FlowState& state) {
  const std::size_t n = state.u.values.size();
  const double* u = state.u.values.data();
  double* acc = u_new_.data();
  double* stage = u_stage_.data();
  auto wrap = [&](const auto& fn) -> std::span<const double> {
    try {
      return fn();
    } catch (const ConvexityLossError& e) {
      throw FlowError(state.step_index, FlowErrorKind::ConvexityLoss, e.what());
    } catch (const MeanConvexityLossError& e) {
      throw FlowError(state.step_index, FlowErrorKind::MeanConvexityLoss, e.what());
    } catch (const RadialRangeError& e) {
      throw FlowError(state.step_index, FlowErrorKind::RadialRange, e.what());
    } catch (const SingularMetricError& e) {
      throw FlowError(state.step_index, FlowErrorKind::SingularMetric, e.what());
    } catch (const NonFiniteError& e) {
      throw FlowError(state.step_index, FlowErrorKind::NonFinite, e.what());
    }
  };

  const auto rhs1 =
      wrap([&] { return geom_.flow_rhs(*space_, state.u.values, config_.type); });
  const double dt = compute_dt(state);
  const double dt6 = dt / 6.0, dt3 = dt / 3.0, dt2 = 0.5 * dt;
  for (std::size_t i = 0; i < n; ++i) {
    acc[i] = u[i] + dt6 * rhs1[i];
    stage[i] = u[i] + dt2 * rhs1[i];
  }
  const auto rhs2 = wrap([&] { return geom_.flow_rhs(*space_, u_stage_, config_.type); });
  for (std::size_t i = 0; i < n; ++i) {
    acc[i] += dt3 * rhs2[i];
    stage[i] = u[i] + dt2 * rhs2[i];
  }
  const auto rhs3 = wrap([&] { return geom_.flow_rhs(*space_, u_stage_, config_.type); });
  for (std::size_t i = 0; i < n; ++i) {
    acc[i] += dt3 * rhs3[i];
    stage[i] = u[i] + dt * rhs3[i];
  }
  const auto rhs4 = wrap([&] { return geom_.flow_rhs(*space_, u_stage_, config_.type); });
  for (std::size_t i = 0; i < n; ++i) acc[i] += dt6 * rhs4[i];

  std::swap(state.u.values, u_new_);
  state.t += dt;
  state.step_index += 1;
  return dt;
}

StepRecord FlowEngine::record_for(const FlowState& state, double dt_hint) {
  const GeometryFields& f = geom_.compute(*space_, state.u.values, config_.type);
  return make_record(state.t, dt_hint, state.u, *space_, f);
}

RunResult FlowEngine::run(FlowState initial, const std::function<void(const StepRecord&)>& sink,
                          const std::function<void(const FlowState&)>& step_hook) {
  RunResult result;
  FlowState st = std::move(initial);
  std::int64_t last_recorded = -1;
  double last_dt = 0.0;

  auto emit = [&](const StepRecord& rec) {
    result.records.push_back(rec);
    if (sink) sink(rec);
    last_recorded = st.step_index;
  };

  try {
    if (st.step_index == 0) emit(record_for(st, 0.0));
    while (true) {
      if (config_.type != FlowType::Imcf && osc_u(st) <= config_.tol_converged) {
        result.verdict = RunVerdict::Converged;
        break;
      }
      const double remaining = config_.t_max - st.t;
      if (remaining <= 1e-14 * config_.t_max || st.step_index >= config_.max_steps) {
        result.verdict = RunVerdict::TMaxReached;
        break;
      }
      last_dt = step(st);
      if (st.step_index % config_.record_every == 0) emit(record_for(st, last_dt));
      if (step_hook) step_hook(st);
    }
    if (last_recorded != st.step_index) emit(record_for(st, last_dt));
  } catch (const FlowError& e) {
    result.verdict = RunVerdict::Error;
    result.error_kind = e.kind;
    result.error_message = e.what();
  } catch (const ConvexityLossError& e) {
    result.verdict = RunVerdict::Error;
    result.error_kind = FlowErrorKind::ConvexityLoss;
    result.error_message = e.what();
  } catch (const MeanConvexityLossError& e) {
    result.verdict = RunVerdict::Error;
    result.error_kind = FlowErrorKind::MeanConvexityLoss;
    result.error_message = e.what();
  } catch (const RadialRangeError& e) {
    result.verdict = RunVerdict::Error;
    result.error_kind = FlowErrorKind::RadialRange;
    result.error_message = e.what();
  } catch (const SingularMetricError& e) {
    result.verdict = RunVerdict::Error;
    result.error_kind = FlowErrorKind::SingularMetric;
    result.error_message = e.what();
  } catch (const NonFiniteError& e) {
    result.verdict = RunVerdict::Error;
    result.error_kind = FlowErrorKind::NonFinite;
    result.error_message = e.what();
  }
  result.final_state = std::move(st);
  return result;
}

std::uint64_t config_digest(const WarpedSpace& space, const FlowConfig& config) {
  std::ostringstream os;
  os << space.describe() << '|' << static_cast<int>(config.type) << '|' << config.cfl << '|'
     << config.t_max << '|' << config.tol_converged << '|' << config.max_steps << '|'
     << config.record_every;
  const std::string s = os.str();
  return fnv1a64(s.data(), s.size());
}

void write_checkpoint(std::ostream& os, const FlowState& state, const BaseGrid& grid,
                      std::uint64_t digest) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  os << "# warpflow checkpoint 1 step " << state.step_index << " digest " << buf << '\n';
  grid.dump_field(os, state.u.values, state.t);
}

FlowState read_checkpoint(std::istream& is, const BaseGrid& grid,
                          std::uint64_t expected_digest) {
  std::string hash, name, kind, step_word, digest_word, digest_hex;
  int version = 0;
  std::int64_t step = 0;
  if (!(is >> hash >> name >> kind >> version >> step_word >> step >> digest_word >>
        digest_hex) ||
      hash != "#" || name != "warpflow" || kind != "checkpoint" || version != 1)
    throw IoError("malformed checkpoint header");
  const std::uint64_t digest = std::stoull(digest_hex, nullptr, 16);
  if (digest != expected_digest)
    throw ConfigError("resume", "checkpoint digest does not match the configuration");
  const BaseGrid::FieldDump dump = BaseGrid::read_field(is);
  if (dump.chart != grid.chart() || dump.resolution != grid.resolution())
    throw ConfigError("resume", "checkpoint grid does not match the configuration");
  FlowState st;
  st.t = dump.time;
  st.step_index = step;
  st.u.grid = &grid;
  st.u.values = dump.values;
  return st;
}

} // namespace warpflow
