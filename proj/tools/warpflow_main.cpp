// warpflow: numerical simulator and audit toolkit for locally constrained
// inverse curvature flows on graph hypersurfaces in warped product spaces.
//
// Subcommands: run, slice-table, sweep, audit.
// Exit codes: 0 ok, 2 configuration error, 3 flow terminal error, 4 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "warpflow/audit.hpp"
#include "warpflow/csv.hpp"
#include "warpflow/errors.hpp"
#include "warpflow/flow.hpp"
#include "warpflow/run_config.hpp"
#include "warpflow/slice_functionals.hpp"

namespace wf = warpflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitFlow = 3;
constexpr int kExitIo = 4;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

wf::AuditOptions audit_options_for(const wf::RunConfig& cfg) {
  wf::AuditOptions opt;
  opt.osc_floor = 10.0 * cfg.tol_converged;
  return opt;
}

std::string state_section(const wf::ScalarField& u, const wf::WarpedSpace& space,
                          const wf::GeometryFields& geom) {
  std::ostringstream os;
  const wf::Functionals f = wf::functionals(u, space, geom);
  os << "state.area = " << fmt17(f.area) << '\n';
  os << "state.volume = " << fmt17(f.volume) << '\n';
  os << "state.w2 = " << fmt17(f.W2) << '\n';
  os << "state.genmink_w2 = " << fmt17(f.genmink_W2) << '\n';
  try {
    os << "state.hk_gap = " << fmt17(wf::heintze_karcher_gap(u, space, geom)) << '\n';
  } catch (const wf::MeanConvexityLossError&) {
    os << "state.hk_gap = unavailable (H1 <= 0 somewhere)\n";
  }
  const wf::InequalityGaps gaps = wf::inequality_gaps(u, space, geom);
  os << "state.mink_gap = " << fmt17(gaps.mink_gap) << '\n';
  os << "state.psi_gap = " << fmt17(gaps.psi_gap) << '\n';
  if (gaps.genmink_applicable)
    os << "state.genmink_gap = " << fmt17(gaps.genmink_gap) << '\n';
  os << "state.isoperimetric_gap = " << fmt17(gaps.isoperimetric_gap) << '\n';
  os << "state.umbilicity = " << fmt17(wf::umbilicity(geom)) << '\n';
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw wf::IoError("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw wf::IoError("write failure on '" + path + "'");
}

int cmd_run(const wf::RunConfig& cfg, const std::string& resume_path) {
  cfg.validate();
  const wf::WarpedSpace space = cfg.make_space();
  const wf::BaseGrid grid = cfg.make_grid();
  const wf::FlowConfig flow_cfg = cfg.make_flow_config();
  wf::FlowEngine engine(space, grid, flow_cfg);
  const std::uint64_t digest = wf::config_digest(space, flow_cfg);

  wf::FlowState state;
  if (!resume_path.empty()) {
    std::ifstream is(resume_path);
    if (!is) throw wf::IoError("cannot open checkpoint '" + resume_path + "'");
    state = wf::read_checkpoint(is, grid, digest);
  } else if (cfg.init_kind == "slice") {
    state = wf::init_slice(space, grid, cfg.r0);
  } else {
    wf::RandomInit init = wf::init_random(space, grid, cfg.r0, cfg.eps, cfg.seed);
    state = std::move(init.state);
    if (init.halvings > 0)
      std::cerr << "init: eps reduced to " << fmt17(init.eps_used) << " after "
                << init.halvings << " halvings\n";
  }

  std::ofstream csv_file;
  std::ostream* csv_os = &std::cout;
  if (!cfg.csv_path.empty()) {
    csv_file.open(cfg.csv_path);
    if (!csv_file) throw wf::IoError("cannot open '" + cfg.csv_path + "' for writing");
    csv_os = &csv_file;
  }
  wf::CsvWriter writer(*csv_os);

  std::function<void(const wf::FlowState&)> hook;
  if (!cfg.checkpoint_path.empty() && cfg.checkpoint_every > 0) {
    hook = [&](const wf::FlowState& st) {
      if (st.step_index % cfg.checkpoint_every != 0) return;
      std::ofstream os(cfg.checkpoint_path);
      if (!os) throw wf::IoError("cannot open checkpoint '" + cfg.checkpoint_path + "'");
      wf::write_checkpoint(os, st, grid, digest);
    };
  }

  const wf::RunResult result =
      engine.run(std::move(state), [&](const wf::StepRecord& r) { writer.write(r); }, hook);

  std::ostringstream report;
  report << "run.verdict = " << wf::to_string(result.verdict) << '\n';
  if (result.verdict == wf::RunVerdict::Error) {
    report << "run.error_kind = " << wf::to_string(result.error_kind) << '\n';
    report << "run.error = " << result.error_message << '\n';
  }
  if (result.records.size() >= 2) {
    const wf::AuditReport audit = wf::audit_trajectory(
        result.records, flow_cfg.type, space, audit_options_for(cfg));
    report << audit.to_key_values();
  } else {
    report << "trajectory.records = " << result.records.size()
           << "\ntrajectory.note = too few records for verdicts\n";
  }
  if (result.verdict != wf::RunVerdict::Error) {
    wf::GeometryComputer geom(grid);
    const wf::GeometryFields& f =
        geom.compute(space, result.final_state.u.values, flow_cfg.type);
    report << state_section(result.final_state.u, space, f);
  }
  write_text(cfg.report_path, report.str());

  return result.verdict == wf::RunVerdict::Error ? kExitFlow : kExitOk;
}

int cmd_slice_table(const wf::RunConfig& cfg, double r_min, double r_max, int count) {
  const wf::WarpedSpace space = cfg.make_space();
  if (count < 1) throw wf::ConfigError("count", "requires count >= 1");
  if (!(r_min <= r_max)) throw wf::ConfigError("r-min", "requires r-min <= r-max");
  if (!space.warp.in_domain(r_min))
    throw wf::ConfigError("r-min", "outside the open radial domain");
  if (!space.warp.in_domain(r_max))
    throw wf::ConfigError("r-max", "outside the open radial domain");

  std::ostringstream out;
  out << "r,area,volume,h1,w2\n";
  for (int i = 0; i < count; ++i) {
    const double r =
        count == 1 ? r_min : r_min + (r_max - r_min) * static_cast<double>(i) / (count - 1);
    const wf::SliceData d = wf::slice_functionals(space, r);
    out << fmt17(r) << ',' << fmt17(d.area) << ',' << fmt17(d.volume) << ',' << fmt17(d.H1)
        << ',' << fmt17(d.W2) << '\n';
  }
  write_text(cfg.csv_path, out.str());
  return kExitOk;
}

struct SweepRow {
  std::uint64_t seed = 0;
  double eps = 0.0;
  std::string status = "ok";
  std::string verdict;
  double eps_used = 0.0;
  wf::InequalityGaps initial_gaps;
  double initial_hk_gap = 0.0;
  double final_umbilicity = 0.0;
  double final_mink_gap = 0.0;
  double final_psi_gap = 0.0;
};

SweepRow sweep_one(const wf::RunConfig& cfg, const wf::WarpedSpace& space,
                   const wf::BaseGrid& grid, std::uint64_t seed, double eps) {
  SweepRow row;
  row.seed = seed;
  row.eps = eps;
  try {
    wf::RandomInit init = wf::init_random(space, grid, cfg.r0, eps, seed);
    row.eps_used = init.eps_used;
    wf::GeometryComputer geom(grid);
    const wf::GeometryFields& f0 = geom.compute_geometry_only(space, init.state.u.values);
    row.initial_gaps = wf::inequality_gaps(init.state.u, space, f0);
    row.initial_hk_gap = wf::heintze_karcher_gap(init.state.u, space, f0);

    wf::FlowEngine engine(space, grid, cfg.make_flow_config());
    const wf::RunResult result = engine.run(std::move(init.state));
    row.verdict = wf::to_string(result.verdict);
    if (result.verdict == wf::RunVerdict::Error) {
      row.status = "error:" + wf::to_string(result.error_kind);
      return row;
    }
    const wf::StepRecord& last = result.records.back();
    row.final_umbilicity = last.umbilicity;
    row.final_mink_gap =
        last.w2 - wf::phi_of_area(space, last.area, wf::ComparisonFunctional::W2);
    row.final_psi_gap =
        last.w2 - wf::psi_of_volume(space, last.volume, wf::ComparisonFunctional::W2);
  } catch (const wf::Error& e) {
    row.status = std::string("error:") + e.what();
  }
  return row;
}

int cmd_sweep(const wf::RunConfig& cfg, const std::vector<std::uint64_t>& seeds,
              const std::vector<double>& eps_list) {
  cfg.validate();
  if (seeds.empty()) throw wf::ConfigError("seeds", "requires a nonempty seed list");
  if (eps_list.empty()) throw wf::ConfigError("eps", "requires a nonempty eps list");
  const wf::WarpedSpace space = cfg.make_space();
  const wf::BaseGrid grid = cfg.make_grid();

  struct Task {
    std::uint64_t seed;
    double eps;
  };
  std::vector<Task> tasks;
  for (std::uint64_t s : seeds)
    for (double e : eps_list) tasks.push_back({s, e});

  std::vector<SweepRow> rows(tasks.size());
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), tasks.size());
  std::size_t next = 0;
  while (next < tasks.size()) {
    std::vector<std::pair<std::size_t, std::future<SweepRow>>> batch;
    for (std::size_t w = 0; w < workers && next < tasks.size(); ++w, ++next) {
      const std::size_t idx = next;
      batch.emplace_back(idx, std::async(std::launch::async, [&, idx] {
                           return sweep_one(cfg, space, grid, tasks[idx].seed, tasks[idx].eps);
                         }));
    }
    for (auto& [idx, fut] : batch) rows[idx] = fut.get();
  }

  std::ostringstream out;
  out << "seed,eps,status,verdict,eps_used,initial_mink_gap,initial_psi_gap,"
         "initial_genmink_gap,initial_hk_gap,initial_isoperimetric_gap,"
         "final_mink_gap,final_psi_gap,final_umbilicity\n";
  for (const SweepRow& r : rows) {
    out << r.seed << ',' << fmt17(r.eps) << ',' << r.status << ',' << r.verdict << ','
        << fmt17(r.eps_used) << ',' << fmt17(r.initial_gaps.mink_gap) << ','
        << fmt17(r.initial_gaps.psi_gap) << ',' << fmt17(r.initial_gaps.genmink_gap) << ','
        << fmt17(r.initial_hk_gap) << ',' << fmt17(r.initial_gaps.isoperimetric_gap) << ','
        << fmt17(r.final_mink_gap) << ',' << fmt17(r.final_psi_gap) << ','
        << fmt17(r.final_umbilicity) << '\n';
  }
  write_text(cfg.csv_path, out.str());
  return kExitOk;
}

int cmd_audit(const std::string& csv_path, const wf::RunConfig& cfg) {
  const wf::WarpedSpace space = cfg.make_space();
  std::ifstream is(csv_path);
  if (!is) throw wf::IoError("cannot open '" + csv_path + "'");
  const std::vector<wf::StepRecord> records = wf::read_record_csv(is);
  if (records.size() < 2) throw wf::ConfigError("csv", "audit requires at least 2 records");
  const wf::AuditReport report = wf::audit_trajectory(records, cfg.flow_type_enum(), space,
                                                      audit_options_for(cfg));
  write_text(cfg.report_path, report.to_key_values());
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"warpflow: constrained inverse curvature flows in warped products"};
  app.require_subcommand(1);

  std::string config_path, resume_path, csv_path;
  double r_min = 0.5, r_max = 2.0;
  int count = 16;
  std::vector<std::uint64_t> seeds;
  std::vector<double> eps_list;

  CLI::App* run = app.add_subcommand("run", "time-step a flow and audit the trajectory");
  run->add_option("--config", config_path, "run configuration file")->required();
  run->add_option("--resume", resume_path, "checkpoint file to resume from");

  CLI::App* table = app.add_subcommand("slice-table", "tabulate radial slice functionals");
  table->add_option("--config", config_path, "space configuration file")->required();
  table->add_option("--r-min", r_min, "lower radius")->required();
  table->add_option("--r-max", r_max, "upper radius")->required();
  table->add_option("--count", count, "number of rows")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "run a seeds x eps cross product");
  sweep->add_option("--config", config_path, "base configuration file")->required();
  sweep->add_option("--seeds", seeds, "seed list")->required()->delimiter(',');
  sweep->add_option("--eps", eps_list, "eps list")->required()->delimiter(',');

  CLI::App* audit = app.add_subcommand("audit", "re-audit a persisted record CSV");
  audit->add_option("--csv", csv_path, "record CSV file")->required();
  audit->add_option("--config", config_path, "configuration file (space and flow type)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const wf::RunConfig cfg = wf::RunConfig::parse_file(config_path);
    if (run->parsed()) return cmd_run(cfg, resume_path);
    if (table->parsed()) return cmd_slice_table(cfg, r_min, r_max, count);
    if (sweep->parsed()) return cmd_sweep(cfg, seeds, eps_list);
    if (audit->parsed()) return cmd_audit(csv_path, cfg);
  } catch (const wf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const wf::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const wf::RangeError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const wf::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const wf::FlowError& e) {
    std::cerr << "flow error: " << e.what() << '\n';
    return kExitFlow;
  } catch (const wf::InitializationError& e) {
    std::cerr << "flow error: " << e.what() << '\n';
    return kExitFlow;
  } catch (const wf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFlow;
  }
  return kExitOk;
}
