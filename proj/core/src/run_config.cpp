#include "warpflow/run_config.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "warpflow/errors.hpp"

namespace warpflow {

namespace {

std::string trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a real number, got '" + value + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::int64_t x = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::uint64_t x = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an unsigned integer, got '" + value + "'");
  }
}

std::vector<double> parse_reals(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::istringstream is(value);
  std::string tok;
  while (is >> tok) out.push_back(parse_real(key, tok));
  if (out.empty()) throw ConfigError(key, "expected a list of real numbers");
  return out;
}

} // namespace

RunConfig RunConfig::parse(std::istream& is) {
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");

    if (key == "space.family") cfg.warp_family = value;
    else if (key == "space.alpha") cfg.alpha = parse_real(key, value);
    else if (key == "space.beta") cfg.beta = parse_real(key, value);
    else if (key == "space.offset") cfg.offset = parse_real(key, value);
    else if (key == "space.coeffs") cfg.coeffs = parse_reals(key, value);
    else if (key == "space.a") cfg.domain_a = parse_real(key, value);
    else if (key == "space.b") cfg.domain_b = parse_real(key, value);
    else if (key == "space.base") cfg.base = value;
    else if (key == "space.resolution") cfg.resolution = static_cast<int>(parse_int(key, value));
    else if (key == "space.n") cfg.n = static_cast<int>(parse_int(key, value));
    else if (key == "flow.type") cfg.flow_type = value;
    else if (key == "flow.cfl") cfg.cfl = parse_real(key, value);
    else if (key == "flow.t_max") cfg.t_max = parse_real(key, value);
    else if (key == "flow.tol_converged") cfg.tol_converged = parse_real(key, value);
    else if (key == "flow.max_steps") cfg.max_steps = parse_int(key, value);
    else if (key == "flow.record_every") cfg.record_every = parse_int(key, value);
    else if (key == "init.kind") cfg.init_kind = value;
    else if (key == "init.r0") cfg.r0 = parse_real(key, value);
    else if (key == "init.eps") cfg.eps = parse_real(key, value);
    else if (key == "init.seed") cfg.seed = parse_uint(key, value);
    else if (key == "output.csv") cfg.csv_path = value;
    else if (key == "output.report") cfg.report_path = value;
    else if (key == "output.checkpoint") cfg.checkpoint_path = value;
    else if (key == "output.checkpoint_every") cfg.checkpoint_every = parse_int(key, value);
    else if (key == "sweep.workers") cfg.workers = static_cast<int>(parse_int(key, value));
    else throw ConfigError(key, "unknown configuration key");
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config file '" + path + "'");
  return parse(is);
}

FlowType RunConfig::flow_type_enum() const {
  if (flow_type == "lcf-h2h1") return FlowType::LcfH2H1;
  if (flow_type == "imcf") return FlowType::Imcf;
  if (flow_type == "gl") return FlowType::Gl;
  throw ConfigError("flow.type", "expected lcf-h2h1 | imcf | gl, got '" + flow_type + "'");
}

WarpedSpace RunConfig::make_space() const {
  WarpFunction warp = [&]() -> WarpFunction {
    if (warp_family == "sinh") return WarpFunction::sinh_warp(domain_a, domain_b);
    if (warp_family == "cosh") return WarpFunction::cosh_warp(domain_a, domain_b);
    if (warp_family == "lincomb")
      return WarpFunction::linear_combination(alpha, beta, domain_a, domain_b);
    if (warp_family == "affine") return WarpFunction::affine(offset, domain_a, domain_b);
    if (warp_family == "poly") return WarpFunction::polynomial(coeffs, domain_a, domain_b);
    throw ConfigError("space.family",
                      "expected sinh | cosh | lincomb | affine | poly, got '" + warp_family + "'");
  }();
  const BaseKind kind = [&] {
    if (base == "torus2d") return BaseKind::Torus;
    if (base == "axisym-sphere") return BaseKind::UnitSphere;
    throw ConfigError("space.base", "expected torus2d | axisym-sphere, got '" + base + "'");
  }();
  return WarpedSpace::make(std::move(warp), kind, n);
}

BaseGrid RunConfig::make_grid() const {
  return BaseGrid::make(base == "torus2d" ? Chart::Torus2D : Chart::AxisymSphere, resolution);
}

FlowConfig RunConfig::make_flow_config() const {
  FlowConfig fc;
  fc.type = flow_type_enum();
  fc.cfl = cfl;
  fc.t_max = t_max;
  fc.tol_converged = tol_converged;
  fc.max_steps = max_steps;
  fc.record_every = record_every;
  return fc;
}

void RunConfig::validate() const {
  if (n != 2) throw ConfigError("space.n", "flows support n = 2 only");
  const WarpedSpace space = make_space(); // validates family/domain/positivity
  (void)make_grid();                      // validates chart/resolution
  make_flow_config().validate();
  (void)flow_type_enum();
  if (init_kind != "slice" && init_kind != "random")
    throw ConfigError("init.kind", "expected slice | random, got '" + init_kind + "'");
  if (!space.warp.in_domain(r0))
    throw ConfigError("init.r0", "outside radial domain (" + std::to_string(domain_a) + ", " +
                                     std::to_string(domain_b) + ")");
  if (init_kind == "random") {
    if (eps < 0.0) throw ConfigError("init.eps", "requires eps >= 0");
    if (!space.warp.in_domain(r0 - 2.0 * eps) || !space.warp.in_domain(r0 + 2.0 * eps))
      throw ConfigError("init.eps", "r0 +- 2 eps leaves the radial domain");
  }
  if (checkpoint_every < 0)
    throw ConfigError("output.checkpoint_every", "requires a nonnegative interval");
  if (workers < 1) throw ConfigError("sweep.workers", "requires workers >= 1");
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "space.family = " << warp_family << '\n';
  if (warp_family == "lincomb")
    os << "space.alpha = " << alpha << "\nspace.beta = " << beta << '\n';
  if (warp_family == "affine") os << "space.offset = " << offset << '\n';
  if (warp_family == "poly") {
    os << "space.coeffs =";
    for (double c : coeffs) os << ' ' << c;
    os << '\n';
  }
  os << "space.a = " << domain_a << "\nspace.b = " << domain_b << '\n';
  os << "space.base = " << base << "\nspace.resolution = " << resolution << '\n';
  os << "space.n = " << n << '\n';
  os << "flow.type = " << flow_type << "\nflow.cfl = " << cfl << '\n';
  os << "flow.t_max = " << t_max << "\nflow.tol_converged = " << tol_converged << '\n';
  os << "flow.max_steps = " << max_steps << "\nflow.record_every = " << record_every << '\n';
  os << "init.kind = " << init_kind << "\ninit.r0 = " << r0 << '\n';
  os << "init.eps = " << eps << "\ninit.seed = " << seed << '\n';
  return os.str();
}

} // namespace warpflow
