#include "stokesbi/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace stokesbi {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(int line, const std::string& msg) {
  throw Error(ErrorCode::config_error, "config line " + std::to_string(line) + ": " + msg);
}

double parse_real(int line, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) bad(line, "trailing characters in number '" + v + "'");
    return x;
  } catch (const Error&) {
    throw;
  } catch (...) {
    bad(line, "expected a number, got '" + v + "'");
  }
}

long parse_int(int line, const std::string& v) {
  try {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) bad(line, "trailing characters in integer '" + v + "'");
    return x;
  } catch (const Error&) {
    throw;
  } catch (...) {
    bad(line, "expected an integer, got '" + v + "'");
  }
}

bool parse_bool(int line, const std::string& v) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  bad(line, "expected true/false, got '" + v + "'");
}

// "k:amp,k:amp" mode lists.
std::vector<ShapeSpec::Mode> parse_modes(int line, const std::string& v) {
  std::vector<ShapeSpec::Mode> modes;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) bad(line, "mode entry '" + item + "' must be k:amplitude");
    ShapeSpec::Mode m;
    m.k = static_cast<int>(parse_int(line, trim(item.substr(0, colon))));
    m.amp = parse_real(line, trim(item.substr(colon + 1)));
    if (m.k <= 0) bad(line, "mode index must be positive");
    modes.push_back(m);
  }
  return modes;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) bad(line, "expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (val.empty()) bad(line, "missing value for '" + key + "'");

    if (key == "grid.n") {
      cfg.n = static_cast<int>(parse_int(line, val));
    } else if (key == "shape.kind") {
      if (val == "circle") cfg.shape.kind = ShapeSpec::Kind::circle;
      else if (val == "ellipse") cfg.shape.kind = ShapeSpec::Kind::ellipse;
      else if (val == "fourier") cfg.shape.kind = ShapeSpec::Kind::fourier;
      else bad(line, "unknown shape kind '" + val + "'");
    } else if (key == "shape.radius") {
      cfg.shape.radius = parse_real(line, val);
    } else if (key == "shape.a") {
      cfg.shape.a = parse_real(line, val);
    } else if (key == "shape.b") {
      cfg.shape.b = parse_real(line, val);
    } else if (key == "shape.cos") {
      cfg.shape.cos_modes = parse_modes(line, val);
    } else if (key == "shape.sin") {
      cfg.shape.sin_modes = parse_modes(line, val);
    } else if (key == "shape.orientation") {
      if (val == "ccw") cfg.shape.orientation = 1;
      else if (val == "cw") cfg.shape.orientation = -1;
      else bad(line, "orientation must be ccw or cw");
    } else if (key == "perturb.theta_amp") {
      cfg.perturb_theta_amp = parse_real(line, val);
    } else if (key == "perturb.seed") {
      cfg.perturb_seed = static_cast<unsigned long long>(parse_int(line, val));
    } else if (key == "flow.q") {
      cfg.flow.q = parse_real(line, val);
    } else if (key == "flow.b") {
      cfg.flow.b = parse_real(line, val);
    } else if (key == "flow.g") {
      cfg.flow.g = parse_real(line, val);
    } else if (key == "flow.lambda") {
      cfg.flow.lambda = parse_real(line, val);
    } else if (key == "membrane.kappa_b") {
      cfg.kappa_b = parse_real(line, val);
    } else if (key == "membrane.tension") {
      if (val == "hookean") cfg.tension_mode = MembraneParams::TensionMode::hookean;
      else if (val == "constant") cfg.tension_mode = MembraneParams::TensionMode::constant;
      else bad(line, "tension mode must be hookean or constant");
    } else if (key == "membrane.s") {
      cfg.s_const = parse_real(line, val);
    } else if (key == "membrane.s0") {
      cfg.s0_uniform = parse_real(line, val);
    } else if (key == "membrane.s0_cos") {
      cfg.s0_cos = parse_modes(line, val);
    } else if (key == "membrane.s0_sin") {
      cfg.s0_sin = parse_modes(line, val);
    } else if (key == "filter.mu") {
      cfg.mu = parse_real(line, val);
    } else if (key == "filter.forcing") {
      cfg.filters.forcing = parse_bool(line, val);
    } else if (key == "filter.density_kernels") {
      cfg.filters.density_kernels = parse_bool(line, val);
    } else if (key == "filter.tension_transport") {
      cfg.filters.tension_transport = parse_bool(line, val);
    } else if (key == "filter.hilbert_leading") {
      cfg.filters.hilbert_leading = parse_bool(line, val);
    } else if (key == "solver.tol") {
      cfg.solver.tol = parse_real(line, val);
    } else if (key == "solver.max_iter") {
      cfg.solver.max_iter = static_cast<int>(parse_int(line, val));
    } else if (key == "solver.deflation") {
      cfg.solver.deflation = parse_bool(line, val);
    } else if (key == "integrator.scheme") {
      if (val == "rk4") cfg.integrator.scheme = IntegratorConfig::Scheme::rk4_explicit;
      else if (val == "imex") cfg.integrator.scheme = IntegratorConfig::Scheme::imex_bending;
      else bad(line, "scheme must be rk4 or imex");
    } else if (key == "integrator.dt") {
      cfg.integrator.dt = parse_real(line, val);
    } else if (key == "integrator.cfl") {
      cfg.integrator.cfl = parse_real(line, val);
    } else if (key == "integrator.t_end") {
      cfg.integrator.t_end = parse_real(line, val);
    } else if (key == "output.dir") {
      cfg.output_dir = val;
    } else if (key == "output.snapshot_interval") {
      cfg.snapshot_interval = parse_real(line, val);
    } else {
      bad(line, "unknown key '" + key + "'");
    }
  }

  // Cross-field validation, reported as config errors before anything runs.
  if (cfg.n < 8 || cfg.n % 2 != 0)
    throw Error(ErrorCode::config_error, "grid.n must be even and >= 8");
  if (!(cfg.mu > 0.0 && cfg.mu < 1.0))
    throw Error(ErrorCode::config_error, "filter.mu must lie in (0,1)");
  if (cfg.flow.lambda < 0.0)
    throw Error(ErrorCode::config_error, "flow.lambda must be >= 0");
  if (cfg.kappa_b < 0.0)
    throw Error(ErrorCode::config_error, "membrane.kappa_b must be >= 0");
  if (!(cfg.integrator.t_end > 0.0))
    throw Error(ErrorCode::config_error, "integrator.t_end must be positive");
  if (cfg.integrator.dt < 0.0 || (cfg.integrator.dt == 0.0 && !(cfg.integrator.cfl > 0.0)))
    throw Error(ErrorCode::config_error, "need integrator.dt > 0 or integrator.cfl > 0");
  if (cfg.snapshot_interval < 0.0)
    throw Error(ErrorCode::config_error, "output.snapshot_interval must be >= 0");
  try {
    cfg.shape.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::config_error, std::string("shape: ") + e.what());
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::config_error, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<std::string> config_warnings(const RunConfig& cfg) {
  std::vector<std::string> w;
  if (cfg.filters.hilbert_leading)
    w.push_back(
        "non-analyzed configuration: filter.hilbert_leading applies the filter to the leading "
        "singular term H_h(omega); stability is not covered by the analyzed scheme");
  if (!cfg.filters.forcing || !cfg.filters.density_kernels || !cfg.filters.tension_transport)
    w.push_back("one or more filter sites disabled; scheme may be unstable on fine grids");
  return w;
}

std::string resolve_output_dir(const RunConfig& cfg) {
  const char* root = std::getenv("CAPSULE2D_OUTPUT_ROOT");
  if (root && root[0] != '\0' && !cfg.output_dir.empty() && cfg.output_dir[0] != '/')
    return std::string(root) + "/" + cfg.output_dir;
  return cfg.output_dir;
}

InterfaceState build_initial_state(const RunConfig& cfg) {
  Grid grid(cfg.n);
  InterfaceState state = resample_equal_arclength(cfg.shape, grid);
  if (cfg.perturb_theta_amp != 0.0)
    state = perturb_theta(state, cfg.perturb_theta_amp, cfg.perturb_seed);
  return state;
}

Problem build_problem(const RunConfig& cfg, const InterfaceState& initial) {
  MembraneParams membrane;
  membrane.kappa_b = cfg.kappa_b;
  membrane.mode = cfg.tension_mode;
  membrane.s_const = cfg.s_const;
  membrane.sigma0 = initial.sigma;
  if (cfg.tension_mode == MembraneParams::TensionMode::hookean) {
    membrane.s0.assign(cfg.n, cfg.s0_uniform);
    for (int i = 0; i < cfg.n; ++i) {
      double a = initial.grid.alpha(i);
      for (const auto& m : cfg.s0_cos) membrane.s0[i] += m.amp * std::cos(m.k * a);
      for (const auto& m : cfg.s0_sin) membrane.s0[i] += m.amp * std::sin(m.k * a);
    }
  }
  membrane.validate(initial.grid);

  Problem prob(initial.grid, std::move(membrane), cfg.flow, cfg.mu);
  prob.solver = cfg.solver;
  prob.filters = cfg.filters;
  return prob;
}

}  // namespace stokesbi
