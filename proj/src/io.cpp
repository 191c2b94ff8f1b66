#include "stokesbi/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace stokesbi {

const char* kToolVersion = "capsule2d 0.1.0";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create directory '" + dir + "': " + ec.message());
}

namespace {
std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  return f;
}
}  // namespace

std::string write_snapshot_csv(const std::string& dir, int index, const InterfaceState& state,
                               const RealSeq& tension) {
  char name[32];
  std::snprintf(name, sizeof(name), "interface_%04d.csv", index);
  std::string path = dir + "/" + name;
  std::ofstream f = open_out(path);
  f << "t,j,x,y,theta,tension,alpha0\n";
  ComplexSeq tau = reconstruct_tau(state);
  for (int i = 0; i < state.n(); ++i) {
    f << fmt17(state.time) << ',' << i << ',' << fmt17(tau[i].real()) << ','
      << fmt17(tau[i].imag()) << ',' << fmt17(state.theta(i)) << ',' << fmt17(tension[i]) << ','
      << fmt17(state.alpha0(i)) << '\n';
  }
  return path;
}

std::string write_diagnostics_csv(const std::string& dir, const std::vector<Diagnostics>& rows) {
  std::string path = dir + "/diagnostics.csv";
  std::ofstream f = open_out(path);
  f << "time,area,perimeter,sigma,high_mode_max,density_residual,alpha0_min_slope,"
       "imag_residue_alpha0\n";
  for (const auto& d : rows) {
    f << fmt17(d.time) << ',' << fmt17(d.area) << ',' << fmt17(d.perimeter) << ','
      << fmt17(d.sigma) << ',' << fmt17(d.high_mode_max) << ',' << fmt17(d.density_residual)
      << ',' << fmt17(d.alpha0_min_slope) << ',' << fmt17(d.imag_residue_alpha0) << '\n';
  }
  return path;
}

std::string write_manifest(const std::string& dir, const RunConfig& cfg,
                           const std::vector<std::string>& warnings, bool failed,
                           const std::string& failure, double last_good_time,
                           const std::vector<std::string>& snapshot_files) {
  nlohmann::json j;
  j["tool"] = kToolVersion;

  nlohmann::json grid;
  grid["n"] = cfg.n;
  j["grid"] = grid;

  nlohmann::json shape;
  switch (cfg.shape.kind) {
    case ShapeSpec::Kind::circle: shape["kind"] = "circle"; break;
    case ShapeSpec::Kind::ellipse: shape["kind"] = "ellipse"; break;
    case ShapeSpec::Kind::fourier: shape["kind"] = "fourier"; break;
  }
  shape["radius"] = cfg.shape.radius;
  shape["a"] = cfg.shape.a;
  shape["b"] = cfg.shape.b;
  shape["orientation"] = cfg.shape.orientation == 1 ? "ccw" : "cw";
  auto modes_json = [](const std::vector<ShapeSpec::Mode>& ms) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : ms) arr.push_back({{"k", m.k}, {"amp", m.amp}});
    return arr;
  };
  shape["cos"] = modes_json(cfg.shape.cos_modes);
  shape["sin"] = modes_json(cfg.shape.sin_modes);
  j["shape"] = shape;

  j["perturb"] = {{"theta_amp", cfg.perturb_theta_amp}, {"seed", cfg.perturb_seed}};
  j["flow"] = {{"q", cfg.flow.q}, {"b", cfg.flow.b}, {"g", cfg.flow.g},
               {"lambda", cfg.flow.lambda}, {"beta", cfg.flow.beta()}, {"chi", cfg.flow.chi()}};
  j["membrane"] = {
      {"kappa_b", cfg.kappa_b},
      {"tension", cfg.tension_mode == MembraneParams::TensionMode::hookean ? "hookean" : "constant"},
      {"s", cfg.s_const},
      {"s0", cfg.s0_uniform},
      {"s0_cos", modes_json(cfg.s0_cos)},
      {"s0_sin", modes_json(cfg.s0_sin)}};
  j["filter"] = {{"mu", cfg.mu},
                 {"forcing", cfg.filters.forcing},
                 {"density_kernels", cfg.filters.density_kernels},
                 {"tension_transport", cfg.filters.tension_transport},
                 {"hilbert_leading", cfg.filters.hilbert_leading}};
  j["solver"] = {{"tol", cfg.solver.tol},
                 {"max_iter", cfg.solver.max_iter},
                 {"deflation", cfg.solver.deflation},
                 {"direct_beta_threshold", cfg.solver.direct_beta_threshold}};
  j["integrator"] = {
      {"scheme", cfg.integrator.scheme == IntegratorConfig::Scheme::rk4_explicit ? "rk4" : "imex"},
      {"dt", cfg.integrator.dt},
      {"cfl", cfg.integrator.cfl},
      {"t_end", cfg.integrator.t_end}};
  j["output"] = {{"dir", cfg.output_dir}, {"snapshot_interval", cfg.snapshot_interval}};
  j["warnings"] = warnings;
  j["status"] = failed ? "failed" : "ok";
  if (failed) {
    j["failure"] = failure;
    j["last_good_time"] = last_good_time;
  }
  j["snapshots"] = snapshot_files;

  std::string path = dir + "/manifest.json";
  std::ofstream f = open_out(path);
  f << j.dump(2) << '\n';
  return path;
}

}  // namespace stokesbi
