#ifndef STOKESBI_CONFIG_HPP
#define STOKESBI_CONFIG_HPP

#include <string>
#include <vector>

#include "stokesbi/evolution.hpp"

namespace stokesbi {

/// Fully resolved run description, parsed from a flat key = value file.
/// Every knob lives here; there are no hidden defaults beyond the field
/// initializers, and the manifest echoes all of them.
struct RunConfig {
  int n = 64;

  ShapeSpec shape;
  double perturb_theta_amp = 0.0;
  unsigned long long perturb_seed = 1;

  FlowConfig flow;

  double kappa_b = 0.0;
  MembraneParams::TensionMode tension_mode = MembraneParams::TensionMode::hookean;
  double s_const = 1.0;
  double s0_uniform = 1.0;
  std::vector<ShapeSpec::Mode> s0_cos;
  std::vector<ShapeSpec::Mode> s0_sin;

  double mu = 2.0 / 3.0;
  FilterPolicy filters;

  DensityOptions solver;

  IntegratorConfig integrator;

  std::string output_dir = "out";
  double snapshot_interval = 0.0;  // 0: snapshots only at t = 0 and t_end
};

/// Parse a config from text / file. Unknown keys, bad values and violated
/// invariants raise Error(config_error) with the offending line.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Non-fatal validation notes (e.g. the non-analyzed hilbert_leading filter).
std::vector<std::string> config_warnings(const RunConfig& cfg);

/// Resolved output directory: $CAPSULE2D_OUTPUT_ROOT prefixes relative dirs.
std::string resolve_output_dir(const RunConfig& cfg);

/// Assemble the initial state and problem for a config.
InterfaceState build_initial_state(const RunConfig& cfg);
Problem build_problem(const RunConfig& cfg, const InterfaceState& initial);

}  // namespace stokesbi

#endif
