#include "stokesbi/membrane.hpp"

#include <algorithm>
#include <cmath>

namespace stokesbi {

void MembraneParams::validate(const Grid& grid) const {
  if (kappa_b < 0.0) throw Error(ErrorCode::invalid_input, "bending modulus must be >= 0");
  if (sigma0 <= 0.0) throw Error(ErrorCode::invalid_input, "sigma0 must be positive");
  if (mode == TensionMode::constant) {
    if (s_const <= 0.0)
      throw Error(ErrorCode::invalid_input, "constant tension must be positive for a physical drop");
    return;
  }
  require_length(grid, s0.size(), "MembraneParams.s0");
  for (double v : s0)
    if (1.0 + v <= 0.0)
      throw Error(ErrorCode::invalid_input, "initial tension violates stretch positivity 1 + S0 > 0");
}

RealSeq tension_profile(const InterfaceState& state, const MembraneParams& params,
                        const Filter& filt, bool filtered_transport) {
  const int n = state.n();
  if (params.mode == MembraneParams::TensionMode::constant)
    return RealSeq(n, params.s_const);

  RealSeq slope = state.alpha0_deriv(filt, filtered_transport);
  for (int i = 0; i < n; ++i)
    if (slope[i] <= 0.0)
      throw Error(ErrorCode::map_degeneracy,
                  "backward map slope is non-positive at node " + std::to_string(i));

  // S0 sampled at the material preimage α₀(α_i); with an identity map this is
  // just the stored profile.
  bool identity_map = std::all_of(state.alpha0_p.begin(), state.alpha0_p.end(),
                                  [](double v) { return v == 0.0; });
  RealSeq s0_at(n);
  if (identity_map) {
    s0_at = params.s0;
  } else {
    ComplexSeq s0_hat = dft(state.grid, params.s0);
    for (int i = 0; i < n; ++i)
      s0_at[i] = trig_interp_coeff_real(state.grid, s0_hat, state.alpha0(i));
  }

  RealSeq tension(n);
  double ratio = state.sigma / params.sigma0;
  for (int i = 0; i < n; ++i)
    tension[i] = ratio / slope[i] * (1.0 + s0_at[i]) - 1.0;
  return tension;
}

ComplexSeq assemble_forcing(const InterfaceState& state, const RealSeq& tension,
                            const FlowConfig& flow, double kappa_b, const Filter& filt,
                            bool filtered, Complex h_term) {
  const int n = state.n();
  require_length(state.grid, tension.size(), "assemble_forcing tension");

  RealSeq dd_theta;
  if (filtered) {
    dd_theta = filtered_derivative(state.grid, filtered_derivative(state.grid, state.theta_p, filt), filt);
  } else {
    dd_theta = spectral_derivative(state.grid, spectral_derivative(state.grid, state.theta_p));
  }

  const double beta = flow.beta();
  const double chi = flow.chi();
  const double sigma2 = state.sigma * state.sigma;
  ComplexSeq g(n);
  ComplexSeq tau;
  if (beta != 0.0) tau = reconstruct_tau(state);
  for (int i = 0; i < n; ++i) {
    Complex e = std::polar(1.0, state.theta(i));
    Complex val = -(chi / 2.0) * (tension[i] * e - (kappa_b / sigma2) * dd_theta[i] * Complex(0.0, 1.0) * e);
    if (beta != 0.0)
      val -= beta * Complex(flow.b, -flow.q) * std::conj(tau[i]) + 2.0 * beta * h_term;
    g[i] = val;
  }
  return g;
}

Forcing build_forcing(const InterfaceState& state, const MembraneParams& params,
                      const FlowConfig& flow, const Filter& filt, bool filter_forcing,
                      bool filtered_transport, Complex h_term) {
  Forcing f;
  f.tension = tension_profile(state, params, filt, filtered_transport);
  f.g = assemble_forcing(state, f.tension, flow, params.kappa_b, filt, /*filtered=*/false, h_term);
  f.g_filtered = filter_forcing
                     ? assemble_forcing(state, f.tension, flow, params.kappa_b, filt, /*filtered=*/true, h_term)
                     : f.g;
  return f;
}

}  // namespace stokesbi
