#include "stokesbi/velocity.hpp"

#include <cmath>

namespace stokesbi {

ComplexSeq regular_velocity(const Grid& grid, const KernelGeometry& geom,
                            const ComplexSeq& omega_p, const FlowConfig& flow) {
  require_length(grid, omega_p.size(), "regular_velocity");
  require_length(grid, geom.tau.size(), "regular_velocity geometry");
  const int n = grid.n();
  const double h = grid.h();

  // cot((α_i-α_j)/2) depends only on (i-j) mod N.
  std::vector<double> cot(n, 0.0);
  for (int d = 1; d < n; ++d)
    if (d % 2 != 0) cot[d] = std::cos(0.5 * d * h) / std::sin(0.5 * d * h);

  ComplexSeq out(n);
  for (int i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (int j = (i % 2 == 0) ? 1 : 0; j < n; j += 2) {
      Complex d = geom.tau[j] - geom.tau[i];
      if (d == Complex(0.0, 0.0))
        throw Error(ErrorCode::geometry_degeneracy,
                    "coincident interface nodes " + std::to_string(i) + ", " + std::to_string(j));
      Complex cd = std::conj(d);
      double g1 = 2.0 * (geom.dtau[j] / d).real() + cot[((i - j) % n + n) % n];
      Complex g2 = geom.dtau[j] / cd - d * std::conj(geom.dtau[j]) / (cd * cd);
      s += -omega_p[j] * g1 + std::conj(omega_p[j]) * g2;
    }
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw Error(ErrorCode::geometry_degeneracy,
                  "non-finite velocity kernel sum at row " + std::to_string(i));
    out[i] = s * (h / kPi) + Complex(flow.q, flow.b) * std::conj(geom.tau[i]) -
             Complex(0.0, 0.5 * flow.g) * geom.tau[i];
  }
  return out;
}

ComplexSeq full_velocity(const Grid& grid, const ComplexSeq& omega, const ComplexSeq& u_regular,
                         HilbertMode mode) {
  ComplexSeq u = hilbert_transform(grid, omega, mode);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += u_regular[i];
  return u;
}

void normal_tangential(const InterfaceState& state, const ComplexSeq& omega,
                       const ComplexSeq& omega_p, const ComplexSeq& u_regular, RealSeq& u_n,
                       RealSeq& u_s, HilbertMode mode) {
  const Grid& grid = state.grid;
  const int n = grid.n();
  ComplexSeq conj_tangent(n);
  for (int i = 0; i < n; ++i) conj_tangent[i] = std::polar(1.0, -state.theta(i));

  ComplexSeq rotated(n);
  for (int i = 0; i < n; ++i) rotated[i] = omega[i] * conj_tangent[i];
  ComplexSeq lead = hilbert_transform(grid, rotated, mode);
  ComplexSeq comm = hilbert_commutator(grid, conj_tangent, omega_p, mode);

  u_n.resize(n);
  u_s.resize(n);
  for (int i = 0; i < n; ++i) {
    Complex w = lead[i] - comm[i] + u_regular[i] * conj_tangent[i];
    u_n[i] = w.imag();
    u_s[i] = w.real();
  }
}

RealSeq compute_phi_s(const InterfaceState& state, const RealSeq& u_n) {
  const Grid& grid = state.grid;
  RealSeq dtheta = state.theta_deriv();
  RealSeq integrand(grid.n());
  for (int i = 0; i < grid.n(); ++i) integrand[i] = u_n[i] * dtheta[i];
  double mean = discrete_mean(integrand);
  for (double& v : integrand) v -= mean;
  return antiderivative(grid, integrand);
}

Complex frame_velocity_zero_mode(const InterfaceState& state, const RealSeq& u_n,
                                 const RealSeq& phi_s) {
  const int n = state.n();
  Complex s = 0.0;
  for (int i = 0; i < n; ++i) {
    Complex e = std::polar(1.0, state.theta(i));
    s += Complex(0.0, u_n[i]) * e + phi_s[i] * e;
  }
  return s / static_cast<double>(n);
}

VelocityField evaluate_velocity(const InterfaceState& state, const KernelGeometry& geom,
                                const DensitySolution& density, const FlowConfig& flow,
                                bool filter_hilbert_leading) {
  VelocityField vf;
  ComplexSeq u_reg = regular_velocity(state.grid, geom, density.omega_filtered, flow);
  const ComplexSeq& hilbert_arg = filter_hilbert_leading ? density.omega_filtered : density.omega;
  vf.u = full_velocity(state.grid, hilbert_arg, u_reg);
  normal_tangential(state, hilbert_arg, density.omega_filtered, u_reg, vf.u_n, vf.u_s);
  vf.phi_s = compute_phi_s(state, vf.u_n);
  vf.v0_hat = frame_velocity_zero_mode(state, vf.u_n, vf.phi_s);
  return vf;
}

}  // namespace stokesbi
