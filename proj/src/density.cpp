#include "stokesbi/density.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace stokesbi {

KernelGeometry kernel_geometry(const InterfaceState& state) {
  KernelGeometry geom;
  geom.tau = reconstruct_tau(state);
  geom.dtau.resize(state.n());
  for (int i = 0; i < state.n(); ++i)
    geom.dtau[i] = state.sigma * std::polar(1.0, state.theta(i));
  geom.sigma = state.sigma;
  return geom;
}

namespace {

constexpr Complex kInvTwoPiI{0.0, -1.0 / kTwoPi};  // 1/(2πi) = -i/(2π)

struct KernelEntry {
  double kr1;
  Complex c2;  // K_R^(2) + i K_I^(2)
};

inline KernelEntry kernel_entry(const KernelGeometry& geom, int i, int j, bool deflation) {
  Complex d = geom.tau[j] - geom.tau[i];
  if (d == Complex(0.0, 0.0))
    throw Error(ErrorCode::geometry_degeneracy,
                "coincident interface nodes " + std::to_string(i) + ", " + std::to_string(j));
  KernelEntry e;
  e.kr1 = (geom.dtau[j] / d).imag() / kPi + (deflation ? geom.sigma : 0.0);
  Complex cd = std::conj(d);
  e.c2 = kInvTwoPiI * (geom.dtau[j] / cd - d * std::conj(geom.dtau[j]) / (cd * cd));
  return e;
}

}  // namespace

ComplexSeq apply_K(const Grid& grid, const KernelGeometry& geom, const ComplexSeq& w,
                   bool deflation) {
  require_length(grid, w.size(), "apply_K");
  require_length(grid, geom.tau.size(), "apply_K geometry");
  const int n = grid.n();
  const double two_h = 2.0 * grid.h();
  ComplexSeq out(n);
  for (int i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (int j = (i % 2 == 0) ? 1 : 0; j < n; j += 2) {
      KernelEntry e = kernel_entry(geom, i, j, deflation);
      s += e.kr1 * w[j] + e.c2 * std::conj(w[j]);
    }
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw Error(ErrorCode::geometry_degeneracy,
                  "non-finite kernel sum at row " + std::to_string(i));
    out[i] = s * two_h;
  }
  return out;
}

namespace {

// Dense 2N x 2N real system for the direct fallback, unknowns stacked
// [Re ω̃; Im ω̃].
DensitySolution solve_direct(const Grid& grid, const KernelGeometry& geom, double beta,
                             const ComplexSeq& gp, const DensityOptions& opts) {
  const int n = grid.n();
  const double two_h = 2.0 * grid.h();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = (i % 2 == 0) ? 1 : 0; j < n; j += 2) {
      KernelEntry e = kernel_entry(geom, i, j, opts.deflation);
      double w = beta * two_h;
      m(i, j) += w * (e.kr1 + e.c2.real());
      m(i, j + n) += w * e.c2.imag();
      m(i + n, j) += w * e.c2.imag();
      m(i + n, j + n) += w * (e.kr1 - e.c2.real());
    }
  }
  ComplexSeq k_gp = apply_K(grid, geom, gp, opts.deflation);
  Eigen::VectorXd rhs(2 * n);
  for (int i = 0; i < n; ++i) {
    rhs(i) = -beta * k_gp[i].real();
    rhs(i + n) = -beta * k_gp[i].imag();
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  Eigen::VectorXd x = lu.solve(rhs);

  auto certify = [&](const Eigen::VectorXd& candidate) {
    DensitySolution sol;
    sol.method = DensitySolution::Method::direct;
    sol.omega_tilde.resize(n);
    for (int i = 0; i < n; ++i) sol.omega_tilde[i] = Complex(candidate(i), candidate(i + n));
    ComplexSeq k_sum = apply_K(grid, geom, sol.omega_tilde, opts.deflation);
    ComplexSeq r(n);
    for (int i = 0; i < n; ++i) r[i] = sol.omega_tilde[i] + beta * (k_sum[i] + k_gp[i]);
    sol.residual = l2_norm(grid, r);
    return sol;
  };

  const double scale = std::max(1.0, l2_norm(grid, gp));
  if (x.allFinite()) {
    DensitySolution sol = certify(x);
    if (sol.residual <= 1e-6 * scale) return sol;
  }

  // The exactly-inviscid limit β = 1 leaves the deflated system with a small
  // null space whose density components generate no velocity; the
  // minimum-norm least-squares solution is the physical one there.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
  cod.setThreshold(1e-10);
  Eigen::VectorXd x2 = cod.solve(rhs);
  if (x2.allFinite()) {
    DensitySolution sol = certify(x2);
    if (sol.residual <= 1e-6 * scale) return sol;
    throw Error(ErrorCode::solver_failure,
                "direct density solve residual " + std::to_string(sol.residual) +
                    " too large, rank = " + std::to_string(cod.rank()) + "/" +
                    std::to_string(2 * n) + ", rcond = " + std::to_string(lu.rcond()));
  }
  throw Error(ErrorCode::solver_failure,
              "direct density solve produced non-finite values, rcond = " +
                  std::to_string(lu.rcond()));
}

}  // namespace

DensitySolution solve_density(const InterfaceState& state, const Forcing& forcing,
                              const FlowConfig& flow, const DensityOptions& opts) {
  const Grid& grid = state.grid;
  const int n = grid.n();
  const double beta = flow.beta();
  if (beta > 1.0 || beta <= -1.0)
    throw Error(ErrorCode::invalid_input, "solve_density requires beta in (-1, 1]");

  DensitySolution sol;
  if (beta == 0.0) {
    sol.omega_tilde.assign(n, Complex(0.0));
    sol.omega = forcing.g;
    sol.omega_filtered = forcing.g_filtered;
    sol.method = DensitySolution::Method::none;
    return sol;
  }

  KernelGeometry geom = kernel_geometry(state);
  const ComplexSeq& gp = forcing.g_filtered;
  const double scale = std::max(1.0, l2_norm(grid, gp));

  bool use_direct = std::abs(beta) >= opts.direct_beta_threshold;
  if (!use_direct) {
    ComplexSeq omega_tilde(n, Complex(0.0));
    ComplexSeq work(n);
    double prev_res = std::numeric_limits<double>::infinity();
    int stagnant = 0;
    for (int it = 0; it < opts.max_iter; ++it) {
      for (int i = 0; i < n; ++i) work[i] = omega_tilde[i] + gp[i];
      ComplexSeq kv = apply_K(grid, geom, work, opts.deflation);
      ComplexSeq r(n);
      for (int i = 0; i < n; ++i) r[i] = omega_tilde[i] + beta * kv[i];
      double res = l2_norm(grid, r);
      if (res <= opts.tol * scale) {
        sol.omega_tilde = std::move(omega_tilde);
        sol.residual = res;
        sol.iterations = it;
        sol.method = DensitySolution::Method::fixed_point;
        break;
      }

      if (!std::isfinite(res) || res >= prev_res) {
        if (++stagnant >= opts.stagnation_limit) break;
      } else {
        stagnant = 0;
      }
      prev_res = res;
      for (int i = 0; i < n; ++i) omega_tilde[i] = -beta * kv[i];
      sol.iterations = it + 1;
    }
    if (sol.method != DensitySolution::Method::fixed_point) use_direct = true;
  }

  if (use_direct) {
    int fp_iterations = sol.iterations;
    sol = solve_direct(grid, geom, beta, gp, opts);
    sol.iterations = fp_iterations;
  }

  sol.omega.resize(n);
  sol.omega_filtered.resize(n);
  for (int i = 0; i < n; ++i) {
    sol.omega[i] = sol.omega_tilde[i] + forcing.g[i];
    sol.omega_filtered[i] = sol.omega_tilde[i] + forcing.g_filtered[i];
  }
  return sol;
}

}  // namespace stokesbi
