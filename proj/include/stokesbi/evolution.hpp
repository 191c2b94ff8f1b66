#ifndef STOKESBI_EVOLUTION_HPP
#define STOKESBI_EVOLUTION_HPP

#include <functional>
#include <string>
#include <vector>

#include "stokesbi/velocity.hpp"

namespace stokesbi {

/// Time derivative of the interface unknowns. dtheta and dalpha0 are the
/// derivatives of the periodic parts (winding is conserved); dsigma is
/// spatially constant by construction.
struct StateDerivative {
  RealSeq dtheta;
  double dsigma = 0.0;
  RealSeq dalpha0;
  Complex dtau_c = 0.0;
};

/// Per-evaluation bookkeeping surfaced to diagnostics.
struct RhsInfo {
  double density_residual = 0.0;
  int density_iterations = 0;
  double imag_residue_alpha0 = 0.0;
  double alpha0_min_slope = 0.0;
};

/// Everything a right-hand-side evaluation needs besides the state.
struct Problem {
  MembraneParams membrane;
  FlowConfig flow;
  DensityOptions solver;
  FilterPolicy filters;
  Filter filter;

  Problem(const Grid& grid, MembraneParams m, FlowConfig f, double mu = 2.0 / 3.0)
      : membrane(std::move(m)), flow(f), filter(grid, mu) {}
};

/// One full pipeline evaluation:
/// tension → forcing (g, g^p) → density solve → u, u_n, u_s → φ_s →
///   dθ = (1/σ)(S_h u_n + φ_s S_hθ),
///   dσ = -⟨u_n S_hθ⟩_h,
///   dα₀ = Re[(D_h α₀)(φ_s - u_s) e^{iθ} / (σ e^{iθ})],
///   dτ_c = ⟨v⟩_h.
StateDerivative assemble_rhs(const InterfaceState& state, const Problem& prob,
                             RhsInfo* info = nullptr);

struct IntegratorConfig {
  enum class Scheme { rk4_explicit, imex_bending };
  Scheme scheme = Scheme::rk4_explicit;
  double dt = 0.0;          // explicit step; 0 means derive from cfl
  double cfl = 0.25;
  double t_end = 1.0;
};

/// Stability-gated default step: cfl·σ³h³/κ_B for explicit stepping of the
/// bending term, otherwise cfl·h·min(1, 1/max(|Q|,|B|,|G|, S-scale)).
double default_dt(const InterfaceState& state, const Problem& prob,
                  IntegratorConfig::Scheme scheme, double cfl);

using RhsFn = std::function<StateDerivative(const InterfaceState&)>;

/// Advance one step of size dt. rk4_explicit is the classical four-stage
/// update; imex_bending wraps the same stages in an integrating factor for
/// the frozen-coefficient symbol -(κ_B/4σ³)|k|³ acting on θ.
InterfaceState step(const InterfaceState& state, const RhsFn& rhs, const IntegratorConfig& cfg,
                    double dt, double kappa_b);

/// Per-snapshot diagnostics.
struct Diagnostics {
  double time = 0.0;
  double area = 0.0;
  double perimeter = 0.0;
  double sigma = 0.0;
  double high_mode_max = 0.0;  // max_{|kh| > μπ} |θ̂_k|
  double density_residual = 0.0;
  double alpha0_min_slope = 0.0;
  double imag_residue_alpha0 = 0.0;
};

struct Snapshot {
  double time = 0.0;
  InterfaceState state;
  Diagnostics diag;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  bool failed = false;
  std::string failure;        // error text when failed
  double last_good_time = 0.0;
};

Diagnostics compute_diagnostics(const InterfaceState& state, const Problem& prob);

/// Integrate to t_end, emitting snapshots every snapshot_interval (always at
/// t = 0 and t_end). On a runtime failure the partial trajectory is returned
/// with the failure recorded.
Trajectory run(const InterfaceState& initial, const Problem& prob, const IntegratorConfig& cfg,
               double snapshot_interval);

}  // namespace stokesbi

#endif
