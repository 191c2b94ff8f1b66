#ifndef STOKESBI_INTERFACE_STATE_HPP
#define STOKESBI_INTERFACE_STATE_HPP

#include <utility>
#include <vector>

#include "stokesbi/grid.hpp"
#include "stokesbi/spectral.hpp"

namespace stokesbi {

/// Discrete interface in the equal-arclength tangent-angle frame.
///
/// The unknowns are the 2π-periodic part of the tangent angle
/// θ(α) = W·α + p(α), the spatially constant length density σ = s_α, the
/// backward material map stored as α₀(α) = α + q(α) with q periodic, and the
/// constant Fourier mode τ_c of the position. States are immutable snapshots;
/// evolution constructs new ones.
///
/// Orientation: the stored frame traverses the interface clockwise with the
/// interior to the right, the convention the boundary-integral kernels are
/// derived in (feeding them the opposite orientation silently swaps the
/// roles of the interior and exterior fluids, λ ↔ 1/λ). Thus σ e^{iθ} =
/// ∂τ/∂α, W = -1 on a simple curve, and κ = -S_hθ/σ = +1 on the unit circle.
struct InterfaceState {
  Grid grid;
  RealSeq theta_p;   // periodic part of θ
  int winding = 1;   // W, ±1 for a simple closed curve
  double sigma = 1;  // s_α > 0
  RealSeq alpha0_p;  // periodic part of α₀(α) - α
  Complex tau_c = 0.0;
  double time = 0.0;

  InterfaceState(Grid g, RealSeq theta_periodic, int w, double s, RealSeq a0_periodic,
                 Complex tc, double t)
      : grid(g),
        theta_p(std::move(theta_periodic)),
        winding(w),
        sigma(s),
        alpha0_p(std::move(a0_periodic)),
        tau_c(tc),
        time(t) {}

  int n() const { return grid.n(); }
  double theta(int i) const { return winding * grid.alpha(i) + theta_p[i]; }

  /// Unit tangent e^{iθ} at every node.
  ComplexSeq tangent() const;

  /// S_h θ = W + S_h p.
  RealSeq theta_deriv() const;

  /// D_h α₀ = 1 + D_h q (or S_h α₀ when unfiltered transport is requested).
  RealSeq alpha0_deriv(const Filter& filt, bool filtered = true) const;

  /// Backward-map values α₀(α_i) = α_i + q_i.
  double alpha0(int i) const { return grid.alpha(i) + alpha0_p[i]; }
};

/// Node positions τ_i = τ_c + S_h^{-1}(σ e^{iθ} - ⟨σ e^{iθ}⟩_h).
ComplexSeq reconstruct_tau(const InterfaceState& state);

/// Signed curvature κ_i = -S_h θ_i / σ; +1 on the clockwise unit circle
/// (positive for convex shapes in the stored orientation).
RealSeq curvature(const InterfaceState& state);

/// Area of the enclosed region via the spectral contour integral
/// (1/2)|Im h Σ conj(τ_i) (S_h τ)_i|.
double enclosed_area(const InterfaceState& state);

/// Perimeter, 2πσ in the equal-arclength frame.
inline double perimeter(const InterfaceState& state) { return kTwoPi * state.sigma; }

/// Relative nonuniformity of the chord lengths |τ_{i+1} - τ_i|.
double chord_nonuniformity(const InterfaceState& state);

/// Analytic star-shaped closed curve r(φ) e^{iφ} (plus optional radius modes).
struct ShapeSpec {
  enum class Kind { circle, ellipse, fourier };
  struct Mode {
    int k = 0;
    double amp = 0.0;
  };

  Kind kind = Kind::circle;
  double radius = 1.0;  // circle / fourier base radius
  double a = 1.0, b = 1.0;  // ellipse semi-axes
  std::vector<Mode> cos_modes;  // fourier: r(φ) = radius (1 + Σ amp cos kφ + Σ amp sin kφ)
  std::vector<Mode> sin_modes;
  int orientation = +1;  // +1 ccw, -1 cw

  Complex point(double phi) const;
  Complex point_deriv(double phi) const;
  void validate() const;
};

/// Equal-arclength initial state for a shape: σ = L/2π, α₀ = identity,
/// nodes at uniform arclength. The cumulative arclength function is built on
/// a dense spectral grid and inverted per node by Newton iteration.
InterfaceState resample_equal_arclength(const ShapeSpec& shape, const Grid& grid);

/// Deterministic broadband perturbation of θ (mode amplitudes ~ amp), used to
/// seed tail-stability experiments. Mode phases come from a fixed splitmix64
/// stream so runs are reproducible across platforms.
InterfaceState perturb_theta(const InterfaceState& state, double amp, unsigned long long seed);

}  // namespace stokesbi

#endif
