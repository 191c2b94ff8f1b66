#ifndef STOKESBI_DENSITY_HPP
#define STOKESBI_DENSITY_HPP

#include "stokesbi/membrane.hpp"

namespace stokesbi {

/// Node data shared by every boundary-integral kernel: positions τ_i and
/// S_h τ_i, which the discrete scheme takes as σ e^{iθ_i} directly.
struct KernelGeometry {
  ComplexSeq tau;
  ComplexSeq dtau;  // σ e^{iθ}
  double sigma = 1.0;
};

KernelGeometry kernel_geometry(const InterfaceState& state);

struct DensityOptions {
  double tol = 1e-13;
  int max_iter = 200;
  // Switch straight to the dense solve at strong contrast; successive
  // approximation is only proven for small β.
  double direct_beta_threshold = 0.5;
  int stagnation_limit = 5;
  // Add the +σ deflation term to the kernel. It removes the λ→0 rank
  // deficiency and vanishes on densities with zero loop integral, but it
  // inflates ||K|| (and the contraction factor) on generic inputs, so it is
  // off by default and switched on for near-inviscid interiors.
  bool deflation = false;
};

struct DensitySolution {
  ComplexSeq omega_tilde;     // ω̃
  ComplexSeq omega;           // ω = ω̃ + g
  ComplexSeq omega_filtered;  // ω^p = ω̃ + g^p
  double residual = 0.0;      // ||(I + βK) ω̃ + βK g^p||_l2 of the accepted iterate
  int iterations = 0;
  enum class Method { none, fixed_point, direct } method = Method::none;
};

/// Apply the discrete operator K (complex form):
/// (K w)_i = Σ_{(j-i) odd} [K_R^(1) w_j + (K_R^(2) + i K_I^(2)) conj(w_j)] (2h)
/// with K_R^(1) = (1/π) Im(S_hτ_j/(τ_j-τ_i)) + σ (the σ only with deflation)
/// and K_R^(2) + i K_I^(2) = (1/2πi)(S_hτ_j/conj(d) - d conj(S_hτ_j)/conj(d)²).
ComplexSeq apply_K(const Grid& grid, const KernelGeometry& geom, const ComplexSeq& w,
                   bool deflation = true);

/// Solve (I + βK) ω̃ = -βK g^p by successive approximation from ω̃ = 0, with
/// a dense direct fallback on stagnation or at strong contrast, and assemble
/// ω = ω̃ + g, ω^p = ω̃ + g^p.
DensitySolution solve_density(const InterfaceState& state, const Forcing& forcing,
                              const FlowConfig& flow, const DensityOptions& opts = {});

}  // namespace stokesbi

#endif
