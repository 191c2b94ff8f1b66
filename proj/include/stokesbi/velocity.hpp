#ifndef STOKESBI_VELOCITY_HPP
#define STOKESBI_VELOCITY_HPP

#include "stokesbi/density.hpp"

namespace stokesbi {

/// Interfacial velocity data for one state. u is the fluid velocity
/// u = H_h ω + u_R; u_n and u_s come from the commutator decomposition of
/// u e^{-iθ}, never from a naive pointwise split; φ_s reparametrizes the
/// tangential motion and has zero discrete mean; v0_hat is the zero mode of
/// the frame velocity v = u_n i e^{iθ} + φ_s e^{iθ}.
struct VelocityField {
  ComplexSeq u;
  RealSeq u_n;
  RealSeq u_s;
  RealSeq phi_s;
  Complex v0_hat = 0.0;
};

/// Alternate-point part of the velocity,
/// (u_R)_i = (h/π) Σ_{(j-i) odd} (-ω^p_j G⁽¹⁾_ij + conj(ω^p_j) G⁽²⁾_ij)
///           + (Q + iB) conj(τ_i) - iG τ_i / 2,
/// evaluated with the filtered density.
ComplexSeq regular_velocity(const Grid& grid, const KernelGeometry& geom,
                            const ComplexSeq& omega_p, const FlowConfig& flow);

/// u = H_h ω + u_R, with the *unfiltered* ω in the singular part. The
/// optional filtered flag reproduces the non-analyzed variant that filters
/// the leading term too (diagnostic only).
ComplexSeq full_velocity(const Grid& grid, const ComplexSeq& omega, const ComplexSeq& u_regular,
                         HilbertMode mode = HilbertMode::cotangent_sum);

/// Commutator split of u e^{-iθ}:
/// u e^{-iθ} = H_h(ω e^{-iθ}) - [H_h, e^{-iθ}](ω^p) + u_R e^{-iθ};
/// u_n = Im, u_s = Re.
void normal_tangential(const InterfaceState& state, const ComplexSeq& omega,
                       const ComplexSeq& omega_p, const ComplexSeq& u_regular, RealSeq& u_n,
                       RealSeq& u_s, HilbertMode mode = HilbertMode::cotangent_sum);

/// φ_s = S_h^{-1}(u_n S_hθ - ⟨u_n S_hθ⟩_h).
RealSeq compute_phi_s(const InterfaceState& state, const RealSeq& u_n);

/// ⟨v⟩_h for v = u_n i e^{iθ} + φ_s e^{iθ}.
Complex frame_velocity_zero_mode(const InterfaceState& state, const RealSeq& u_n,
                                 const RealSeq& phi_s);

/// Full velocity evaluation pipeline for a solved density.
VelocityField evaluate_velocity(const InterfaceState& state, const KernelGeometry& geom,
                                const DensitySolution& density, const FlowConfig& flow,
                                bool filter_hilbert_leading = false);

}  // namespace stokesbi

#endif
