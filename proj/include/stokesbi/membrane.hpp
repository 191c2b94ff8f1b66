#ifndef STOKESBI_MEMBRANE_HPP
#define STOKESBI_MEMBRANE_HPP

#include "stokesbi/flow.hpp"
#include "stokesbi/interface_state.hpp"

namespace stokesbi {

/// Membrane constitutive parameters: bending modulus and the tension law,
/// either Hookean (backward-map stretch against an initial tension profile
/// S₀) or a constant-tension drop.
struct MembraneParams {
  enum class TensionMode { hookean, constant };

  double kappa_b = 0.0;
  TensionMode mode = TensionMode::hookean;
  RealSeq s0;           // initial tension profile at the t=0 nodes (hookean)
  double s_const = 1.0; // constant-tension value
  double sigma0 = 1.0;  // initial σ

  void validate(const Grid& grid) const;
};

/// Sherman-Lauricella forcing g and its partially filtered variant g^p (the
/// bending term's S_h² replaced by D_h²), plus the tension it was built from.
struct Forcing {
  ComplexSeq g;
  ComplexSeq g_filtered;
  RealSeq tension;
};

/// Hookean tension from the backward map,
/// S_i = σ/(σ₀ D_h α₀_i) (1 + S₀(α₀_i)) - 1,
/// with S₀ sampled at α₀(α_i) by trigonometric interpolation. Constant mode
/// ignores the map and returns S everywhere.
RealSeq tension_profile(const InterfaceState& state, const MembraneParams& params,
                        const Filter& filt, bool filtered_transport = true);

/// Assemble g_i = -(χ/2)(S_i e^{iθ_i} - (κ_B/σ²) (Dθ)_i i e^{iθ_i})
///                - β(B - iQ) conj(τ_i) - 2β H,
/// with D = S_h² for the raw forcing and D_h² for the filtered one. H is the
/// deflation function of time; it vanishes identically for a closed
/// interface of constant area and defaults to zero.
ComplexSeq assemble_forcing(const InterfaceState& state, const RealSeq& tension,
                            const FlowConfig& flow, double kappa_b, const Filter& filt,
                            bool filtered, Complex h_term = 0.0);

/// Tension + raw and filtered forcing in one pass.
Forcing build_forcing(const InterfaceState& state, const MembraneParams& params,
                      const FlowConfig& flow, const Filter& filt,
                      bool filter_forcing = true, bool filtered_transport = true,
                      Complex h_term = 0.0);

}  // namespace stokesbi

#endif
