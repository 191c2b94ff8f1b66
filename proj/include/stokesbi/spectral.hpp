#ifndef STOKESBI_SPECTRAL_HPP
#define STOKESBI_SPECTRAL_HPP

#include <functional>

#include "stokesbi/filter.hpp"
#include "stokesbi/grid.hpp"

namespace stokesbi {

// Periodic spectral calculus on grid sequences. All functions are pure and
// safe to call concurrently. Transform bins follow Grid::wavenumber.

/// Discrete Fourier transform, f̂_k = (1/N) Σ_j f_j e^{-ikα_j}.
ComplexSeq dft(const Grid& grid, const ComplexSeq& f);
ComplexSeq dft(const Grid& grid, const RealSeq& f);

/// Inverse transform, f_j = Σ_k f̂_k e^{ikα_j}.
ComplexSeq idft(const Grid& grid, const ComplexSeq& fhat);
RealSeq idft_real(const Grid& grid, const ComplexSeq& fhat);

/// Pseudo-spectral derivative S_h: multiply by ik, zero the k = N/2 mode.
ComplexSeq spectral_derivative(const Grid& grid, const ComplexSeq& f);
RealSeq spectral_derivative(const Grid& grid, const RealSeq& f);

/// Filtered derivative D_h: multiply by ik ρ(kh) over the whole band.
ComplexSeq filtered_derivative(const Grid& grid, const ComplexSeq& f, const Filter& filt);
RealSeq filtered_derivative(const Grid& grid, const RealSeq& f, const Filter& filt);

/// Fourier-space filtering f → f^p, coefficients scaled by ρ(kh).
ComplexSeq apply_filter(const Grid& grid, const ComplexSeq& f, const Filter& filt);
RealSeq apply_filter(const Grid& grid, const RealSeq& f, const Filter& filt);

/// Pseudo-spectral antiderivative S_h^{-1}: divide by ik for k ≠ 0, zero the
/// k = 0 and k = N/2 modes. Requires zero discrete mean (relative gate
/// 1e-12 · max(1, ||f||_l2)).
ComplexSeq antiderivative(const Grid& grid, const ComplexSeq& f);
RealSeq antiderivative(const Grid& grid, const RealSeq& f);

/// Trapezoid-rule mean (1/N) Σ_j f_j.
double discrete_mean(const RealSeq& f);
Complex discrete_mean(const ComplexSeq& f);

/// l² norm, ||f||² = h Σ |f_j|².
double l2_norm(const Grid& grid, const RealSeq& f);
double l2_norm(const Grid& grid, const ComplexSeq& f);

enum class HilbertMode {
  cotangent_sum,   // alternate-point quadrature, the analyzed form
  fourier_symbol,  // -i sgn(k), with the k=0 and k=N/2 modes annihilated
};

/// Discrete Hilbert transform H_h.
///
/// The default cotangent-sum form is (h/π) Σ_{(j-i) odd} f_j cot((α_i-α_j)/2);
/// it annihilates the k=0 and k=N/2 modes and agrees with the Fourier symbol
/// on everything else. pre_zero_nyquist additionally strips the input's N/2
/// content before the quadrature.
ComplexSeq hilbert_transform(const Grid& grid, const ComplexSeq& f,
                             HilbertMode mode = HilbertMode::cotangent_sum,
                             bool pre_zero_nyquist = false);
RealSeq hilbert_transform(const Grid& grid, const RealSeq& f,
                          HilbertMode mode = HilbertMode::cotangent_sum,
                          bool pre_zero_nyquist = false);

/// Commutator [H_h, φ](ψ) = H_h(φψ) - φ H_h(ψ).
ComplexSeq hilbert_commutator(const Grid& grid, const ComplexSeq& phi, const ComplexSeq& psi,
                              HilbertMode mode = HilbertMode::cotangent_sum);

/// Alternate-point trapezoidal rule at target i:
/// Σ_{(j-i) odd} K(i,j) f_j (2h), summed in ascending j for bit-stable output.
/// Throws numerical_singularity if the kernel is non-finite at an included pair.
Complex alternate_point_sum(const Grid& grid, const std::function<Complex(int, int)>& kernel,
                            const ComplexSeq& f, int i);

/// Full alternate-point quadrature of a kernel against f, all rows.
ComplexSeq alternate_point_apply(const Grid& grid, const std::function<Complex(int, int)>& kernel,
                                 const ComplexSeq& f);

/// Trigonometric interpolation of grid samples at an arbitrary angle.
/// For real data the N/2 term is taken as f̂ cos((N/2)x) so values stay real.
double trig_interp(const Grid& grid, const RealSeq& f, double x);
Complex trig_interp(const Grid& grid, const ComplexSeq& f, double x);

/// Same, from precomputed coefficients (dft output) — one transform, many
/// evaluation points.
double trig_interp_coeff_real(const Grid& grid, const ComplexSeq& fhat, double x);
Complex trig_interp_coeff(const Grid& grid, const ComplexSeq& fhat, double x);

}  // namespace stokesbi

#endif
