#ifndef STOKESBI_FILTER_HPP
#define STOKESBI_FILTER_HPP

#include <cmath>
#include <vector>

#include "stokesbi/grid.hpp"

namespace stokesbi {

/// Fourier-space cutoff ρ for dealiasing.
///
/// ρ is even, C^3, equal to 1 on |x| <= μπ and drops to ρ(π) = ρ'(π) = 0
/// through an order-3 smoothstep complement on the remaining band. Values at
/// the grid wavenumbers ρ(kh) are tabulated once per grid since every
/// filtered operator hits them.
class Filter {
 public:
  Filter(const Grid& grid, double mu = 2.0 / 3.0) : mu_(mu) {
    if (!(mu > 0.0 && mu < 1.0))
      throw Error(ErrorCode::invalid_input, "filter cutoff mu must lie in (0,1)");
    table_.resize(grid.n());
    for (int b = 0; b < grid.n(); ++b)
      table_[b] = rho(grid.wavenumber(b) * grid.h());
  }

  double mu() const { return mu_; }

  /// Taper profile on [-π, π].
  double rho(double x) const {
    double ax = std::abs(x);
    if (ax <= mu_ * kPi) return 1.0;
    if (ax >= kPi) return 0.0;
    double s = (ax - mu_ * kPi) / ((1.0 - mu_) * kPi);
    double s2 = s * s;
    return 1.0 - s2 * s2 * (35.0 - 84.0 * s + 70.0 * s2 - 20.0 * s2 * s);
  }

  /// Cached ρ(kh) for transform bin b of the grid this filter was built for.
  double rho_bin(int b) const { return table_[b]; }

  int table_size() const { return static_cast<int>(table_.size()); }

 private:
  double mu_;
  std::vector<double> table_;
};

/// Where the dealiasing filter is applied. The analyzed scheme uses exactly
/// three sites: the bending term of the forcing (g^p), the density inside the
/// regular kernels and commutator (ω^p), and the backward-map derivative
/// (D_h α₀). Filtering the leading H_h ω term as well is *not* part of the
/// analyzed method and is exposed only for diagnostics.
struct FilterPolicy {
  bool forcing = true;
  bool density_kernels = true;
  bool tension_transport = true;
  bool hilbert_leading = false;

  bool analyzed() const { return !hilbert_leading; }
};

}  // namespace stokesbi

#endif
