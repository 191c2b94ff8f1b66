#ifndef STOKESBI_FLOW_HPP
#define STOKESBI_FLOW_HPP

#include "stokesbi/errors.hpp"

namespace stokesbi {

/// Far-field linear flow u∞ = [[Q, B+G/2], [B-G/2, -Q]] x and viscosity
/// contrast. β and χ are always derived from λ: β = (1-λ)/(1+λ) ∈ (-1, 1],
/// χ = 1/(1+λ) ∈ (0, 1]; matched fluids (λ = 1) give β = 0, χ = 1/2.
struct FlowConfig {
  double q = 0.0;
  double b = 0.0;
  double g = 0.0;
  double lambda = 1.0;

  FlowConfig() = default;
  FlowConfig(double q_, double b_, double g_, double lambda_) : q(q_), b(b_), g(g_), lambda(lambda_) {
    if (lambda < 0.0) throw Error(ErrorCode::invalid_input, "viscosity ratio lambda must be >= 0");
  }

  double beta() const { return (1.0 - lambda) / (1.0 + lambda); }
  double chi() const { return 1.0 / (1.0 + lambda); }
};

}  // namespace stokesbi

#endif
