#ifndef STOKESBI_TEST_ORACLES_HPP
#define STOKESBI_TEST_ORACLES_HPP

#include <functional>

#include "stokesbi/flow.hpp"
#include "stokesbi/grid.hpp"

// Independent reference computations used by the tests. Everything here
// discretizes the *continuous* operators (plain trapezoid with analytic
// diagonal limits, adaptive Simpson, closed forms), never the alternate-point
// scheme under test.
namespace oracles {

using stokesbi::Complex;
using stokesbi::ComplexSeq;
using stokesbi::FlowConfig;

/// Smooth closed curve with two derivatives, parametrized on [-π, π).
struct Curve {
  std::function<Complex(double)> tau;
  std::function<Complex(double)> dtau;
  std::function<Complex(double)> ddtau;
};

Curve circle_curve(double radius);
Curve ellipse_curve(double a, double b);

/// Same point set traversed in the opposite direction (t → -t).
Curve reversed(const Curve& c);

/// Continuous Sherman-Lauricella operator K applied to a density function,
/// evaluated at the given angles by composite trapezoid on dense_n nodes.
/// Includes the +σ deflation term when requested.
ComplexSeq continuous_K(const Curve& curve, const std::function<Complex(double)>& omega,
                        double sigma, bool deflation, const std::vector<double>& targets,
                        int dense_n = 4096);

/// Continuous regular velocity part (smooth kernel integral plus far-field
/// terms) for a density function.
ComplexSeq continuous_regular_velocity(const Curve& curve,
                                       const std::function<Complex(double)>& omega,
                                       const FlowConfig& flow,
                                       const std::vector<double>& targets, int dense_n = 4096);

/// Adaptive-Simpson arclength of a curve over [-π, π).
double curve_perimeter(const Curve& curve, double tol = 1e-12);

/// Closed-form ellipse curvature at a given arclength from the point (a, 0),
/// measured counterclockwise; the parameter is recovered by dense quadrature
/// plus Newton.
double ellipse_curvature_at_arclength(double a, double b, double s);

/// Distance from a point to a curve (coarse scan plus Newton refinement).
double distance_to_curve(const Curve& curve, Complex p);

}  // namespace oracles

#endif
