#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "stokesbi/interface_state.hpp"
#include "test_util.hpp"

using namespace stokesbi;

namespace {

// Counterclockwise synthetic circle (θ = α + π/2): exercises the operators
// independently of the stored clockwise production convention.
InterfaceState unit_circle_ccw(int n, double sigma = 1.0, Complex tau_c = 0.0) {
  Grid grid(n);
  return InterfaceState(grid, RealSeq(n, kPi / 2.0), 1, sigma, RealSeq(n, 0.0), tau_c, 0.0);
}

// Clockwise circle in the production convention (θ = -α - π/2, W = -1).
InterfaceState unit_circle_cw(int n, double sigma = 1.0, Complex tau_c = 0.0) {
  Grid grid(n);
  return InterfaceState(grid, RealSeq(n, -kPi / 2.0), -1, sigma, RealSeq(n, 0.0), tau_c, 0.0);
}

}  // namespace

TEST_SUITE_BEGIN("interface");

TEST_CASE("reconstruct_tau recovers circles") {
  InterfaceState s = unit_circle_ccw(32);
  ComplexSeq tau = reconstruct_tau(s);
  for (int i = 0; i < 32; ++i)
    CHECK(std::abs(tau[i] - std::polar(1.0, s.grid.alpha(i))) < 1e-13);

  InterfaceState s2 = unit_circle_ccw(32, 2.0);
  tau = reconstruct_tau(s2);
  for (int i = 0; i < 32; ++i)
    CHECK(std::abs(tau[i] - 2.0 * std::polar(1.0, s2.grid.alpha(i))) < 1e-13);

  InterfaceState s3 = unit_circle_ccw(32, 1.0, Complex(1.0, 2.0));
  tau = reconstruct_tau(s3);
  for (int i = 0; i < 32; ++i)
    CHECK(std::abs(tau[i] - (Complex(1.0, 2.0) + std::polar(1.0, s3.grid.alpha(i)))) < 1e-13);
}

TEST_CASE("S_h of reconstructed positions returns the mean-free tangent field") {
  Grid grid(64);
  ShapeSpec shape;
  shape.kind = ShapeSpec::Kind::ellipse;
  shape.a = 1.5;
  shape.b = 0.8;
  InterfaceState s = resample_equal_arclength(shape, grid);
  ComplexSeq tau = reconstruct_tau(s);
  ComplexSeq dtau = spectral_derivative(grid, tau);
  ComplexSeq w(64);
  for (int i = 0; i < 64; ++i) w[i] = s.sigma * std::polar(1.0, s.theta(i));
  Complex mean = discrete_mean(w);
  for (int i = 0; i < 64; ++i) w[i] -= mean;
  CHECK(test_util::linf(dtau, w) < 1e-12);
}

TEST_CASE("curvature of circles") {
  InterfaceState s = unit_circle_cw(32);
  RealSeq k = curvature(s);
  for (double v : k) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));

  InterfaceState s2 = unit_circle_cw(32, 2.0);  // radius-2 circle
  k = curvature(s2);
  for (double v : k) CHECK(v == doctest::Approx(0.5).epsilon(1e-13));

  // Traversed against the convention the same circle reads as concave.
  RealSeq k_ccw = curvature(unit_circle_ccw(32));
  for (double v : k_ccw) CHECK(v == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("curvature of a resampled ellipse matches the closed form") {
  Grid grid(128);
  ShapeSpec shape;
  shape.kind = ShapeSpec::Kind::ellipse;
  shape.a = 2.0;
  shape.b = 1.0;
  InterfaceState s = resample_equal_arclength(shape, grid);
  RealSeq k = curvature(s);
  for (int i = 0; i < 128; i += 7) {
    double arc = s.sigma * (i * grid.h());
    double expect = oracles::ellipse_curvature_at_arclength(2.0, 1.0, arc);
    CHECK(std::abs(k[i] - expect) < 1e-6);
  }
}

TEST_CASE("winding number quantization") {
  Grid grid(64);
  ShapeSpec shape;
  shape.kind = ShapeSpec::Kind::fourier;
  shape.cos_modes = {{3, 0.08}};
  shape.sin_modes = {{2, -0.05}};
  InterfaceState s = resample_equal_arclength(shape, grid);
  CHECK(s.winding == -1);
  CHECK(discrete_mean(s.theta_deriv()) == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("enclosed area of reference shapes") {
  CHECK(enclosed_area(unit_circle_cw(32)) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(enclosed_area(unit_circle_cw(32, 2.0)) == doctest::Approx(4.0 * kPi).epsilon(1e-12));

  Grid grid(128);
  ShapeSpec shape;
  shape.kind = ShapeSpec::Kind::ellipse;
  shape.a = 2.0;
  shape.b = 1.0;
  InterfaceState s = resample_equal_arclength(shape, grid);
  CHECK(enclosed_area(s) == doctest::Approx(2.0 * kPi).epsilon(1e-10));
}

TEST_CASE("area is invariant under shifts and tangent-angle rotation") {
  Grid grid(64);
  ShapeSpec shape;
  shape.kind = ShapeSpec::Kind::ellipse;
  shape.a = 1.3;
  shape.b = 0.7;
  InterfaceState s = resample_equal_arclength(shape, grid);
  double base = enclosed_area(s);

  InterfaceState shifted = s;
  shifted.tau_c += Complex(-3.0, 11.5);
  CHECK(enclosed_area(shifted) == doctest::Approx(base).epsilon(1e-12));

  InterfaceState rotated = s;
  for (double& v : rotated.theta_p) v += 0.35;
  CHECK(enclosed_area(rotated) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("resampling a circle is the identity frame") {
  Grid grid(32);
  ShapeSpec shape;  // unit circle
  InterfaceState s = resample_equal_arclength(shape, grid);
  CHECK(s.winding == -1);
  CHECK(s.sigma == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(s.tau_c) < 1e-13);
  for (int i = 0; i < 32; ++i) CHECK(s.theta_p[i] == doctest::Approx(-kPi / 2.0).epsilon(1e-10));
  for (double q : s.alpha0_p) CHECK(q == 0.0);
  CHECK(chord_nonuniformity(s) < 1e-12);
}

TEST_CASE("resampled ellipse carries sigma = L / 2pi") {
  Grid grid(64);
  ShapeSpec shape;
  shape.kind = ShapeSpec::Kind::ellipse;
  shape.a = 2.0;
  shape.b = 1.0;
  InterfaceState s = resample_equal_arclength(shape, grid);
  double length = oracles::curve_perimeter(oracles::ellipse_curve(2.0, 1.0));
  CHECK(std::abs(perimeter(s) - length) < 1e-8);
  CHECK(s.sigma == doctest::Approx(length / kTwoPi).epsilon(1e-9));
}

TEST_CASE("resampled fourier shape lies on the input curve") {
  // Node positions come from the antiderivative of e^{iθ}; their distance to
  // the source curve is the spectral truncation, ~3e-4 at N = 64 and below
  // 1e-9 by N = 256 for this shape.
  Grid grid(256);
  ShapeSpec shape;
  shape.kind = ShapeSpec::Kind::fourier;
  shape.cos_modes = {{2, 0.1}, {5, 0.02}};
  shape.sin_modes = {{3, 0.07}};
  InterfaceState s = resample_equal_arclength(shape, grid);

  oracles::Curve curve;
  curve.tau = [&shape](double t) { return shape.point(t); };
  curve.dtau = [&shape](double t) { return shape.point_deriv(t); };
  curve.ddtau = [&shape](double t) {
    double eps = 1e-5;
    return (shape.point_deriv(t + eps) - shape.point_deriv(t - eps)) / (2.0 * eps);
  };
  ComplexSeq tau = reconstruct_tau(s);
  for (int i = 0; i < 256; i += 17)
    CHECK(oracles::distance_to_curve(curve, tau[i]) < 1e-8);
}

TEST_CASE("equal-arclength property holds after resampling") {
  // Chord lengths are exactly uniform on the circle; on curved shapes they
  // carry an O(h² κ²) modulation, so the chord test needs a fine grid.
  Grid fine(4096);
  ShapeSpec shape;
  shape.kind = ShapeSpec::Kind::ellipse;
  shape.a = 2.0;
  shape.b = 1.0;
  InterfaceState s = resample_equal_arclength(shape, fine);
  CHECK(chord_nonuniformity(s) < 1e-6);

  // Arc spacing itself is uniform to the resampling tolerance: at N = 256 the
  // reconstruction truncation is below 1e-9 and the nodes sit on the curve.
  Grid grid(256);
  InterfaceState resolved = resample_equal_arclength(shape, grid);
  oracles::Curve curve = oracles::ellipse_curve(2.0, 1.0);
  double length = oracles::curve_perimeter(curve);
  ComplexSeq tau = reconstruct_tau(resolved);
  for (int i = 0; i < 256; i += 9) CHECK(oracles::distance_to_curve(curve, tau[i]) < 1e-9);
  CHECK(resolved.sigma * kTwoPi == doctest::Approx(length).epsilon(1e-9));
}

TEST_CASE("degenerate shapes are rejected") {
  Grid grid(32);
  ShapeSpec bad;
  bad.kind = ShapeSpec::Kind::circle;
  bad.radius = -1.0;
  CHECK_THROWS_AS(resample_equal_arclength(bad, grid), Error);

  ShapeSpec pinched;
  pinched.kind = ShapeSpec::Kind::fourier;
  pinched.cos_modes = {{2, 1.5}};  // radius dips negative: self-intersecting
  CHECK_THROWS_AS(resample_equal_arclength(pinched, grid), Error);
}

TEST_CASE("input orientation is normalized to the clockwise frame") {
  Grid grid(32);
  for (int orientation : {1, -1}) {
    ShapeSpec shape;
    shape.orientation = orientation;
    InterfaceState s = resample_equal_arclength(shape, grid);
    CHECK(s.winding == -1);
    CHECK(discrete_mean(s.theta_deriv()) == doctest::Approx(-1.0).epsilon(1e-13));
  }
}

TEST_CASE("theta perturbation is deterministic and seeded") {
  Grid grid(64);
  ShapeSpec shape;
  InterfaceState s = resample_equal_arclength(shape, grid);
  InterfaceState p1 = perturb_theta(s, 1e-6, 42);
  InterfaceState p2 = perturb_theta(s, 1e-6, 42);
  InterfaceState p3 = perturb_theta(s, 1e-6, 43);
  CHECK(test_util::linf(p1.theta_p, p2.theta_p) == 0.0);
  CHECK(test_util::linf(p1.theta_p, p3.theta_p) > 0.0);
  CHECK(test_util::linf(p1.theta_p, s.theta_p) > 1e-8);
  CHECK(test_util::linf(p1.theta_p, s.theta_p) < 1e-3);
}

TEST_SUITE_END();
