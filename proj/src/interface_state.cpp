#include "stokesbi/interface_state.hpp"

#include <algorithm>
#include <cmath>

namespace stokesbi {

ComplexSeq InterfaceState::tangent() const {
  ComplexSeq t(n());
  for (int i = 0; i < n(); ++i) t[i] = std::polar(1.0, theta(i));
  return t;
}

RealSeq InterfaceState::theta_deriv() const {
  RealSeq d = spectral_derivative(grid, theta_p);
  for (double& v : d) v += winding;
  return d;
}

RealSeq InterfaceState::alpha0_deriv(const Filter& filt, bool filtered) const {
  RealSeq d = filtered ? filtered_derivative(grid, alpha0_p, filt)
                       : spectral_derivative(grid, alpha0_p);
  for (double& v : d) v += 1.0;
  return d;
}

ComplexSeq reconstruct_tau(const InterfaceState& state) {
  const int n = state.n();
  ComplexSeq w(n);
  for (int i = 0; i < n; ++i) w[i] = state.sigma * std::polar(1.0, state.theta(i));
  Complex mean = discrete_mean(w);
  for (auto& v : w) v -= mean;
  ComplexSeq tau = antiderivative(state.grid, w);
  for (auto& v : tau) v += state.tau_c;
  return tau;
}

RealSeq curvature(const InterfaceState& state) {
  if (state.sigma <= 0.0)
    throw Error(ErrorCode::frame_collapse, "curvature: sigma must be positive");
  RealSeq k = state.theta_deriv();
  for (double& v : k) v /= -state.sigma;
  return k;
}

double enclosed_area(const InterfaceState& state) {
  ComplexSeq tau = reconstruct_tau(state);
  ComplexSeq dtau = spectral_derivative(state.grid, tau);
  double s = 0.0;
  for (int i = 0; i < state.n(); ++i) s += (std::conj(tau[i]) * dtau[i]).imag();
  return 0.5 * std::abs(s * state.grid.h());
}

double chord_nonuniformity(const InterfaceState& state) {
  ComplexSeq tau = reconstruct_tau(state);
  const int n = state.n();
  RealSeq chord(n);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    chord[i] = std::abs(tau[(i + 1) % n] - tau[i]);
    mean += chord[i];
  }
  mean /= n;
  double worst = 0.0;
  for (double c : chord) worst = std::max(worst, std::abs(c - mean));
  return worst / mean;
}

Complex ShapeSpec::point(double phi) const {
  double p = orientation >= 0 ? phi : -phi;
  switch (kind) {
    case Kind::circle:
      return radius * Complex(std::cos(p), std::sin(p));
    case Kind::ellipse:
      return Complex(a * std::cos(p), b * std::sin(p));
    case Kind::fourier: {
      double r = 1.0;
      for (const Mode& m : cos_modes) r += m.amp * std::cos(m.k * p);
      for (const Mode& m : sin_modes) r += m.amp * std::sin(m.k * p);
      return radius * r * Complex(std::cos(p), std::sin(p));
    }
  }
  return 0.0;
}

Complex ShapeSpec::point_deriv(double phi) const {
  double sgn = orientation >= 0 ? 1.0 : -1.0;
  double p = sgn * phi;
  switch (kind) {
    case Kind::circle:
      return sgn * radius * Complex(-std::sin(p), std::cos(p));
    case Kind::ellipse:
      return sgn * Complex(-a * std::sin(p), b * std::cos(p));
    case Kind::fourier: {
      double r = 1.0, dr = 0.0;
      for (const Mode& m : cos_modes) {
        r += m.amp * std::cos(m.k * p);
        dr -= m.amp * m.k * std::sin(m.k * p);
      }
      for (const Mode& m : sin_modes) {
        r += m.amp * std::sin(m.k * p);
        dr += m.amp * m.k * std::cos(m.k * p);
      }
      Complex e(std::cos(p), std::sin(p));
      return sgn * radius * (dr * e + r * Complex(0.0, 1.0) * e);
    }
  }
  return 0.0;
}

void ShapeSpec::validate() const {
  if (kind == Kind::circle && radius <= 0.0)
    throw Error(ErrorCode::invalid_shape, "circle radius must be positive");
  if (kind == Kind::ellipse && (a <= 0.0 || b <= 0.0))
    throw Error(ErrorCode::invalid_shape, "ellipse semi-axes must be positive");
  if (kind == Kind::fourier) {
    if (radius <= 0.0) throw Error(ErrorCode::invalid_shape, "fourier base radius must be positive");
    // Star-shaped curves are simple iff the radius stays positive.
    const int probes = 4096;
    for (int i = 0; i < probes; ++i) {
      double p = kTwoPi * i / probes;
      double r = 1.0;
      for (const Mode& m : cos_modes) r += m.amp * std::cos(m.k * p);
      for (const Mode& m : sin_modes) r += m.amp * std::sin(m.k * p);
      if (r <= 0.0)
        throw Error(ErrorCode::invalid_shape, "fourier radius profile is non-positive; shape self-intersects");
    }
  }
  if (orientation != 1 && orientation != -1)
    throw Error(ErrorCode::invalid_shape, "orientation must be +1 or -1");
}

namespace {

// Cumulative arclength of a shape, s(φ) = ∫_0^φ |c'|, built spectrally on a
// dense grid so it can be evaluated (and Newton-inverted) anywhere.
class ArclengthMap {
 public:
  ArclengthMap(const ShapeSpec& shape, int dense_n) : shape_(shape), grid_(dense_n) {
    RealSeq speed(dense_n);
    for (int m = 0; m < dense_n; ++m) speed[m] = std::abs(shape.point_deriv(m * grid_.h()));
    mean_speed_ = discrete_mean(speed);
    RealSeq fluct = speed;
    for (double& v : fluct) v -= mean_speed_;
    periodic_hat_ = dft(grid_, antiderivative(grid_, fluct));
    s0_ = trig_interp_coeff_real(grid_, periodic_hat_, 0.0);
  }

  double total() const { return kTwoPi * mean_speed_; }

  double s(double phi) const {
    return mean_speed_ * phi + trig_interp_coeff_real(grid_, periodic_hat_, phi) - s0_;
  }

  /// Invert s(φ) = target by Newton; s' = |c'| > 0 keeps it monotone.
  double invert(double target) const {
    double phi = target / mean_speed_;
    for (int it = 0; it < 100; ++it) {
      double res = s(phi) - target;
      double slope = std::abs(shape_.point_deriv(phi));
      if (slope <= 0.0)
        throw Error(ErrorCode::invalid_shape, "degenerate parametrization: |c'(phi)| = 0");
      double step = res / slope;
      phi -= step;
      if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(phi))) return phi;
    }
    throw Error(ErrorCode::resampling_failure, "arclength inversion did not converge");
  }

 private:
  const ShapeSpec& shape_;
  Grid grid_;
  double mean_speed_ = 0.0;
  double s0_ = 0.0;
  ComplexSeq periodic_hat_;
};

}  // namespace

InterfaceState resample_equal_arclength(const ShapeSpec& shape, const Grid& grid) {
  shape.validate();
  // The boundary-integral kernels assume the clockwise traversal of the
  // interface (interior to the right); normalize the parametrization so the
  // stored frame always winds clockwise, whatever the input orientation.
  ShapeSpec cw = shape;
  cw.orientation = -1;
  const int n = grid.n();
  const int dense_n = std::max(4096, 8 * n);
  ArclengthMap arc(cw, dense_n);
  const double length = arc.total();
  const double sigma = length / kTwoPi;

  auto wrap_pi = [](double d) {
    while (d > kPi) d -= kTwoPi;
    while (d <= -kPi) d += kTwoPi;
    return d;
  };

  RealSeq theta_unwrapped(n);
  ComplexSeq tau(n);
  double prev_angle = 0.0;
  for (int m = 0; m < n; ++m) {
    double phi = (m == 0) ? 0.0 : arc.invert(m * grid.h() * sigma);
    tau[m] = cw.point(phi);
    double angle = std::arg(cw.point_deriv(phi));
    theta_unwrapped[m] = (m == 0) ? angle : theta_unwrapped[m - 1] + wrap_pi(angle - prev_angle);
    prev_angle = angle;
  }

  // Winding number: unwrapped turn across the nodes plus the closing step
  // back to node 0 must total 2πW.
  double closing = wrap_pi(std::arg(cw.point_deriv(0.0)) - prev_angle);
  double total_turn = theta_unwrapped[n - 1] + closing - theta_unwrapped[0];
  int w = static_cast<int>(std::round(total_turn / kTwoPi));
  if (w != 1 && w != -1)
    throw Error(ErrorCode::invalid_shape, "resampled curve has winding " + std::to_string(w));

  RealSeq theta_p(n);
  for (int m = 0; m < n; ++m) theta_p[m] = theta_unwrapped[m] - w * (m * grid.h());

  InterfaceState state(grid, std::move(theta_p), w, sigma, RealSeq(n, 0.0),
                       discrete_mean(tau), 0.0);
  return state;
}

namespace {
double splitmix_unit(unsigned long long& x) {
  x += 0x9E3779B97F4A7C15ull;
  unsigned long long z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}
}  // namespace

InterfaceState perturb_theta(const InterfaceState& state, double amp, unsigned long long seed) {
  if (amp == 0.0) return state;
  const int n = state.n();
  unsigned long long x = seed;
  RealSeq noise(n, 0.0);
  for (int k = 1; k < n / 2; ++k) {
    double u = 2.0 * splitmix_unit(x) - 1.0;
    double v = 2.0 * splitmix_unit(x) - 1.0;
    for (int i = 0; i < n; ++i) {
      double a = k * (i * state.grid.h());
      noise[i] += amp * (u * std::cos(a) + v * std::sin(a));
    }
  }
  InterfaceState out = state;
  for (int i = 0; i < n; ++i) out.theta_p[i] += noise[i];
  return out;
}

}  // namespace stokesbi
