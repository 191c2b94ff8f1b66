#include "stokesbi/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace stokesbi {

namespace {

// One FFTW plan pair per grid size. Planning is not thread-safe, execution
// on distinct buffers is; plans are created with FFTW_ESTIMATE so identical
// binaries produce identical transforms.
class PlanCache {
 public:
  struct Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    ~Plans() {
      if (forward) fftw_destroy_plan(forward);
      if (backward) fftw_destroy_plan(backward);
    }
  };

  static const Plans& get(int n) {
    static PlanCache cache;
    std::lock_guard<std::mutex> lock(cache.mutex_);
    auto it = cache.plans_.find(n);
    if (it == cache.plans_.end()) {
      auto plans = std::make_unique<Plans>();
      std::vector<Complex> scratch_in(n), scratch_out(n);
      auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
      auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
      plans->forward = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
      plans->backward = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
      it = cache.plans_.emplace(n, std::move(plans)).first;
    }
    return *it->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, std::unique_ptr<Plans>> plans_;
};

ComplexSeq run_fft(int n, const ComplexSeq& f, bool forward) {
  const auto& plans = PlanCache::get(n);
  ComplexSeq in(f), out(n);
  fftw_execute_dft(forward ? plans.forward : plans.backward,
                   reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

ComplexSeq to_complex(const RealSeq& f) {
  ComplexSeq c(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
  return c;
}

RealSeq real_part(const ComplexSeq& f) {
  RealSeq r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i].real();
  return r;
}

}  // namespace

ComplexSeq dft(const Grid& grid, const ComplexSeq& f) {
  require_length(grid, f.size(), "dft");
  ComplexSeq out = run_fft(grid.n(), f, /*forward=*/true);
  const double scale = 1.0 / grid.n();
  for (auto& v : out) v *= scale;
  return out;
}

ComplexSeq dft(const Grid& grid, const RealSeq& f) { return dft(grid, to_complex(f)); }

ComplexSeq idft(const Grid& grid, const ComplexSeq& fhat) {
  require_length(grid, fhat.size(), "idft");
  return run_fft(grid.n(), fhat, /*forward=*/false);
}

RealSeq idft_real(const Grid& grid, const ComplexSeq& fhat) { return real_part(idft(grid, fhat)); }

ComplexSeq spectral_derivative(const Grid& grid, const ComplexSeq& f) {
  ComplexSeq fhat = dft(grid, f);
  const int n = grid.n();
  for (int b = 0; b < n; ++b) {
    int k = grid.wavenumber(b);
    fhat[b] *= (k == n / 2) ? Complex(0.0) : Complex(0.0, k);
  }
  return idft(grid, fhat);
}

RealSeq spectral_derivative(const Grid& grid, const RealSeq& f) {
  return real_part(spectral_derivative(grid, to_complex(f)));
}

ComplexSeq filtered_derivative(const Grid& grid, const ComplexSeq& f, const Filter& filt) {
  ComplexSeq fhat = dft(grid, f);
  for (int b = 0; b < grid.n(); ++b)
    fhat[b] *= Complex(0.0, grid.wavenumber(b)) * filt.rho_bin(b);
  return idft(grid, fhat);
}

RealSeq filtered_derivative(const Grid& grid, const RealSeq& f, const Filter& filt) {
  return real_part(filtered_derivative(grid, to_complex(f), filt));
}

ComplexSeq apply_filter(const Grid& grid, const ComplexSeq& f, const Filter& filt) {
  ComplexSeq fhat = dft(grid, f);
  for (int b = 0; b < grid.n(); ++b) fhat[b] *= filt.rho_bin(b);
  return idft(grid, fhat);
}

RealSeq apply_filter(const Grid& grid, const RealSeq& f, const Filter& filt) {
  return real_part(apply_filter(grid, to_complex(f), filt));
}

ComplexSeq antiderivative(const Grid& grid, const ComplexSeq& f) {
  require_length(grid, f.size(), "antiderivative");
  Complex mean = discrete_mean(f);
  double gate = 1e-12 * std::max(1.0, l2_norm(grid, f));
  if (std::abs(mean) > gate)
    throw Error(ErrorCode::invalid_input,
                "antiderivative requires zero-mean input, |mean| = " + std::to_string(std::abs(mean)));
  ComplexSeq fhat = dft(grid, f);
  const int n = grid.n();
  for (int b = 0; b < n; ++b) {
    int k = grid.wavenumber(b);
    if (k == 0 || k == n / 2)
      fhat[b] = 0.0;
    else
      fhat[b] /= Complex(0.0, k);
  }
  return idft(grid, fhat);
}

RealSeq antiderivative(const Grid& grid, const RealSeq& f) {
  return real_part(antiderivative(grid, to_complex(f)));
}

double discrete_mean(const RealSeq& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s / static_cast<double>(f.size());
}

Complex discrete_mean(const ComplexSeq& f) {
  Complex s = 0.0;
  for (const Complex& v : f) s += v;
  return s / static_cast<double>(f.size());
}

double l2_norm(const Grid& grid, const RealSeq& f) {
  double s = 0.0;
  for (double v : f) s += v * v;
  return std::sqrt(grid.h() * s);
}

double l2_norm(const Grid& grid, const ComplexSeq& f) {
  double s = 0.0;
  for (const Complex& v : f) s += std::norm(v);
  return std::sqrt(grid.h() * s);
}

ComplexSeq hilbert_transform(const Grid& grid, const ComplexSeq& f, HilbertMode mode,
                             bool pre_zero_nyquist) {
  require_length(grid, f.size(), "hilbert_transform");
  const int n = grid.n();
  ComplexSeq input = f;
  if (pre_zero_nyquist) {
    ComplexSeq fhat = dft(grid, f);
    fhat[n / 2] = 0.0;
    input = idft(grid, fhat);
  }
  if (mode == HilbertMode::fourier_symbol) {
    ComplexSeq fhat = dft(grid, input);
    for (int b = 0; b < n; ++b) {
      int k = grid.wavenumber(b);
      if (k == 0 || k == n / 2)
        fhat[b] = 0.0;
      else
        fhat[b] *= Complex(0.0, k > 0 ? -1.0 : 1.0);
    }
    return idft(grid, fhat);
  }
  // Cotangent weights depend on (i - j) mod N only; tabulate once.
  const double h = grid.h();
  std::vector<double> w(n, 0.0);
  for (int d = 0; d < n; ++d)
    if (d % 2 != 0) w[d] = std::cos(0.5 * d * h) / std::sin(0.5 * d * h);
  ComplexSeq out(n);
  for (int i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (int j = 0; j < n; ++j) {
      int d = i - j;
      if ((d % 2 + 2) % 2 == 0) continue;
      s += input[j] * w[(d % n + n) % n];
    }
    out[i] = s * (h / kPi);
  }
  return out;
}

RealSeq hilbert_transform(const Grid& grid, const RealSeq& f, HilbertMode mode,
                          bool pre_zero_nyquist) {
  return real_part(hilbert_transform(grid, to_complex(f), mode, pre_zero_nyquist));
}

ComplexSeq hilbert_commutator(const Grid& grid, const ComplexSeq& phi, const ComplexSeq& psi,
                              HilbertMode mode) {
  require_length(grid, phi.size(), "hilbert_commutator");
  require_length(grid, psi.size(), "hilbert_commutator");
  const int n = grid.n();
  ComplexSeq prod(n);
  for (int i = 0; i < n; ++i) prod[i] = phi[i] * psi[i];
  ComplexSeq h_prod = hilbert_transform(grid, prod, mode);
  ComplexSeq h_psi = hilbert_transform(grid, psi, mode);
  ComplexSeq out(n);
  for (int i = 0; i < n; ++i) out[i] = h_prod[i] - phi[i] * h_psi[i];
  return out;
}

Complex alternate_point_sum(const Grid& grid, const std::function<Complex(int, int)>& kernel,
                            const ComplexSeq& f, int i) {
  require_length(grid, f.size(), "alternate_point_sum");
  const int n = grid.n();
  Complex s = 0.0;
  for (int j = 0; j < n; ++j) {
    if (((i - j) % 2 + 2) % 2 == 0) continue;
    Complex kij = kernel(i, j);
    if (!std::isfinite(kij.real()) || !std::isfinite(kij.imag()))
      throw Error(ErrorCode::numerical_singularity,
                  "alternate_point_sum: non-finite kernel at (i,j) = (" + std::to_string(i) +
                      "," + std::to_string(j) + ")");
    s += kij * f[j];
  }
  return s * (2.0 * grid.h());
}

ComplexSeq alternate_point_apply(const Grid& grid, const std::function<Complex(int, int)>& kernel,
                                 const ComplexSeq& f) {
  ComplexSeq out(grid.n());
  for (int i = 0; i < grid.n(); ++i) out[i] = alternate_point_sum(grid, kernel, f, i);
  return out;
}

Complex trig_interp_coeff(const Grid& grid, const ComplexSeq& fhat, double x) {
  const int n = grid.n();
  Complex s = 0.0;
  for (int b = 0; b < n; ++b) {
    int k = grid.wavenumber(b);
    s += fhat[b] * std::polar(1.0, k * x);
  }
  return s;
}

double trig_interp_coeff_real(const Grid& grid, const ComplexSeq& fhat, double x) {
  const int n = grid.n();
  double s = 0.0;
  for (int b = 0; b < n; ++b) {
    int k = grid.wavenumber(b);
    if (k == n / 2) {
      s += fhat[b].real() * std::cos(0.5 * n * x);
    } else {
      Complex e = std::polar(1.0, k * x);
      s += (fhat[b] * e).real();
    }
  }
  return s;
}

Complex trig_interp(const Grid& grid, const ComplexSeq& f, double x) {
  return trig_interp_coeff(grid, dft(grid, f), x);
}

double trig_interp(const Grid& grid, const RealSeq& f, double x) {
  return trig_interp_coeff_real(grid, dft(grid, to_complex(f)), x);
}

}  // namespace stokesbi
