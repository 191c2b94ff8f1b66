#ifndef STOKESBI_GRID_HPP
#define STOKESBI_GRID_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "stokesbi/errors.hpp"

namespace stokesbi {

using Complex = std::complex<double>;
using RealSeq = std::vector<double>;
using ComplexSeq = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform periodic grid with N nodes, mesh h = 2π/N.
///
/// Sequences are stored in FFT-natural order: storage slot i holds the node
/// at angle i*h (mod 2π). alpha(i) reports that node wrapped to (-π, π], so
/// the node set is α_j = j*h for j = -N/2+1, ..., N/2. The Fourier band is
/// the matching asymmetric one, k = -N/2+1, ..., N/2; bin b of a transform
/// carries k = b for b <= N/2 and k = b - N otherwise.
class Grid {
 public:
  explicit Grid(int n_points) : n_(n_points) {
    if (n_ < 8 || n_ % 2 != 0)
      throw Error(ErrorCode::invalid_input, "grid size must be even and >= 8, got " + std::to_string(n_));
    h_ = kTwoPi / n_;
  }

  int n() const { return n_; }
  double h() const { return h_; }

  /// Node angle in (-π, π].
  double alpha(int i) const {
    double a = i * h_;
    return a > kPi ? a - kTwoPi : a;
  }

  /// Signed Fourier index of transform bin b (0-based), in [-N/2+1, N/2].
  int wavenumber(int b) const { return b <= n_ / 2 ? b : b - n_; }

  RealSeq nodes() const {
    RealSeq a(n_);
    for (int i = 0; i < n_; ++i) a[i] = alpha(i);
    return a;
  }

  bool operator==(const Grid& o) const { return n_ == o.n_; }

 private:
  int n_;
  double h_;
};

inline void require_length(const Grid& grid, std::size_t len, const char* who) {
  if (static_cast<int>(len) != grid.n())
    throw Error(ErrorCode::invalid_input,
                std::string(who) + ": sequence length " + std::to_string(len) +
                    " does not match grid size " + std::to_string(grid.n()));
}

}  // namespace stokesbi

#endif
