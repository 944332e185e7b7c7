#pragma once

#include "aniso/pattern.hpp"
#include "aniso/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace aniso {

/// Periodic lattice: n^d points on [0, box)^d.
struct GridShape {
  int dim = 2;
  int n = 64;
  double box = 2.0 * std::numbers::pi;

  long total() const {
    long t = 1;
    for (int j = 0; j < dim; ++j) t *= n;
    return t;
  }
  double spacing() const { return box / n; }
  double cell_volume() const { return std::pow(spacing(), dim); }

  /// Integer frequency of the j-th coordinate of a flat index, in
  /// (-n/2, n/2].
  int freq_int(long flat, int j) const {
    for (int t = 0; t < j; ++t) flat /= n;
    const int k = static_cast<int>(flat % n);
    return (k <= n / 2) ? k : k - n;
  }
  /// Physical frequency vector xi = k / box.
  void xi(long flat, RealVector& out) const {
    out.resize(dim);
    for (int j = 0; j < dim; ++j) {
      const int k = static_cast<int>(flat % n);
      out[j] = ((k <= n / 2) ? k : k - n) / box;
      flat /= n;
    }
  }
  /// Physical point of the lattice, wrapped to [-box/2, box/2).
  void point_wrapped(long flat, RealVector& out) const {
    out.resize(dim);
    for (int j = 0; j < dim; ++j) {
      const int k = static_cast<int>(flat % n);
      out[j] = ((k <= n / 2) ? k : k - n) * spacing();
      flat /= n;
    }
  }
  bool operator==(const GridShape& o) const {
    return dim == o.dim && n == o.n && box == o.box;
  }
};

/// C^l-valued samples on a periodic lattice with a cached discrete Fourier
/// representation. Values are immutable; both representations are
/// materialized lazily from whichever one the function was built from.
///
/// Conventions: forward transform approximates
///   f-hat(xi_k) = integral f(x) e^{-2 pi i x . xi_k} dx
/// via cell_volume * FFT; frequencies are integer multiples of 1/box.
class GridFunction {
 public:
  GridFunction() = default;
  static GridFunction from_samples(GridShape shape, ComplexMatrix samples);
  static GridFunction from_spectrum(GridShape shape, ComplexMatrix spectrum);

  const GridShape& shape() const { return shape_; }
  int components() const { return components_; }
  const ComplexMatrix& samples() const;
  const ComplexMatrix& spectrum() const;

  /// Same function with the zero-frequency coefficient removed.
  GridFunction with_zero_mean() const;
  /// Circular shift by whole lattice cells.
  GridFunction translated(const std::vector<int>& cells) const;

 private:
  GridShape shape_;
  int components_ = 0;
  mutable ComplexMatrix samples_, spectrum_;
  mutable bool have_samples_ = false, have_spectrum_ = false;
};

struct TruncationWindow {
  double eps = 0.0;
  double R = 0.0;
  TruncationWindow(double eps_, double R_) : eps(eps_), R(R_) {
    if (!(0.0 < eps && eps < R))
      throw std::domain_error("TruncationWindow: need 0 < eps < R");
  }
  double log_ratio() const { return std::log(R / eps); }
};

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Riemann-sum L1/L2/max-modulus norms with cell-volume weighting; the
/// pointwise vector norm on C^l is Euclidean.
Norms norms(const GridFunction& f);

/// Builders for the experiment function families. ---------------------

/// Periodized Gaussian bump centered at `center` (lattice units), tensored
/// with the amplitude vector v; discrete mass (L1 of the scalar profile)
/// normalized to 1.
GridFunction gaussian_bump(const GridShape& shape, const RealVector& center_cells,
                           double width_cells, const ComplexVector& v);

/// Near-delta: Gaussian of width 2 lattice cells at the origin, mass 1.
GridFunction near_delta(const GridShape& shape, const ComplexVector& v);

/// Pure lattice mode e^{2 pi i k . x / box} tensored with v.
GridFunction single_mode(const GridShape& shape, const std::vector<int>& k,
                         const ComplexVector& v);

}  // namespace aniso
