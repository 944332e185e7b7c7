#include "aniso/grid.hpp"

#include "aniso/numerics.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace aniso {

namespace {

// In-place d-dimensional complex FFT along every axis, one column
// (= component) at a time. `inverse` applies Eigen's scaled inverse; the
// physical normalization is applied by the callers.
void fft_nd(ComplexMatrix& data, const GridShape& shape, bool inverse) {
  Eigen::FFT<double> fft;
  const int n = shape.n;
  const long total = shape.total();
  std::vector<Complex> line(n), transformed(n);
  for (int c = 0; c < data.cols(); ++c) {
    Complex* col = data.col(c).data();
    long stride = 1;
    for (int axis = 0; axis < shape.dim; ++axis) {
      const long block = stride * n;
      for (long start = 0; start < total; start += block) {
        for (long offset = 0; offset < stride; ++offset) {
          Complex* base = col + start + offset;
          for (int t = 0; t < n; ++t) line[t] = base[t * stride];
          if (inverse) {
            fft.inv(transformed, line);
          } else {
            fft.fwd(transformed, line);
          }
          for (int t = 0; t < n; ++t) base[t * stride] = transformed[t];
        }
      }
      stride *= n;
    }
  }
}

}  // namespace

GridFunction GridFunction::from_samples(GridShape shape, ComplexMatrix samples) {
  if (samples.rows() != shape.total())
    throw std::domain_error("GridFunction: sample count does not match the lattice");
  if (samples.cols() < 1) throw std::domain_error("GridFunction: no components");
  GridFunction f;
  f.shape_ = shape;
  f.components_ = static_cast<int>(samples.cols());
  f.samples_ = std::move(samples);
  f.have_samples_ = true;
  return f;
}

GridFunction GridFunction::from_spectrum(GridShape shape, ComplexMatrix spectrum) {
  if (spectrum.rows() != shape.total())
    throw std::domain_error("GridFunction: spectrum size does not match the lattice");
  if (spectrum.cols() < 1) throw std::domain_error("GridFunction: no components");
  GridFunction f;
  f.shape_ = shape;
  f.components_ = static_cast<int>(spectrum.cols());
  f.spectrum_ = std::move(spectrum);
  f.have_spectrum_ = true;
  return f;
}

const ComplexMatrix& GridFunction::samples() const {
  if (!have_samples_) {
    samples_ = spectrum_;
    fft_nd(samples_, shape_, /*inverse=*/true);
    samples_ *= static_cast<double>(shape_.total()) / std::pow(shape_.box, shape_.dim);
    have_samples_ = true;
  }
  return samples_;
}

const ComplexMatrix& GridFunction::spectrum() const {
  if (!have_spectrum_) {
    spectrum_ = samples_;
    fft_nd(spectrum_, shape_, /*inverse=*/false);
    spectrum_ *= shape_.cell_volume();
    have_spectrum_ = true;
  }
  return spectrum_;
}

GridFunction GridFunction::with_zero_mean() const {
  ComplexMatrix spec = spectrum();
  spec.row(0).setZero();  // flat index 0 is the zero frequency
  return from_spectrum(shape_, std::move(spec));
}

GridFunction GridFunction::translated(const std::vector<int>& cells) const {
  if (static_cast<int>(cells.size()) != shape_.dim)
    throw std::domain_error("GridFunction::translated: shift arity mismatch");
  const ComplexMatrix& src = samples();
  ComplexMatrix dst(src.rows(), src.cols());
  const int n = shape_.n;
  std::vector<long> strides(shape_.dim);
  long s = 1;
  for (int j = 0; j < shape_.dim; ++j) {
    strides[j] = s;
    s *= n;
  }
  for (long idx = 0; idx < src.rows(); ++idx) {
    long rem = idx, dest = 0;
    for (int j = 0; j < shape_.dim; ++j) {
      const int k = static_cast<int>(rem % n);
      rem /= n;
      const int shifted = ((k + cells[j]) % n + n) % n;
      dest += shifted * strides[j];
    }
    dst.row(dest) = src.row(idx);
  }
  return from_samples(shape_, std::move(dst));
}

Norms norms(const GridFunction& f) {
  const ComplexMatrix& s = f.samples();
  CompensatedSum<double> l1, l2sq;
  double linf = 0.0;
  for (long i = 0; i < s.rows(); ++i) {
    const double r = s.row(i).norm();
    l1.add(r);
    l2sq.add(r * r);
    linf = std::max(linf, r);
  }
  const double vol = f.shape().cell_volume();
  Norms out;
  out.l1 = vol * l1.value();
  out.l2 = std::sqrt(vol * l2sq.value());
  out.linf = linf;
  return out;
}

GridFunction gaussian_bump(const GridShape& shape, const RealVector& center_cells,
                           double width_cells, const ComplexVector& v) {
  if (center_cells.size() != shape.dim)
    throw std::domain_error("gaussian_bump: center arity mismatch");
  if (!(width_cells > 0)) throw std::domain_error("gaussian_bump: width must be positive");
  const double h = shape.spacing();
  const double s = width_cells * h;
  const long total = shape.total();
  Eigen::VectorXd profile(total);
  CompensatedSum<double> mass;
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    double q = 0.0;
    for (int j = 0; j < shape.dim; ++j) {
      const int k = static_cast<int>(rem % shape.n);
      rem /= shape.n;
      double dx = (k - center_cells[j]) * h;
      // minimal periodic image
      dx -= shape.box * std::round(dx / shape.box);
      q += dx * dx;
    }
    profile[idx] = std::exp(-q / (2.0 * s * s));
    mass.add(profile[idx]);
  }
  profile /= mass.value() * shape.cell_volume();
  ComplexMatrix samples(total, v.size());
  for (int c = 0; c < v.size(); ++c) samples.col(c) = profile * v[c];
  return GridFunction::from_samples(shape, std::move(samples));
}

GridFunction near_delta(const GridShape& shape, const ComplexVector& v) {
  return gaussian_bump(shape, RealVector::Zero(shape.dim), 2.0, v);
}

GridFunction single_mode(const GridShape& shape, const std::vector<int>& k,
                         const ComplexVector& v) {
  if (static_cast<int>(k.size()) != shape.dim)
    throw std::domain_error("single_mode: frequency arity mismatch");
  ComplexMatrix spec = ComplexMatrix::Zero(shape.total(), v.size());
  long flat = 0, stride = 1;
  for (int j = 0; j < shape.dim; ++j) {
    const int kk = ((k[j] % shape.n) + shape.n) % shape.n;
    if (k[j] > shape.n / 2 || k[j] <= -shape.n / 2)
      throw std::domain_error("single_mode: frequency outside (-n/2, n/2]");
    flat += kk * stride;
    stride *= shape.n;
  }
  const double scale = std::pow(shape.box, shape.dim);
  for (int c = 0; c < v.size(); ++c) spec(flat, c) = scale * v[c];
  return GridFunction::from_spectrum(shape, std::move(spec));
}

}  // namespace aniso
