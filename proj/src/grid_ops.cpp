#include "aniso/grid_ops.hpp"

#include "aniso/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aniso {

SpectralGeometry::SpectralGeometry(GridShape shape, HomogeneityPattern pattern)
    : shape_(shape), pattern_(std::move(pattern)) {
  if (shape_.dim != pattern_.dim())
    throw std::domain_error("SpectralGeometry: shape/pattern dimension mismatch");
  const long total = shape_.total();
  eta_min_ = std::numeric_limits<double>::infinity();
  eta_max_ = 0.0;
  if (!pattern_.is_isotropic()) {
    tabulated_ = true;
    etas_.resize(total);
    zetas_.resize(total, shape_.dim);
    RealVector xi(shape_.dim);
    etas_[0] = 0.0;
    zetas_.row(0).setZero();
    for (long i = 1; i < total; ++i) {
      shape_.xi(i, xi);
      const double h = aniso::eta(xi, pattern_);
      etas_[i] = h;
      zetas_.row(i) = dilate(h, xi, pattern_).transpose();
      eta_min_ = std::min(eta_min_, h);
      eta_max_ = std::max(eta_max_, h);
    }
  } else {
    // eta = |xi|; extremes from the axis frequency and the Nyquist corner
    eta_min_ = 1.0 / shape_.box;
    eta_max_ = std::sqrt(static_cast<double>(shape_.dim)) * (shape_.n / 2) / shape_.box;
  }
}

double SpectralGeometry::eta(long flat) const {
  if (tabulated_) return etas_[flat];
  double q = 0.0;
  long rem = flat;
  const int n = shape_.n;
  for (int j = 0; j < shape_.dim; ++j) {
    const int k = static_cast<int>(rem % n);
    rem /= n;
    const double x = ((k <= n / 2) ? k : k - n) / shape_.box;
    q += x * x;
  }
  return std::sqrt(q);
}

RealVector SpectralGeometry::zeta(long flat) const {
  if (tabulated_) return zetas_.row(flat).transpose();
  RealVector xi(shape_.dim);
  shape_.xi(flat, xi);
  return xi / xi.norm();
}

GridFunction spectral_project_to_bundle(const GridFunction& f, const BundleMap& omega,
                                        const SpectralGeometry& geom) {
  if (f.components() != omega.ambient_dim)
    throw std::domain_error("spectral_project_to_bundle: component mismatch");
  if (!(f.shape() == geom.shape()))
    throw std::domain_error("spectral_project_to_bundle: shape mismatch");
  ComplexMatrix spec = f.spectrum();
  for (long i = 1; i < spec.rows(); ++i) {
    const ComplexMatrix pi = omega.projector(geom.zeta(i));
    spec.row(i) = (pi * spec.row(i).transpose()).transpose();
  }
  return GridFunction::from_spectrum(f.shape(), std::move(spec));
}

namespace {

template <class PerFrequency>
void scan_window(const GridFunction& f, const SpectralGeometry& geom,
                 const TruncationWindow& win, PerFrequency&& fn) {
  const ComplexMatrix& spec = f.spectrum();
  for (long i = 1; i < spec.rows(); ++i) {
    const double h = geom.eta(i);
    if (h < win.eps || h > win.R) continue;
    fn(i, h, spec.row(i));
  }
}

}  // namespace

GridFunction apply_truncated_multiplier(const GridFunction& f, const FunctionalField& B,
                                        const SpectralGeometry& geom,
                                        const TruncationWindow& win) {
  if (f.components() != B.bundle.ambient_dim)
    throw std::domain_error("apply_truncated_multiplier: component mismatch");
  const int d = geom.pattern().dim();
  ComplexMatrix out = ComplexMatrix::Zero(f.shape().total(), 1);
  scan_window(f, geom, win, [&](long i, double h, const auto& coeff) {
    const ComplexRowVector row = B.row(geom.zeta(i));
    out(i, 0) = std::pow(h, -d) * (row * coeff.transpose())(0);
  });
  return GridFunction::from_spectrum(f.shape(), std::move(out));
}

Complex truncated_multiplier_at_origin(const GridFunction& f, const FunctionalField& B,
                                       const SpectralGeometry& geom,
                                       const TruncationWindow& win) {
  const int d = geom.pattern().dim();
  CompensatedSum<Complex> acc;
  scan_window(f, geom, win, [&](long i, double h, const auto& coeff) {
    const ComplexRowVector row = B.row(geom.zeta(i));
    acc.add(std::pow(h, -d) * (row * coeff.transpose())(0));
  });
  return acc.value() / std::pow(f.shape().box, d);
}

GridFunction riesz_apply(const GridFunction& f, double beta, const SpectralGeometry& geom) {
  const int d = geom.pattern().dim();
  if (!(beta > 0.0 && beta < d))
    throw std::domain_error("riesz_apply: beta must lie in (0, d)");
  ComplexMatrix spec = f.spectrum();
  const double mean_size = spec.row(0).norm();
  const double scale = spec.norm();
  if (mean_size > 1e-12 * std::max(scale, 1e-300))
    throw std::domain_error("riesz_apply: input must have zero mean");
  spec.row(0).setZero();
  for (long i = 1; i < spec.rows(); ++i) spec.row(i) *= std::pow(geom.eta(i), -beta);
  return GridFunction::from_spectrum(f.shape(), std::move(spec));
}

GridFunction window_filter(const GridFunction& f, const SpectralGeometry& geom,
                           const TruncationWindow& win) {
  ComplexMatrix spec = ComplexMatrix::Zero(f.spectrum().rows(), f.components());
  scan_window(f, geom, win,
              [&](long i, double, const auto& coeff) { spec.row(i) = coeff; });
  return GridFunction::from_spectrum(f.shape(), std::move(spec));
}

double windowed_plancherel(const GridFunction& f, const SpectralGeometry& geom,
                           const TruncationWindow& win) {
  const int d = geom.pattern().dim();
  CompensatedSum<double> acc;
  scan_window(f, geom, win, [&](long, double h, const auto& coeff) {
    acc.add(coeff.squaredNorm() * std::pow(h, -d));
  });
  return acc.value() / std::pow(f.shape().box, d);
}

GridFunction apply_operator(const MatrixPolynomial& A, const GridFunction& f) {
  if (f.components() != A.cols())
    throw std::domain_error("apply_operator: f components must match symbol columns");
  if (f.shape().dim != A.pattern().dim())
    throw std::domain_error("apply_operator: dimension mismatch");
  const ComplexMatrix& spec = f.spectrum();
  ComplexMatrix out = ComplexMatrix::Zero(spec.rows(), A.rows());
  const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
  RealVector xi(f.shape().dim);
  for (long i = 0; i < spec.rows(); ++i) {
    f.shape().xi(i, xi);
    ComplexMatrix symbol = ComplexMatrix::Zero(A.rows(), A.cols());
    for (const auto& term : A.terms()) {
      Complex mono = 1.0;
      for (int j = 0; j < xi.size(); ++j) {
        for (int p = 0; p < term.exponents[j]; ++p) mono *= two_pi_i * xi[j];
      }
      symbol += mono * term.coeff;
    }
    out.row(i) = (symbol * spec.row(i).transpose()).transpose();
  }
  return GridFunction::from_spectrum(f.shape(), std::move(out));
}

}  // namespace aniso
