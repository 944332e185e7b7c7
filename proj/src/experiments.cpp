#include "aniso/experiments.hpp"

#include <cmath>
#include <random>

namespace aniso {

namespace {

std::vector<double> log_ratios(const std::vector<TruncationWindow>& windows) {
  std::vector<double> out;
  out.reserve(windows.size());
  for (const auto& w : windows) out.push_back(w.log_ratio());
  return out;
}

double plateau_variation_of(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const double lo = *std::min_element(values.begin(), values.end());
  const double hi = *std::max_element(values.begin(), values.end());
  return (lo <= 0.0) ? std::numeric_limits<double>::infinity() : (hi - lo) / lo;
}

}  // namespace

KernelFtReport kernel_ft_sup_experiment(const SphereKernel& K,
                                        const HomogeneityPattern& pattern,
                                        const std::vector<TruncationWindow>& windows,
                                        const GridShape& shape) {
  if (shape.dim != pattern.dim())
    throw std::domain_error("kernel_ft_sup_experiment: dimension mismatch");
  KernelFtReport report;
  report.mikhlin =
      mikhlin_cancellation_check(K, pattern, SphereQuadrature::standard(shape.dim));

  // Per-point kernel values K(zeta(x)) eta(x)^{-d} on the wrapped lattice.
  const long total = shape.total();
  std::vector<double> eta_x(total, 0.0);
  ComplexVector kernel_val = ComplexVector::Zero(total);
  RealVector x(shape.dim);
  double eta_min = std::numeric_limits<double>::infinity();
  for (long i = 1; i < total; ++i) {
    shape.point_wrapped(i, x);
    if (x.isZero(0.0)) continue;
    const PolarPoint p = polar_decompose(x, pattern);
    eta_x[i] = p.eta;
    kernel_val[i] = K(p.zeta) * std::pow(p.eta, -shape.dim);
    eta_min = std::min(eta_min, p.eta);
  }
  // The eta-ball of radius R must fit inside the box.
  double r_fit = std::numeric_limits<double>::infinity();
  for (int j = 0; j < shape.dim; ++j)
    r_fit = std::min(r_fit, std::pow(shape.box / 2.0, 1.0 / pattern[j]));

  std::vector<double> sups;
  for (const auto& win : windows) {
    ComplexMatrix masked = ComplexMatrix::Zero(total, 1);
    for (long i = 1; i < total; ++i)
      if (eta_x[i] >= win.eps && eta_x[i] <= win.R) masked(i, 0) = kernel_val[i];
    GridFunction g = GridFunction::from_samples(shape, std::move(masked));
    const ComplexMatrix& spec = g.spectrum();
    KernelFtRow row;
    row.eps = win.eps;
    row.R = win.R;
    row.khat0 = spec(0, 0);
    row.sup = spec.cwiseAbs().maxCoeff();
    row.resolved = (win.eps >= 3.0 * eta_min) && (win.R <= 0.9 * r_fit);
    report.rows.push_back(row);
    sups.push_back(row.sup);
  }
  report.plateau_variation = plateau_variation_of(sups);
  if (windows.size() >= 2) report.log_fit = fit_line(log_ratios(windows), sups);
  return report;
}

EmbeddingReport linfty_embedding_experiment(const FunctionalField& B,
                                            const SpectralGeometry& geom,
                                            const std::vector<GridFunction>& family,
                                            const std::vector<TruncationWindow>& windows) {
  EmbeddingReport report;
  std::vector<double> l1(family.size());
  for (size_t i = 0; i < family.size(); ++i) l1[i] = norms(family[i]).l1;

  std::vector<double> maxima;
  for (const auto& win : windows) {
    RatioRow row;
    row.eps = win.eps;
    row.R = win.R;
    row.resolved = geom.window_resolved(win);
    for (size_t i = 0; i < family.size(); ++i) {
      const GridFunction out = apply_truncated_multiplier(family[i], B, geom, win);
      row.ratios.push_back(norms(out).linf / l1[i]);
    }
    row.max_ratio = *std::max_element(row.ratios.begin(), row.ratios.end());
    maxima.push_back(row.max_ratio);
    report.rows.push_back(std::move(row));
  }
  report.plateau_variation = plateau_variation_of(maxima);
  if (windows.size() >= 2) {
    report.fit_vs_log = fit_line(log_ratios(windows), maxima);
    std::vector<double> sq;
    for (double lr : log_ratios(windows)) sq.push_back(std::sqrt(lr));
    report.fit_vs_sqrtlog = fit_line(sq, maxima);
  }
  return report;
}

EmbeddingReport l2_embedding_experiment(const SpectralGeometry& geom,
                                        const std::vector<GridFunction>& family,
                                        const std::vector<TruncationWindow>& windows) {
  EmbeddingReport report;
  std::vector<double> l1(family.size());
  for (size_t i = 0; i < family.size(); ++i) l1[i] = norms(family[i]).l1;

  std::vector<double> maxima;
  for (const auto& win : windows) {
    RatioRow row;
    row.eps = win.eps;
    row.R = win.R;
    row.resolved = geom.window_resolved(win);
    for (size_t i = 0; i < family.size(); ++i) {
      const double q = std::sqrt(windowed_plancherel(family[i], geom, win));
      row.ratios.push_back(q / l1[i]);
    }
    row.max_ratio = *std::max_element(row.ratios.begin(), row.ratios.end());
    maxima.push_back(row.max_ratio);
    report.rows.push_back(std::move(row));
  }
  report.plateau_variation = plateau_variation_of(maxima);
  if (windows.size() >= 2) {
    report.fit_vs_log = fit_line(log_ratios(windows), maxima);
    std::vector<double> sq;
    for (double lr : log_ratios(windows)) sq.push_back(std::sqrt(lr));
    report.fit_vs_sqrtlog = fit_line(sq, maxima);
  }
  return report;
}

std::vector<NearDeltaRow> near_delta_lower_bound(const FunctionalField& B,
                                                 const ComplexVector& v,
                                                 const SpectralGeometry& geom,
                                                 const std::vector<TruncationWindow>& windows,
                                                 const SphereQuadrature& quad) {
  const HomogeneityPattern& pattern = geom.pattern();
  const GridFunction f = near_delta(geom.shape(), v).with_zero_mean();
  const Complex sphere_part = sphere_integrate(quad, [&](const RealVector& z) {
    return jacobian(z, pattern) * (B.row(z) * v)(0);
  });
  std::vector<NearDeltaRow> rows;
  for (const auto& win : windows) {
    NearDeltaRow row;
    row.eps = win.eps;
    row.R = win.R;
    row.measured = truncated_multiplier_at_origin(f, B, geom, win);
    row.oracle = win.log_ratio() * sphere_part;
    row.rel_error = std::abs(row.measured - row.oracle) /
                    std::max(std::abs(row.oracle), 1e-300);
    rows.push_back(row);
  }
  return rows;
}

std::vector<GridFunction> make_test_family(const BundleMap& omega,
                                           const SpectralGeometry& geom, int count,
                                           unsigned long seed) {
  if (count < 1) throw std::domain_error("make_test_family: count >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const GridShape& shape = geom.shape();
  const int ell = omega.ambient_dim;

  auto random_direction = [&]() {
    ComplexVector v(ell);
    for (int c = 0; c < ell; ++c) v[c] = Complex(gauss(rng), gauss(rng));
    return static_cast<ComplexVector>(v / v.norm());
  };

  std::vector<GridFunction> family;
  const int n_deltas = std::max(1, count / 5);
  const int n_translates = std::max(1, count / 5);
  const int n_bumps = count - n_deltas - n_translates;
  for (int i = 0; i < n_bumps; ++i) {
    const double width = 2.0 * std::pow(4.0, unif(rng));  // 2..8 cells
    RealVector center(shape.dim);
    for (int j = 0; j < shape.dim; ++j) center[j] = unif(rng) * shape.n;
    family.push_back(gaussian_bump(shape, center, width, random_direction()));
  }
  for (int i = 0; i < n_translates; ++i) {
    const double width = 3.0;
    RealVector center = RealVector::Zero(shape.dim);
    GridFunction base = gaussian_bump(shape, center, width, random_direction());
    std::vector<int> cells(shape.dim);
    for (int j = 0; j < shape.dim; ++j)
      cells[j] = static_cast<int>(unif(rng) * shape.n);
    family.push_back(base.translated(cells));
  }
  for (int i = 0; i < n_deltas; ++i)
    family.push_back(near_delta(shape, random_direction()));

  for (auto& f : family)
    f = spectral_project_to_bundle(f, omega, geom).with_zero_mean();
  return family;
}

BilinearizationReport bilinearization_check(const BundleMap& omega,
                                            const SpectralGeometry& geom,
                                            const TruncationWindow& win, int pairs,
                                            unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const GridShape& shape = geom.shape();
  const int ell = omega.ambient_dim;
  const long total = shape.total();
  const int band = shape.n / 4;

  auto random_band_limited = [&](int comps) {
    ComplexMatrix spec = ComplexMatrix::Zero(total, comps);
    RealVector xi(shape.dim);
    for (long i = 1; i < total; ++i) {
      bool in_band = true;
      for (int j = 0; j < shape.dim; ++j)
        if (std::abs(shape.freq_int(i, j)) > band) in_band = false;
      if (!in_band) continue;
      double k2 = 0.0;
      for (int j = 0; j < shape.dim; ++j) {
        const double k = shape.freq_int(i, j);
        k2 += k * k;
      }
      const double decay = std::exp(-k2 / (2.0 * band * band / 4.0));
      for (int c = 0; c < comps; ++c)
        spec(i, c) = decay * Complex(gauss(rng), gauss(rng));
    }
    return GridFunction::from_spectrum(shape, std::move(spec));
  };

  std::vector<FunctionalField> coord_fields;
  for (int j = 0; j < ell; ++j) coord_fields.push_back(coordinate_functional(omega, j));

  BilinearizationReport report;
  report.pairs = pairs;
  const double inv_vol = 1.0 / std::pow(shape.box, shape.dim);
  for (int p = 0; p < pairs; ++p) {
    const GridFunction f = spectral_project_to_bundle(random_band_limited(ell), omega, geom);
    const GridFunction g = random_band_limited(ell);
    // frequency side
    const ComplexMatrix& fs = f.spectrum();
    const ComplexMatrix& gs = g.spectrum();
    CompensatedSum<Complex> pairing;
    for (long i = 1; i < total; ++i) {
      const double h = geom.eta(i);
      if (h < win.eps || h > win.R) continue;
      pairing.add(std::pow(h, -shape.dim) * gs.row(i).dot(fs.row(i)));
    }
    const double lhs = std::abs(pairing.value()) * inv_vol;
    // physical side
    double rhs = 0.0;
    for (int j = 0; j < ell; ++j) {
      const GridFunction bjf = apply_truncated_multiplier(f, coord_fields[j], geom, win);
      const GridFunction gj =
          GridFunction::from_spectrum(shape, static_cast<ComplexMatrix>(gs.col(j)));
      rhs += norms(bjf).linf * norms(gj).l1;
    }
    report.max_lhs = std::max(report.max_lhs, lhs);
    report.max_violation = std::max(report.max_violation, lhs - rhs);
  }
  report.max_violation = std::max(report.max_violation, 0.0);
  return report;
}

}  // namespace aniso
