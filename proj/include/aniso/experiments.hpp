#pragma once

#include "aniso/builtins.hpp"
#include "aniso/cancellation.hpp"
#include "aniso/grid_ops.hpp"
#include "aniso/numerics.hpp"

#include <vector>

namespace aniso {

/// Truncated-kernel Fourier-transform experiment: samples
/// K(zeta(x)) eta(x)^{-d} chi_{eta in [eps, R]} on the (origin-centered)
/// lattice, transforms, and records sup |K-hat| per window.
struct KernelFtRow {
  double eps = 0.0;
  double R = 0.0;
  double sup = 0.0;
  Complex khat0{0.0, 0.0};
  bool resolved = true;
};

struct KernelFtReport {
  std::vector<KernelFtRow> rows;
  MikhlinReport mikhlin;
  /// (max - min) / min over the per-window sups.
  double plateau_variation = 0.0;
  /// sup against log(R/eps).
  LinearFit log_fit;
};

KernelFtReport kernel_ft_sup_experiment(const SphereKernel& K,
                                        const HomogeneityPattern& pattern,
                                        const std::vector<TruncationWindow>& windows,
                                        const GridShape& shape);

/// Embedding-experiment report: per window, the ratios over the test
/// family plus plateau/growth summaries of the per-window maxima.
struct RatioRow {
  double eps = 0.0;
  double R = 0.0;
  bool resolved = true;
  std::vector<double> ratios;
  double max_ratio = 0.0;
};

struct EmbeddingReport {
  std::vector<RatioRow> rows;
  double plateau_variation = 0.0;
  LinearFit fit_vs_log;       // max ratio ~ log(R/eps)
  LinearFit fit_vs_sqrtlog;   // max ratio ~ sqrt(log(R/eps))
};

/// ||B_{eps,R} f||_inf / ||f||_1 over the family and windows.
EmbeddingReport linfty_embedding_experiment(const FunctionalField& B,
                                            const SpectralGeometry& geom,
                                            const std::vector<GridFunction>& family,
                                            const std::vector<TruncationWindow>& windows);

/// ||windowed I_{d/2} f||_2 / ||f||_1 (computed on the frequency side)
/// over the family and windows.
EmbeddingReport l2_embedding_experiment(const SpectralGeometry& geom,
                                        const std::vector<GridFunction>& family,
                                        const std::vector<TruncationWindow>& windows);

/// The Dirac-delta lower-bound probe: value of the truncated multiplier at
/// the origin on a near-delta tensored with v, against the closed-form
/// product log(R/eps) * integral B(zeta)[v] J dsigma.
struct NearDeltaRow {
  double eps = 0.0;
  double R = 0.0;
  Complex measured{0.0, 0.0};
  Complex oracle{0.0, 0.0};
  double rel_error = 0.0;
};

std::vector<NearDeltaRow> near_delta_lower_bound(const FunctionalField& B,
                                                 const ComplexVector& v,
                                                 const SpectralGeometry& geom,
                                                 const std::vector<TruncationWindow>& windows,
                                                 const SphereQuadrature& quad);

/// Test-function family: bundle-projected Gaussian bumps over a range of
/// widths, lattice translates, and near-deltas; all spectra projected to
/// the bundle and zero-meaned.
std::vector<GridFunction> make_test_family(const BundleMap& omega,
                                           const SpectralGeometry& geom, int count,
                                           unsigned long seed);

/// The bilinearization duality bound: for random f in the bundle and
/// random g,
///   |(1/box^d) sum_{window} eta^{-d} <f-hat, g-hat>|
///     <= sum_j ||B_{j,eps,R}[f]||_inf ||g_j||_1.
/// Both sides are computed independently (frequency sum vs inverse
/// transforms); the report records the worst violation.
struct BilinearizationReport {
  int pairs = 0;
  double max_violation = 0.0;  // max(0, |lhs| - rhs) over the pairs
  double max_lhs = 0.0;
};

BilinearizationReport bilinearization_check(const BundleMap& omega,
                                            const SpectralGeometry& geom,
                                            const TruncationWindow& win, int pairs,
                                            unsigned long seed);

}  // namespace aniso
