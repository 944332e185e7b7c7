#pragma once

#include "aniso/grid.hpp"
#include "aniso/subspace.hpp"
#include "aniso/symbols.hpp"

namespace aniso {

/// Per-frequency anisotropic geometry of a lattice. For anisotropic
/// patterns the quasi-norm and sphere direction of every nonzero frequency
/// are tabulated once (the eta solve is the hot spot of the experiments);
/// the isotropic case is computed inline.
class SpectralGeometry {
 public:
  SpectralGeometry(GridShape shape, HomogeneityPattern pattern);

  const GridShape& shape() const { return shape_; }
  const HomogeneityPattern& pattern() const { return pattern_; }

  /// Quasi-norm of frequency at flat index (flat != 0).
  double eta(long flat) const;
  /// Sphere direction zeta = Dil_eta(xi) of the frequency.
  RealVector zeta(long flat) const;

  /// Smallest nonzero / largest representable quasi-norm on the lattice.
  double eta_min() const { return eta_min_; }
  double eta_max() const { return eta_max_; }
  /// Windows are considered resolved within [4 eta_min, 0.25 eta_max].
  bool window_resolved(const TruncationWindow& win) const {
    return win.eps >= 4.0 * eta_min_ && win.R <= 0.25 * eta_max_;
  }

 private:
  GridShape shape_;
  HomogeneityPattern pattern_;
  bool tabulated_ = false;
  RealVector etas_;
  RealMatrix zetas_;
  double eta_min_ = 0.0, eta_max_ = 0.0;
};

/// Replaces every nonzero-frequency coefficient by its projection onto the
/// fiber Omega(zeta(xi)); the zero frequency is left unchanged. This is
/// the canonical membership generator for the constrained L1 space.
GridFunction spectral_project_to_bundle(const GridFunction& f, const BundleMap& omega,
                                        const SpectralGeometry& geom);

/// The truncated multiplier: scalar-valued output with
///   out-hat(xi) = chi_{eta in [eps, R]}(xi) eta^{-d} B(zeta(xi))[f-hat(xi)].
GridFunction apply_truncated_multiplier(const GridFunction& f, const FunctionalField& B,
                                        const SpectralGeometry& geom,
                                        const TruncationWindow& win);

/// Value of the truncated multiplier at x = 0 (a plain frequency sum; no
/// inverse transform).
Complex truncated_multiplier_at_origin(const GridFunction& f, const FunctionalField& B,
                                       const SpectralGeometry& geom,
                                       const TruncationWindow& win);

/// Anisotropic Riesz potential: multiplies nonzero frequencies by
/// eta^{-beta}, beta in (0, d). Requires zero mean.
GridFunction riesz_apply(const GridFunction& f, double beta, const SpectralGeometry& geom);

/// Spectrum restricted to the window (zero frequency excluded).
GridFunction window_filter(const GridFunction& f, const SpectralGeometry& geom,
                           const TruncationWindow& win);

/// The windowed Plancherel quantity
///   (1/box^d) sum_{eta(xi) in [eps, R]} ||f-hat(xi)||^2 eta^{-d}(xi),
/// i.e. the squared L2 norm of the windowed I_{d/2} f.
double windowed_plancherel(const GridFunction& f, const SpectralGeometry& geom,
                           const TruncationWindow& win);

/// Applies a matrix symbol as a differential operator: each term acts as
/// coeff * prod_j (2 pi i xi_j)^{k_j} on the spectrum. Components of f
/// must match the symbol's columns; the output has `rows` components.
GridFunction apply_operator(const MatrixPolynomial& A, const GridFunction& f);

}  // namespace aniso
