#pragma once

#include "aniso/pattern.hpp"
#include "aniso/types.hpp"

#include <functional>

namespace aniso {

/// Nodes and surface-measure weights on S^{d-1}.
///
/// d=2: trapezoid rule on uniform angles (spectrally accurate for smooth
/// periodic integrands; exact for trig polynomials of degree < node count).
/// d=3: product Gauss-Legendre (polar, in cos(theta)) x trapezoid
/// (azimuthal); exact for spherical polynomials up to
/// min(2*n_polar - 1, n_azimuth - 1).
struct SphereQuadrature {
  RealMatrix nodes;    // N x d, unit vectors
  RealVector weights;  // N positive surface weights, sum = |S^{d-1}|
  int exactness_degree = 0;

  int dim() const { return static_cast<int>(nodes.cols()); }
  int size() const { return static_cast<int>(nodes.rows()); }
  RealVector node(int i) const { return nodes.row(i).transpose(); }

  /// Same rule with roughly doubled node counts.
  SphereQuadrature refined() const;

  static SphereQuadrature circle(int n_nodes = 512);
  static SphereQuadrature sphere(int n_polar = 64, int n_azimuth = 128);
  /// Dispatch on dimension with the defaults above.
  static SphereQuadrature standard(int dim);
};

/// sum_i w_i f(zeta_i), compensated.
Complex sphere_integrate(const SphereQuadrature& quad,
                         const std::function<Complex(const RealVector&)>& f);

/// Geometrically spaced radial grid with trapezoid-in-log weights:
/// integrates f against d(eta) on [eta_min, eta_max].
struct RadialGrid {
  RealVector nodes;
  RealVector weights;

  static RadialGrid geometric(double eta_min, double eta_max,
                              int points_per_decade = 256);
};

/// The anisotropic polar change of variables,
///   integral psi(xi) dxi
///     = int_0^inf eta^{d-1} int_{S^{d-1}} J(zeta) psi(Dil_{1/eta}(zeta))
///       dsigma(zeta) deta,
/// evaluated over the radial range of `radial`.
Complex polar_integrate(const std::function<Complex(const RealVector&)>& psi,
                        const HomogeneityPattern& pattern,
                        const SphereQuadrature& quad, const RadialGrid& radial);

}  // namespace aniso
