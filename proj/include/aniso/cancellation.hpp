#pragma once

#include "aniso/pattern.hpp"
#include "aniso/quadrature.hpp"
#include "aniso/subspace.hpp"
#include "aniso/symbols.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace aniso {

/// Result of the bundle-cancellation and weak-cancellation decisions.
/// V is the numerical common intersection of the fibers over the
/// quadrature nodes; `residuals` (weak check only) holds the J-weighted
/// sphere averages of B applied to each basis vector of V, normalized by
/// the L1(dsigma) size of the corresponding integrand.
struct CancellationReport {
  Subspace V;
  int v_dim = 0;
  bool is_canceling = false;
  std::vector<Complex> residuals;
  double spectral_gap = 0.0;
  bool ill_conditioned = false;
  /// dim V agrees between the base quadrature and its refinement.
  bool refinement_stable = true;
  /// Weak check only: max normalized residual below tolerance.
  bool weakly_canceling = false;
};

/// Bundle cancellation (is the common intersection V trivial?). The
/// intersection is taken over quadrature nodes and re-checked on the
/// refined rule; a dimension change sets refinement_stable = false.
CancellationReport canceling_check(const BundleMap& omega, const SphereQuadrature& quad,
                                   double tol = 1e-8);

/// Weak cancellation of a functional B on Omega: for every basis vector v
/// of V, the integral of B(zeta)[v] J(zeta) dsigma must vanish.
CancellationReport weak_cancellation_check(const FunctionalField& B, const BundleMap& omega,
                                           const HomogeneityPattern& pattern,
                                           const SphereQuadrature& quad, double tol = 1e-8);

/// The constructive extension: finds B-tilde agreeing with B on every
/// fiber and satisfying the total cancellation condition
///   integral B-tilde(zeta)[v] J(zeta) dsigma = 0  for all v in C^l.
/// The correction field b is expanded in a smooth sphere basis
/// (trigonometric for d=2, real spherical harmonics for d=3) of
/// `basis_size` functions per coordinate, and the moment equation is
/// solved in the minimum-norm least-squares sense. Throws when the basis
/// is too small to meet `residual_tol`.
FunctionalField extend_functional(const FunctionalField& B, const BundleMap& omega,
                                  const HomogeneityPattern& pattern,
                                  const SphereQuadrature& quad, int basis_size = 25,
                                  double residual_tol = 1e-8);

using SphereKernel = std::function<Complex(const RealVector&)>;

struct MikhlinReport {
  Complex residual{0.0, 0.0};
  double scale = 0.0;  // L1(dsigma) size of J*K
  bool passes = false;
};

/// Classical (Mikhlin) cancellation of a degree-(-d) kernel:
/// integral J(zeta) K(zeta) dsigma = 0.
MikhlinReport mikhlin_cancellation_check(const SphereKernel& K,
                                         const HomogeneityPattern& pattern,
                                         const SphereQuadrature& quad, double tol = 1e-8);

struct DiniReport {
  std::vector<double> scales;
  std::vector<double> modulus;  // empirical w(t) per scale
  double dini_sum = 0.0;        // sum w(t_i) * dlog t, a discrete Dini integral
};

/// Empirical continuity modulus of K on the sphere over the given
/// decreasing scales in (0, 1]. Diagnostic only.
DiniReport dini_modulus(const SphereKernel& K, int dim, const std::vector<double>& scales,
                        int pairs_per_scale = 400, unsigned long seed = 11u);

/// The bilinear obstruction integral
///   integral Q(zeta) J(zeta) / (P1(zeta) conj(P2(zeta))) dsigma.
/// P1, P2 must be elliptic scalar symbols (nonvanishing on the nodes).
Complex bilinear_condition(const MatrixPolynomial& P1, const MatrixPolynomial& P2,
                           const SphereKernel& Q, const HomogeneityPattern& pattern,
                           const SphereQuadrature& quad, double elliptic_tol = 1e-10);

struct BilinearFamily {
  int kappa = 1;
  int lambda = 1;
  double alpha = 0.0;
  double beta = 0.0;
  Complex tau1{0.0, 1.0};
  Complex sigma1{0.0, 1.0};
};

/// The two-variable model family: P1 = zeta_1^kappa - tau1 zeta_2^lambda,
/// P2 likewise with sigma1, Q = |zeta_1|^{2 alpha} |zeta_2|^{2 beta}, with
/// the pattern fixed by a-homogeneity of P1, P2:
/// a = (2 lambda, 2 kappa) / (kappa + lambda).
/// Requires the line condition (alpha+1/2)/kappa + (beta+1/2)/lambda = 1.
Complex bilinear_family_sphere_integral(const BilinearFamily& fam, int n_nodes = 8192);
HomogeneityPattern bilinear_family_pattern(int kappa, int lambda);

/// The reduced line integral
///   integral_R |rho|^{2 alpha} drho / ((rho^kappa - tau1)(rho^kappa - sigma1)),
/// evaluated by tanh-sinh on [-cutoff, cutoff] plus series tails.
/// Enforces the line condition and parameter ellipticity.
Complex bilinear_reduced_integral(const BilinearFamily& fam, double cutoff = 50.0);

/// The parity-combined reduced form that the sphere integral reduces to
/// exactly:
///   (2 kappa / (kappa + lambda)) * [ I(tau1, sigma1) +
///     I((-1)^{lambda-kappa} tau1, (-1)^{lambda-kappa} sigma1) ].
Complex bilinear_reduced_combined(const BilinearFamily& fam, double cutoff = 50.0);

/// Stolyarov's vanishing characterization at the pinned exponents
/// alpha = (kappa-1)/2, beta = (lambda-1)/2: the obstruction vanishes iff
/// one of kappa, lambda is odd and Im tau1, Im sigma1 are nonzero of the
/// same sign.
bool bilinear_predicted_zero(const BilinearFamily& fam);

}  // namespace aniso
