#pragma once

#include "aniso/types.hpp"

#include <functional>
#include <random>
#include <vector>

namespace aniso {

/// A point of the complex Grassmannian G(l, k), stored as an l x k matrix
/// with orthonormal columns. Frames, not projectors, are the primary
/// representation; projectors are derived on demand.
class Subspace {
 public:
  Subspace() = default;

  /// Validates orthonormality of the columns.
  static Subspace from_frame(ComplexMatrix frame, double tol = 1e-10);
  /// Orthonormalizes the columns of `span` by SVD, dropping directions
  /// with singular value <= tol * (largest singular value).
  static Subspace from_span(const ComplexMatrix& span, double tol = 1e-10);
  static Subspace zero(int ambient_dim);
  static Subspace full(int ambient_dim);

  int ambient_dim() const { return static_cast<int>(frame_.rows()); }
  int dim() const { return static_cast<int>(frame_.cols()); }
  const ComplexMatrix& frame() const { return frame_; }

  /// pi = frame * frame^H (Hermitian, idempotent).
  ComplexMatrix projection() const { return frame_ * frame_.adjoint(); }
  /// pi v without forming the projector.
  ComplexVector project(const ComplexVector& v) const {
    return frame_ * (frame_.adjoint() * v);
  }
  bool contains(const ComplexVector& v, double tol = 1e-10) const;

 private:
  explicit Subspace(ComplexMatrix frame) : frame_(std::move(frame)) {}
  ComplexMatrix frame_;  // l x k, orthonormal columns
};

/// Hilbert-Schmidt distance ||pi_1 - pi_2||_HS between the projectors.
double distance(const Subspace& s1, const Subspace& s2);

/// Numerical intersection: null space of the stacked [(I - pi_1); (I - pi_2)],
/// singular values below `tol` treated as zero.
Subspace intersect(const Subspace& s1, const Subspace& s2, double tol = 1e-8);

enum class BundleKind { ClosedForm, Sampled, ImageOfSymbol };

/// A continuous assignment zeta in S^{d-1} -> Omega(zeta) in G(l, k),
/// with declared Holder-modulus metadata.
struct BundleMap {
  std::function<Subspace(const RealVector&)> fiber;
  int sphere_dim = 0;   // d: the domain sphere lives in R^d
  int ambient_dim = 0;  // l: fibers are subspaces of C^l
  int fiber_dim = 0;    // k
  double holder_exponent = 1.0;
  BundleKind kind = BundleKind::ClosedForm;

  Subspace operator()(const RealVector& zeta) const { return fiber(zeta); }
  ComplexMatrix projector(const RealVector& zeta) const {
    return fiber(zeta).projection();
  }

  static BundleMap constant(int sphere_dim, const Subspace& value);
};

struct IntersectionResult {
  Subspace V;
  /// Eigenvalues of (1/N) sum_i (I - pi_i), ascending.
  RealVector spectrum;
  /// Gap between the first eigenvalue above the threshold and the last
  /// one below it (in the same normalized units as `tol`).
  double spectral_gap = 0.0;
  bool ill_conditioned = false;
};

/// Common intersection of the fibers over the given sphere nodes:
/// null space of sum_i (I - pi_{Omega(zeta_i)}), eigenvalues below
/// tol * (node count) treated as zero. Monotone in the node set.
IntersectionResult intersect_family_detailed(const BundleMap& omega,
                                             const std::vector<RealVector>& nodes,
                                             double tol = 1e-8);
Subspace intersect_family(const BundleMap& omega,
                          const std::vector<RealVector>& nodes,
                          double tol = 1e-8);

struct HolderEstimate {
  bool exact = false;  // distances at roundoff level; exponent meaningless
  double alpha = 0.0;
  double log_constant = 0.0;
  int pairs_used = 0;
};

/// Log-log least-squares fit of fiber distance against node distance over
/// random close pairs. Diagnostic only.
HolderEstimate holder_estimate(const BundleMap& omega, int pairs,
                               unsigned long seed = 7u);

/// Same fit for any sphere-to-metric-space map given as a distance oracle.
HolderEstimate holder_estimate_map(
    int dim, const std::function<double(const RealVector&, const RealVector&)>& dist,
    int pairs, unsigned long seed = 7u);

/// Uniform random point of S^{d-1}.
RealVector random_sphere_point(int dim, std::mt19937_64& rng);

}  // namespace aniso
