#include "aniso/subspace.hpp"

#include "aniso/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace aniso {

Subspace Subspace::from_frame(ComplexMatrix frame, double tol) {
  if (frame.rows() < 1) throw std::domain_error("Subspace: empty ambient space");
  if (frame.cols() > 0) {
    const ComplexMatrix gram = frame.adjoint() * frame;
    const double defect =
        (gram - ComplexMatrix::Identity(frame.cols(), frame.cols())).norm();
    if (defect > tol)
      throw std::domain_error("Subspace::from_frame: columns not orthonormal");
  }
  return Subspace(std::move(frame));
}

Subspace Subspace::from_span(const ComplexMatrix& span, double tol) {
  if (span.rows() < 1) throw std::domain_error("Subspace: empty ambient space");
  if (span.cols() == 0) return zero(static_cast<int>(span.rows()));
  Eigen::JacobiSVD<ComplexMatrix> svd(span, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(sv[0], 1e-300);
  int rank = 0;
  while (rank < sv.size() && sv[rank] > cut) ++rank;
  return Subspace(svd.matrixU().leftCols(rank));
}

Subspace Subspace::zero(int ambient_dim) {
  return Subspace(ComplexMatrix::Zero(ambient_dim, 0));
}

Subspace Subspace::full(int ambient_dim) {
  return Subspace(ComplexMatrix::Identity(ambient_dim, ambient_dim));
}

bool Subspace::contains(const ComplexVector& v, double tol) const {
  const double scale = std::max(v.norm(), 1e-300);
  return (project(v) - v).norm() <= tol * scale;
}

double distance(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw std::domain_error("distance: ambient dimension mismatch");
  // explicit projector difference; the Gram-trace shortcut loses half the
  // significant digits to cancellation for nearby subspaces
  return (s1.projection() - s2.projection()).norm();
}

Subspace intersect(const Subspace& s1, const Subspace& s2, double tol) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw std::domain_error("intersect: ambient dimension mismatch");
  const int l = s1.ambient_dim();
  ComplexMatrix stacked(2 * l, l);
  stacked.topRows(l) = ComplexMatrix::Identity(l, l) - s1.projection();
  stacked.bottomRows(l) = ComplexMatrix::Identity(l, l) - s2.projection();
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int null_dim = 0;
  for (int i = static_cast<int>(sv.size()) - 1; i >= 0 && sv[i] <= tol; --i) ++null_dim;
  return Subspace::from_frame(svd.matrixV().rightCols(null_dim));
}

BundleMap BundleMap::constant(int sphere_dim, const Subspace& value) {
  BundleMap b;
  b.fiber = [value](const RealVector&) { return value; };
  b.sphere_dim = sphere_dim;
  b.ambient_dim = value.ambient_dim();
  b.fiber_dim = value.dim();
  b.holder_exponent = 1.0;
  b.kind = BundleKind::ClosedForm;
  return b;
}

IntersectionResult intersect_family_detailed(const BundleMap& omega,
                                             const std::vector<RealVector>& nodes,
                                             double tol) {
  if (nodes.empty()) throw std::domain_error("intersect_family: empty node list");
  const int l = omega.ambient_dim;
  ComplexMatrix accum = ComplexMatrix::Zero(l, l);
  for (const auto& z : nodes)
    accum += ComplexMatrix::Identity(l, l) - omega.projector(z);
  accum /= static_cast<double>(nodes.size());
  // accum is Hermitian PSD with eigenvalues in [0, 1]; the null space is
  // the common intersection of the sampled fibers.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(accum);
  const RealVector& ev = es.eigenvalues();

  IntersectionResult out;
  out.spectrum = ev;
  int dim = 0;
  while (dim < ev.size() && ev[dim] < tol) ++dim;
  out.V = Subspace::from_frame(es.eigenvectors().leftCols(dim));
  // The decision is trustworthy when the eigenvalues on either side of the
  // threshold are at least a decade away from it.
  const double below = (dim > 0) ? ev[dim - 1] : 0.0;
  const double above = (dim < ev.size()) ? ev[dim] : 1.0;
  out.spectral_gap = above;
  out.ill_conditioned = (above < 10.0 * tol) || (below > 0.1 * tol);
  return out;
}

Subspace intersect_family(const BundleMap& omega, const std::vector<RealVector>& nodes,
                          double tol) {
  return intersect_family_detailed(omega, nodes, tol).V;
}

RealVector random_sphere_point(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  RealVector z(dim);
  do {
    for (int j = 0; j < dim; ++j) z[j] = gauss(rng);
  } while (z.norm() < 1e-8);
  return z / z.norm();
}

HolderEstimate holder_estimate_map(
    int dim, const std::function<double(const RealVector&, const RealVector&)>& dist,
    int pairs, unsigned long seed) {
  if (pairs < 10) throw std::domain_error("holder_estimate: pairs >= 10 required");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss;

  std::vector<double> log_sep, log_dist;
  double max_dist = 0.0;
  int attempts = 0;
  while (static_cast<int>(log_sep.size()) < pairs && attempts < 50 * pairs) {
    ++attempts;
    const RealVector z1 = random_sphere_point(dim, rng);
    // separation log-uniform in [1e-4, 1e-1]
    const double delta = std::pow(10.0, -4.0 + 3.0 * unif(rng));
    RealVector dir(dim);
    for (int j = 0; j < dim; ++j) dir[j] = gauss(rng);
    dir -= dir.dot(z1) * z1;
    if (dir.norm() < 1e-12) continue;
    RealVector z2 = z1 + delta * dir.normalized();
    z2.normalize();
    const double sep = (z1 - z2).norm();
    if (sep < 1e-13 || sep > 1.0) continue;
    const double dv = dist(z1, z2);
    max_dist = std::max(max_dist, dv);
    if (dv < 1e-13) continue;  // below roundoff; skip for the log fit
    log_sep.push_back(std::log(sep));
    log_dist.push_back(std::log(dv));
  }

  HolderEstimate est;
  if (max_dist < 1e-12 || log_sep.size() < 10) {
    est.exact = true;
    est.alpha = std::numeric_limits<double>::infinity();
    est.pairs_used = static_cast<int>(log_sep.size());
    return est;
  }
  const LinearFit fit = fit_line(log_sep, log_dist);
  est.alpha = fit.slope;
  est.log_constant = fit.intercept;
  est.pairs_used = static_cast<int>(log_sep.size());
  return est;
}

HolderEstimate holder_estimate(const BundleMap& omega, int pairs, unsigned long seed) {
  return holder_estimate_map(
      omega.sphere_dim,
      [&omega](const RealVector& z1, const RealVector& z2) {
        return distance(omega(z1), omega(z2));
      },
      pairs, seed);
}

}  // namespace aniso
