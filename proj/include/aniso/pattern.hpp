#pragma once

#include "aniso/types.hpp"

#include <stdexcept>
#include <vector>

namespace aniso {

/// A pattern of homogeneity: d positive exponents a_j with sum a_j = d.
/// The pattern drives the anisotropic dilations
///   Dil_t(xi) = (t^{-a_1} xi_1, ..., t^{-a_d} xi_d)
/// and everything derived from them (quasi-norm, polar coordinates,
/// Jacobian weight). Exponents are rescaled on construction so the sum
/// constraint holds exactly up to roundoff.
class HomogeneityPattern {
 public:
  explicit HomogeneityPattern(RealVector exponents);
  static HomogeneityPattern isotropic(int dim) {
    return HomogeneityPattern(RealVector::Ones(dim));
  }

  int dim() const { return static_cast<int>(a_.size()); }
  const RealVector& exponents() const { return a_; }
  double operator[](int j) const { return a_[j]; }
  double min_exponent() const { return a_.minCoeff(); }
  double max_exponent() const { return a_.maxCoeff(); }
  /// True when every exponent equals 1 (classical dilations, eta = |xi|).
  bool is_isotropic() const { return isotropic_; }

 private:
  RealVector a_;
  bool isotropic_ = false;
};

/// Dil_t(xi). Accepts any Eigen vector expression; returns a plain vector.
template <class Derived>
RealVector dilate(double t, const Eigen::MatrixBase<Derived>& xi,
                  const HomogeneityPattern& pattern) {
  if (!(t > 0.0)) throw std::domain_error("dilate: scale t must be positive");
  if (xi.size() != pattern.dim())
    throw std::domain_error("dilate: dimension mismatch");
  RealVector out(xi.size());
  for (int j = 0; j < out.size(); ++j)
    out[j] = std::pow(t, -pattern[j]) * xi[j];
  return out;
}

/// The quasi-norm eta(xi): unique positive root of
///   sum_j xi_j^2 / eta^{2 a_j} = 1.
/// Solved by safeguarded Newton in log(eta) (the map is strictly monotone
/// and log-convex, so the iteration converges monotonically from the
/// lower bracket end); relative accuracy ~1e-15.
double eta(const Eigen::Ref<const RealVector>& xi,
           const HomogeneityPattern& pattern);

struct PolarPoint {
  double eta;        // quasi-norm value
  RealVector zeta;   // point of S^{d-1}
};

/// xi = (eta, zeta) with zeta = Dil_{eta(xi)}(xi).
PolarPoint polar_decompose(const Eigen::Ref<const RealVector>& xi,
                           const HomogeneityPattern& pattern);

/// Inverse of polar_decompose: xi_j = eta^{a_j} zeta_j.
RealVector polar_reconstruct(double eta_value,
                             const Eigen::Ref<const RealVector>& zeta,
                             const HomogeneityPattern& pattern);

/// J(zeta) = sum_j a_j zeta_j^2, the density of the anisotropic polar
/// change of variables. Requires |zeta| = 1.
double jacobian(const Eigen::Ref<const RealVector>& zeta,
                const HomogeneityPattern& pattern);

struct EtaEquivalence {
  double c_low = 0.0;
  double c_high = 0.0;
};

/// Empirical constants c_low, c_high with
///   c_low * (sum |xi_j|^{2/a_j})^{1/2} <= eta(xi) <= c_high * (...)^{1/2}
/// over `samples` random Gaussian points.
EtaEquivalence eta_equivalence_constants(const HomogeneityPattern& pattern,
                                         int samples, unsigned long seed = 1u);

/// Same scan over caller-provided points (used by the dilation-invariance
/// tests).
EtaEquivalence eta_equivalence_over(const std::vector<RealVector>& points,
                                    const HomogeneityPattern& pattern);

}  // namespace aniso
