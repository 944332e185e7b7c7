// Independent oracles used by the test suites. Everything here is kept
// deliberately separate from the library's computational paths: bisection
// instead of Newton, plain tensor-grid quadrature instead of the polar
// rule, rank identities instead of eigendecompositions.
#pragma once

#include "aniso/pattern.hpp"
#include "aniso/types.hpp"

#include <Eigen/QR>

#include <cmath>
#include <functional>

namespace oracles {

using aniso::Complex;
using aniso::ComplexMatrix;
using aniso::HomogeneityPattern;
using aniso::RealVector;

/// Bisection solve of sum xi_j^2 / eta^{2 a_j} = 1, accurate to ~1e-14
/// relative.
inline double bisect_eta(const RealVector& xi, const HomogeneityPattern& a) {
  auto g = [&](double h) {
    double s = 0.0;
    for (int j = 0; j < xi.size(); ++j) s += xi[j] * xi[j] * std::pow(h, -2.0 * a[j]);
    return s;
  };
  double lo = 1e-12, hi = 1e12;
  while (g(lo) < 1.0) lo *= 0.5;
  while (g(hi) > 1.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (g(mid) >= 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi / lo - 1.0 < 1e-15) break;
  }
  return std::sqrt(lo * hi);
}

/// Midpoint tensor-grid quadrature over the box [-half, half]^d.
inline Complex cartesian_integral(const std::function<Complex(const RealVector&)>& f,
                                  const RealVector& half, int n_per_dim) {
  const int d = static_cast<int>(half.size());
  long total = 1;
  for (int j = 0; j < d; ++j) total *= n_per_dim;
  double cell = 1.0;
  std::vector<double> step(d);
  for (int j = 0; j < d; ++j) {
    step[j] = 2.0 * half[j] / n_per_dim;
    cell *= step[j];
  }
  Complex acc{0.0, 0.0};
  RealVector x(d);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (int j = 0; j < d; ++j) {
      const int k = static_cast<int>(rem % n_per_dim);
      rem /= n_per_dim;
      x[j] = -half[j] + (k + 0.5) * step[j];
    }
    acc += f(x);
  }
  return acc * cell;
}

/// Closed-form sphere integral of the monomial prod |zeta_j|^{alpha_j}
/// (zero for any odd alpha_j when taken without absolute values):
/// 2 prod Gamma((alpha_j+1)/2) / Gamma(sum (alpha_j+1)/2).
inline double monomial_sphere_integral(const std::vector<int>& alpha) {
  double log_num = 0.0, beta_sum = 0.0;
  for (int a : alpha) {
    const double b = (a + 1) / 2.0;
    log_num += std::lgamma(b);
    beta_sum += b;
  }
  return 2.0 * std::exp(log_num - std::lgamma(beta_sum));
}

/// dim(U cap V) = dim U + dim V - rank([U V]) via column-pivoted QR.
inline int intersection_dim(const ComplexMatrix& u, const ComplexMatrix& v) {
  ComplexMatrix joined(u.rows(), u.cols() + v.cols());
  joined << u, v;
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(joined);
  qr.setThreshold(1e-10);
  return static_cast<int>(u.cols() + v.cols() - qr.rank());
}

/// Smooth radial cutoff supported in (eta_lo, eta_hi), equal to
/// exp(-1/(1-u^2)) in log coordinates.
inline double log_bump(double eta, double eta_lo, double eta_hi) {
  const double u =
      (2.0 * std::log(eta / std::sqrt(eta_lo * eta_hi))) / std::log(eta_hi / eta_lo);
  if (!(std::abs(u) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

}  // namespace oracles
