#include "aniso/pattern.hpp"

#include "aniso/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace aniso {

namespace {
constexpr double kExponentGuard = 1e-3;
}

HomogeneityPattern::HomogeneityPattern(RealVector exponents) : a_(std::move(exponents)) {
  const int d = static_cast<int>(a_.size());
  if (d < 1) throw std::domain_error("HomogeneityPattern: empty exponent vector");
  if ((a_.array() <= 0.0).any())
    throw std::domain_error("HomogeneityPattern: exponents must be positive");
  const double sum = a_.sum();
  a_ *= static_cast<double>(d) / sum;
  // Guard against catastrophically stiff eta solves.
  if (a_.minCoeff() < kExponentGuard || a_.maxCoeff() > d - kExponentGuard)
    throw std::domain_error(
        "HomogeneityPattern: exponent outside [1e-3, d-1e-3] after normalization");
  isotropic_ = ((a_.array() - 1.0).abs() < 1e-14).all();
}

double eta(const Eigen::Ref<const RealVector>& xi, const HomogeneityPattern& pattern) {
  const int d = pattern.dim();
  if (xi.size() != d) throw std::domain_error("eta: dimension mismatch");
  if (xi.isZero(0.0)) throw std::domain_error("eta: xi must be nonzero");
  if (pattern.is_isotropic()) return xi.norm();

  // Work with u = log(eta); g(u) = sum exp(2 (log|xi_j| - a_j u)) is
  // strictly decreasing and convex. The lower bracket end
  // u = max_j log|xi_j|/a_j has g >= 1, the upper end adds
  // log(d)/(2 min a_j), so g <= 1 there. Newton from the low end
  // converges monotonically; bisection is the safeguard.
  std::vector<double> log_xi(d);
  double lo = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < d; ++j) {
    log_xi[j] = (xi[j] == 0.0) ? 0.0 : std::log(std::abs(xi[j]));
    if (xi[j] != 0.0) lo = std::max(lo, log_xi[j] / pattern[j]);
  }
  double hi = lo + std::log(static_cast<double>(d)) / (2.0 * pattern.min_exponent());

  auto eval = [&](double u, double& g, double& dg) {
    g = 0.0;
    dg = 0.0;
    for (int j = 0; j < d; ++j) {
      if (xi[j] == 0.0) continue;
      const double term = std::exp(2.0 * (log_xi[j] - pattern[j] * u));
      g += term;
      dg -= 2.0 * pattern[j] * term;
    }
  };

  double u = lo;
  for (int iter = 0; iter < 80; ++iter) {
    double g, dg;
    eval(u, g, dg);
    if (!std::isfinite(g) || !std::isfinite(dg) || dg == 0.0) break;
    if (g >= 1.0) lo = u; else hi = u;
    double u_next = u + (g - 1.0) / (-dg);
    if (!(u_next >= lo && u_next <= hi)) u_next = 0.5 * (lo + hi);
    const bool converged =
        std::abs(g - 1.0) < 4e-16 || std::abs(u_next - u) < 1e-16 * (1.0 + std::abs(u));
    u = u_next;
    if (converged) break;
  }
  return std::exp(u);
}

PolarPoint polar_decompose(const Eigen::Ref<const RealVector>& xi,
                           const HomogeneityPattern& pattern) {
  const double h = eta(xi, pattern);
  return PolarPoint{h, dilate(h, xi, pattern)};
}

RealVector polar_reconstruct(double eta_value, const Eigen::Ref<const RealVector>& zeta,
                             const HomogeneityPattern& pattern) {
  if (!(eta_value > 0.0)) throw std::domain_error("polar_reconstruct: eta must be positive");
  if (zeta.size() != pattern.dim())
    throw std::domain_error("polar_reconstruct: dimension mismatch");
  RealVector xi(zeta.size());
  for (int j = 0; j < xi.size(); ++j) xi[j] = std::pow(eta_value, pattern[j]) * zeta[j];
  return xi;
}

double jacobian(const Eigen::Ref<const RealVector>& zeta, const HomogeneityPattern& pattern) {
  if (zeta.size() != pattern.dim()) throw std::domain_error("jacobian: dimension mismatch");
  if (std::abs(zeta.norm() - 1.0) > 1e-8)
    throw std::domain_error("jacobian: zeta must lie on the unit sphere");
  CompensatedSum<double> s;
  for (int j = 0; j < zeta.size(); ++j) s.add(pattern[j] * zeta[j] * zeta[j]);
  return s.value();
}

EtaEquivalence eta_equivalence_over(const std::vector<RealVector>& points,
                                    const HomogeneityPattern& pattern) {
  if (points.empty()) throw std::domain_error("eta_equivalence_over: no sample points");
  EtaEquivalence out{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& xi : points) {
    double comparable = 0.0;
    for (int j = 0; j < pattern.dim(); ++j)
      comparable += std::pow(std::abs(xi[j]), 2.0 / pattern[j]);
    comparable = std::sqrt(comparable);
    const double ratio = eta(xi, pattern) / comparable;
    out.c_low = std::min(out.c_low, ratio);
    out.c_high = std::max(out.c_high, ratio);
  }
  return out;
}

EtaEquivalence eta_equivalence_constants(const HomogeneityPattern& pattern, int samples,
                                         unsigned long seed) {
  if (samples < 100) throw std::domain_error("eta_equivalence_constants: samples >= 100 required");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<RealVector> pts;
  pts.reserve(samples);
  while (static_cast<int>(pts.size()) < samples) {
    RealVector xi(pattern.dim());
    for (int j = 0; j < pattern.dim(); ++j) xi[j] = gauss(rng);
    if (xi.norm() < 1e-12) continue;
    pts.push_back(std::move(xi));
  }
  return eta_equivalence_over(pts, pattern);
}

}  // namespace aniso
