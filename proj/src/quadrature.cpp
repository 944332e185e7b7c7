#include "aniso/quadrature.hpp"

#include "aniso/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aniso {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

SphereQuadrature SphereQuadrature::circle(int n_nodes) {
  if (n_nodes < 4) throw std::domain_error("SphereQuadrature::circle: need >= 4 nodes");
  SphereQuadrature q;
  q.nodes.resize(n_nodes, 2);
  q.weights = RealVector::Constant(n_nodes, kTwoPi / n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const double theta = kTwoPi * i / n_nodes;
    q.nodes(i, 0) = std::cos(theta);
    q.nodes(i, 1) = std::sin(theta);
  }
  q.exactness_degree = n_nodes - 1;
  return q;
}

SphereQuadrature SphereQuadrature::sphere(int n_polar, int n_azimuth) {
  if (n_polar < 2 || n_azimuth < 4)
    throw std::domain_error("SphereQuadrature::sphere: node counts too small");
  RealVector t, w;
  gauss_legendre(n_polar, t, w);
  SphereQuadrature q;
  q.nodes.resize(n_polar * n_azimuth, 3);
  q.weights.resize(n_polar * n_azimuth);
  int idx = 0;
  for (int p = 0; p < n_polar; ++p) {
    const double ct = t[p];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int r = 0; r < n_azimuth; ++r) {
      const double phi = kTwoPi * r / n_azimuth;
      q.nodes(idx, 0) = st * std::cos(phi);
      q.nodes(idx, 1) = st * std::sin(phi);
      q.nodes(idx, 2) = ct;
      q.weights[idx] = w[p] * (kTwoPi / n_azimuth);
      ++idx;
    }
  }
  q.exactness_degree = std::min(2 * n_polar - 1, n_azimuth - 1);
  return q;
}

SphereQuadrature SphereQuadrature::standard(int dim) {
  if (dim == 2) return circle();
  if (dim == 3) return sphere();
  throw std::domain_error("SphereQuadrature::standard: only d = 2, 3 supported");
}

SphereQuadrature SphereQuadrature::refined() const {
  if (dim() == 2) return circle(2 * size());
  // recover the product structure from the exactness bookkeeping
  const int n_az = static_cast<int>(nodes.rows());
  // nodes laid out polar-major; count azimuth nodes by repeated cos(theta)
  int n_azimuth = 1;
  while (n_azimuth < n_az && std::abs(nodes(n_azimuth, 2) - nodes(0, 2)) < 1e-14) ++n_azimuth;
  const int n_polar = n_az / n_azimuth;
  return sphere(2 * n_polar, 2 * n_azimuth);
}

Complex sphere_integrate(const SphereQuadrature& quad,
                         const std::function<Complex(const RealVector&)>& f) {
  CompensatedSum<Complex> acc;
  for (int i = 0; i < quad.size(); ++i) acc.add(quad.weights[i] * f(quad.node(i)));
  return acc.value();
}

RadialGrid RadialGrid::geometric(double eta_min, double eta_max, int points_per_decade) {
  if (!(0.0 < eta_min && eta_min < eta_max))
    throw std::domain_error("RadialGrid: need 0 < eta_min < eta_max");
  if (points_per_decade < 2) throw std::domain_error("RadialGrid: points_per_decade >= 2");
  const double u0 = std::log(eta_min);
  const double u1 = std::log(eta_max);
  const int n = std::max(2, static_cast<int>(std::ceil(
                                points_per_decade * (u1 - u0) / std::log(10.0))) +
                                1);
  const double du = (u1 - u0) / (n - 1);
  RadialGrid g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double etav = std::exp(u0 + i * du);
    g.nodes[i] = etav;
    // trapezoid in u = log(eta): d(eta) = eta du
    g.weights[i] = etav * du * ((i == 0 || i == n - 1) ? 0.5 : 1.0);
  }
  return g;
}

Complex polar_integrate(const std::function<Complex(const RealVector&)>& psi,
                        const HomogeneityPattern& pattern, const SphereQuadrature& quad,
                        const RadialGrid& radial) {
  if (radial.nodes.size() == 0) throw std::domain_error("polar_integrate: empty radial grid");
  if (quad.dim() != pattern.dim())
    throw std::domain_error("polar_integrate: quadrature/pattern dimension mismatch");
  const int d = pattern.dim();
  CompensatedSum<Complex> acc;
  RealVector xi(d);
  for (int i = 0; i < radial.nodes.size(); ++i) {
    const double etav = radial.nodes[i];
    const double radial_factor = radial.weights[i] * std::pow(etav, d - 1);
    CompensatedSum<Complex> shell;
    for (int k = 0; k < quad.size(); ++k) {
      for (int j = 0; j < d; ++j)
        xi[j] = std::pow(etav, pattern[j]) * quad.nodes(k, j);
      const double jac = pattern.exponents().dot(
          quad.nodes.row(k).cwiseProduct(quad.nodes.row(k)).transpose());
      shell.add(quad.weights[k] * jac * psi(xi));
    }
    acc.add(radial_factor * shell.value());
  }
  return acc.value();
}

}  // namespace aniso
