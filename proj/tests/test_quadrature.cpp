#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aniso/quadrature.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace aniso;

namespace {
constexpr double kPi = std::numbers::pi;

double quad_monomial(const SphereQuadrature& q, const std::vector<int>& alpha) {
  Complex acc = sphere_integrate(q, [&](const RealVector& z) {
    double v = 1.0;
    for (size_t j = 0; j < alpha.size(); ++j) v *= std::pow(z[static_cast<int>(j)], alpha[j]);
    return Complex(v, 0.0);
  });
  return acc.real();
}
}  // namespace

TEST_CASE("weights sum to the surface area") {
  CHECK(SphereQuadrature::circle(512).weights.sum() ==
        doctest::Approx(2.0 * kPi).epsilon(1e-13));
  CHECK(SphereQuadrature::sphere(64, 128).weights.sum() ==
        doctest::Approx(4.0 * kPi).epsilon(1e-13));
  for (int i = 0; i < 100; ++i) {
    CHECK(std::abs(SphereQuadrature::sphere(16, 32).nodes.row(i).norm() - 1.0) <= 1e-14);
  }
}

TEST_CASE("circle rule integrates trig monomials exactly") {
  const auto q = SphereQuadrature::circle(64);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> deg(0, 10);
  for (int rep = 0; rep < 40; ++rep) {
    const std::vector<int> alpha{deg(rng), deg(rng)};
    const bool odd = (alpha[0] % 2 == 1) || (alpha[1] % 2 == 1);
    const double expected = odd ? 0.0 : oracles::monomial_sphere_integral(alpha);
    CHECK(quad_monomial(q, alpha) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("product rule integrates spherical monomials exactly") {
  const auto q = SphereQuadrature::sphere(16, 32);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> deg(0, 6);
  for (int rep = 0; rep < 40; ++rep) {
    const std::vector<int> alpha{deg(rng), deg(rng), deg(rng)};
    const bool odd =
        (alpha[0] % 2 == 1) || (alpha[1] % 2 == 1) || (alpha[2] % 2 == 1);
    const double expected = odd ? 0.0 : oracles::monomial_sphere_integral(alpha);
    CHECK(quad_monomial(q, alpha) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("refinement preserves structure") {
  const auto q2 = SphereQuadrature::circle(128).refined();
  CHECK(q2.size() == 256);
  CHECK(q2.weights.sum() == doctest::Approx(2.0 * kPi).epsilon(1e-13));
  const auto q3 = SphereQuadrature::sphere(8, 16).refined();
  CHECK(q3.size() == 16 * 32);
  CHECK(q3.weights.sum() == doctest::Approx(4.0 * kPi).epsilon(1e-13));
  CHECK(q3.exactness_degree >= 15);
}

TEST_CASE("radial grid integrates powers") {
  const auto g = RadialGrid::geometric(0.5, 8.0, 1024);
  // integral of eta^2 d(eta) on [1/2, 8]
  double acc = 0.0;
  for (int i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * g.nodes[i] * g.nodes[i];
  CHECK(acc == doctest::Approx((512.0 - 0.125) / 3.0).epsilon(1e-5));
  // exact for 1/eta (trapezoid in log coordinates is exact on constants)
  double inv = 0.0;
  for (int i = 0; i < g.nodes.size(); ++i) inv += g.weights[i] / g.nodes[i];
  CHECK(inv == doctest::Approx(std::log(16.0)).epsilon(1e-13));
}
