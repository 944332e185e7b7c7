#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aniso/builtins.hpp"
#include "aniso/subspace.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <numbers>
#include <random>

using namespace aniso;

namespace {

Subspace random_subspace(int l, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(l, k);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = Complex(g(rng), g(rng));
  return Subspace::from_span(m);
}

ComplexVector cvec(std::initializer_list<Complex> vals) {
  ComplexVector v(static_cast<int>(vals.size()));
  int i = 0;
  for (auto z : vals) v[i++] = z;
  return v;
}

std::vector<RealVector> circle_nodes(int n) {
  std::vector<RealVector> nodes;
  for (int i = 0; i < n; ++i) {
    RealVector z(2);
    const double t = 2.0 * std::numbers::pi * i / n;
    z << std::cos(t), std::sin(t);
    nodes.push_back(z);
  }
  return nodes;
}

std::vector<RealVector> sphere_nodes(int n, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::vector<RealVector> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(random_sphere_point(3, rng));
  return nodes;
}

}  // namespace

TEST_CASE("projector examples and laws") {
  CHECK((Subspace::full(2).projection() - ComplexMatrix::Identity(2, 2)).norm() == 0.0);

  const auto e1 = Subspace::from_frame(cvec({1.0, 0.0}));
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK((e1.projection() - expected).norm() <= 1e-15);

  const auto diag = Subspace::from_frame(cvec({std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2}));
  CHECK((diag.projection() - ComplexMatrix::Constant(2, 2, 0.5)).norm() <= 1e-14);

  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 30; ++rep) {
    const auto s = random_subspace(5, 2, rng);
    const ComplexMatrix pi = s.projection();
    CHECK((pi * pi - pi).norm() <= 1e-10);
    CHECK((pi - pi.adjoint()).norm() <= 1e-12);
    CHECK(std::abs(pi.trace().real() - s.dim()) <= 1e-10);
  }
  CHECK_THROWS_AS(Subspace::from_frame(ComplexMatrix::Constant(2, 1, 1.0)),
                  std::domain_error);
}

TEST_CASE("distance is the HS metric") {
  std::mt19937_64 rng(22);
  const auto s = random_subspace(4, 2, rng);
  CHECK(distance(s, s) <= 1e-12);
  const auto e1 = Subspace::from_frame(cvec({1.0, 0.0}));
  const auto e2 = Subspace::from_frame(cvec({0.0, 1.0}));
  CHECK(distance(e1, e2) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
  for (int rep = 0; rep < 30; ++rep) {
    const auto a = random_subspace(4, 2, rng);
    const auto b = random_subspace(4, 2, rng);
    const auto c = random_subspace(4, 1, rng);
    CHECK(distance(a, b) == doctest::Approx(distance(b, a)).epsilon(1e-12));
    CHECK(distance(a, b) <= distance(a, c) + distance(c, b) + 1e-10);
  }
  CHECK_THROWS_AS(distance(random_subspace(3, 1, rng), random_subspace(4, 1, rng)),
                  std::domain_error);
}

TEST_CASE("pairwise intersection against the rank oracle") {
  std::mt19937_64 rng(23);
  const auto s = random_subspace(4, 2, rng);
  const auto self = intersect(s, s, 1e-8);
  CHECK(self.dim() == s.dim());
  CHECK(distance(self, s) <= 1e-8);

  const auto e1 = Subspace::from_frame(cvec({1.0, 0.0}));
  const auto e2 = Subspace::from_frame(cvec({0.0, 1.0}));
  CHECK(intersect(e1, e2, 1e-8).dim() == 0);

  // span{e1,e2} cap span{e2,e3} = span{e2} in C^3
  ComplexMatrix u = ComplexMatrix::Zero(3, 2), v = ComplexMatrix::Zero(3, 2);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  v(1, 0) = 1.0;
  v(2, 1) = 1.0;
  const auto su = Subspace::from_frame(u);
  const auto sv = Subspace::from_frame(v);
  const auto inter = intersect(su, sv, 1e-8);
  CHECK(inter.dim() == oracles::intersection_dim(u, v));
  CHECK(inter.dim() == 1);
  CHECK(inter.contains(cvec({0.0, 1.0, 0.0})));

  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_subspace(5, 3, rng);
    const auto b = random_subspace(5, 3, rng);
    const auto ab = intersect(a, b, 1e-8);
    CHECK(ab.dim() == oracles::intersection_dim(a.frame(), b.frame()));
    for (int c = 0; c < ab.dim(); ++c) {
      const ComplexVector w = ab.frame().col(c);
      CHECK(a.contains(w, 1e-7));
      CHECK(b.contains(w, 1e-7));
    }
  }
}

TEST_CASE("family intersection: constant, GN, generic line bundles") {
  // constant bundle reproduces its fiber
  std::mt19937_64 rng(24);
  const auto value = random_subspace(3, 2, rng);
  const auto constant = BundleMap::constant(2, value);
  const auto got = intersect_family(constant, circle_nodes(16));
  CHECK(got.dim() == 2);
  CHECK(distance(got, value) <= 1e-8);

  // the GN bundle is canceling
  CHECK(intersect_family(gn_bundle(), sphere_nodes(200, 3)).dim() == 0);

  // line bundle spanned by (1, zeta_1): two distinct fibers already
  // intersect trivially (3-node rank oracle)
  const auto lines = line_bundle(2, 2, [](const RealVector& z) {
    return static_cast<ComplexVector>(cvec({1.0, Complex(z[0], 0.0)}));
  });
  const auto nodes3 = circle_nodes(3);
  CHECK(oracles::intersection_dim(lines(nodes3[0]).frame(), lines(nodes3[1]).frame()) == 0);
  CHECK(intersect_family(lines, nodes3).dim() == 0);
  CHECK(intersect_family(lines, circle_nodes(64)).dim() == 0);

  CHECK_THROWS_AS(intersect_family(lines, {}), std::domain_error);
}

TEST_CASE("family intersection is monotone and matches pairwise intersect") {
  std::mt19937_64 rng(25);
  // bundle interpolating between two planes in C^4
  const auto s0 = random_subspace(4, 2, rng);
  const auto s1 = random_subspace(4, 2, rng);
  BundleMap b;
  b.sphere_dim = 2;
  b.ambient_dim = 4;
  b.fiber_dim = 2;
  b.fiber = [s0, s1](const RealVector& z) {
    const double t = 0.5 * (1.0 + z[0]);
    const ComplexMatrix blend =
        (1.0 - t) * s0.projection() + t * s1.projection();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(blend);
    return Subspace::from_frame(es.eigenvectors().rightCols(2));
  };

  auto nodes = circle_nodes(8);
  int prev_dim = 4;
  std::vector<RealVector> used;
  for (const auto& z : nodes) {
    used.push_back(z);
    const int dim = intersect_family(b, used).dim();
    CHECK(dim <= prev_dim);
    prev_dim = dim;
  }

  // two-node family agrees with the pairwise intersection
  const std::vector<RealVector> two{nodes[0], nodes[3]};
  const auto fam = intersect_family(b, two);
  const auto pair = intersect(b(two[0]), b(two[1]));
  CHECK(fam.dim() == pair.dim());
  CHECK(distance(fam, pair) <= 1e-6);
}

TEST_CASE("spectral gap flags near-threshold intersections") {
  // fibers tilted by an angle comparable to the decision threshold
  const double tilt = 3e-4;
  BundleMap b;
  b.sphere_dim = 2;
  b.ambient_dim = 2;
  b.fiber_dim = 1;
  b.fiber = [tilt](const RealVector& z) {
    const double t = tilt * z[1];
    return Subspace::from_frame(
        static_cast<ComplexMatrix>(cvec({std::cos(t), std::sin(t)})));
  };
  const auto detail = intersect_family_detailed(b, circle_nodes(32), 1e-8);
  CHECK(detail.ill_conditioned);

  const auto clean = intersect_family_detailed(BundleMap::constant(2, Subspace::full(2)),
                                               circle_nodes(32), 1e-8);
  CHECK(!clean.ill_conditioned);
  CHECK(clean.V.dim() == 2);
}

TEST_CASE("holder estimates: exact, smooth, and rough bundles") {
  std::mt19937_64 rng(26);
  const auto constant = BundleMap::constant(2, random_subspace(3, 1, rng));
  const auto exact = holder_estimate(constant, 100);
  CHECK(exact.exact);

  const auto gn = holder_estimate(gn_bundle(), 400, 5);
  CHECK(!gn.exact);
  CHECK(gn.alpha >= 0.9);
  CHECK(gn.alpha <= 1.1);

  // Weierstrass-type angle field: Holder-1/2 at every point
  const auto rough = line_bundle(2, 2, [](const RealVector& z) {
    const double theta = std::atan2(z[1], z[0]);
    double angle = 0.0;
    for (int k = 0; k < 22; ++k)
      angle += 0.35 * std::pow(2.0, -0.5 * k) * std::cos(std::pow(2.0, k) * theta);
    return static_cast<ComplexVector>(cvec({std::cos(angle), std::sin(angle)}));
  });
  const auto fit = holder_estimate(rough, 600, 5);
  CHECK(!fit.exact);
  CHECK(fit.alpha == doctest::Approx(0.5).epsilon(0.2));

  CHECK_THROWS_AS(holder_estimate(constant, 5), std::domain_error);
}
