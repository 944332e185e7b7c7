#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aniso/builtins.hpp"
#include "aniso/symbols.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace aniso;

namespace {
RealVector vec(std::initializer_list<double> vals) {
  RealVector x(static_cast<int>(vals.size()));
  int i = 0;
  for (double v : vals) x[i++] = v;
  return x;
}
}  // namespace

TEST_CASE("gradient symbol evaluation") {
  const auto grad = gradient_symbol(2);
  const ComplexMatrix m = grad(vec({3, 4}));
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 1);
  CHECK(m(0, 0) == Complex(3.0, 0.0));
  CHECK(m(1, 0) == Complex(4.0, 0.0));
  CHECK(grad.order() == doctest::Approx(1.0));
}

TEST_CASE("GN symbol: single-term evaluation and homogeneity") {
  const auto A = gn_symbol();
  CHECK(A.order() == doctest::Approx(1.5).epsilon(1e-14));
  // the second component is the (x2, x3)-Laplacian block: value 1 at
  // zeta = (0,1,0) as a plain polynomial (the 2 pi i factors belong to the
  // operator application, not the symbol)
  const ComplexMatrix at = A(vec({0, 1, 0}));
  CHECK(at(0, 0) == Complex(0.0, 0.0));
  CHECK(at(1, 0) == Complex(1.0, 0.0));

  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.2, 5.0);
  for (int rep = 0; rep < 50; ++rep) {
    RealVector xi(3);
    for (int j = 0; j < 3; ++j) xi[j] = g(rng);
    const double t = u(rng);
    const ComplexMatrix lhs = A(dilate(t, xi, A.pattern()));
    const ComplexMatrix rhs = std::pow(t, -A.order()) * A(xi);
    CHECK((lhs - rhs).norm() <= 1e-10 * (rhs.norm() + 1e-30));
  }
}

TEST_CASE("from_terms rejects inhomogeneous symbols") {
  std::vector<MatrixPolynomial::Term> terms(2);
  terms[0].exponents = (IndexVector(2) << 1, 0).finished();
  terms[0].coeff = ComplexMatrix::Ones(1, 1);
  terms[1].exponents = (IndexVector(2) << 0, 2).finished();
  terms[1].coeff = ComplexMatrix::Ones(1, 1);
  CHECK_THROWS_AS(MatrixPolynomial::from_terms(1, 1, HomogeneityPattern::isotropic(2),
                                               terms),
                  std::domain_error);
  // but admissible under the pattern that balances the orders
  RealVector a(2);
  a << 4.0 / 3, 2.0 / 3;
  CHECK(MatrixPolynomial::from_terms(1, 1, HomogeneityPattern(a), terms).order() ==
        doctest::Approx(4.0 / 3).epsilon(1e-12));
}

TEST_CASE("ellipticity: gradient, constructed degeneracy, GN") {
  const auto quad2 = SphereQuadrature::circle(256);
  const auto grad_report = ellipticity_check(gradient_symbol(2), quad2);
  CHECK(grad_report.is_elliptic);
  CHECK(grad_report.min_singular_value == doctest::Approx(1.0).epsilon(1e-12));

  // xi_1 * (1; 0): rank drops at zeta_1 = 0
  std::vector<MatrixPolynomial::Term> terms(1);
  terms[0].exponents = (IndexVector(2) << 1, 0).finished();
  terms[0].coeff = ComplexMatrix::Zero(2, 1);
  terms[0].coeff(0, 0) = 1.0;
  const auto degenerate =
      MatrixPolynomial::from_terms(2, 1, HomogeneityPattern::isotropic(2), terms);
  const auto bad = ellipticity_check(degenerate, quad2);
  CHECK(!bad.is_elliptic);
  CHECK(std::abs(bad.argmin_node[0]) <= 2e-2);

  // GN system under (3/2, 3/4, 3/4): min singular value is sqrt(3)/2
  // (oracle: minimize u + (1-u)^2 over u = zeta_1^2 in [0, 1])
  const auto gn_report = ellipticity_check(gn_symbol(), SphereQuadrature::sphere(128, 256));
  CHECK(gn_report.is_elliptic);
  CHECK(gn_report.min_singular_value ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-3));
}

TEST_CASE("image bundle: gradient line bundle and the GN bundle") {
  const auto grad_bundle = image_bundle(gradient_symbol(2));
  std::mt19937_64 rng(33);
  for (int rep = 0; rep < 20; ++rep) {
    const RealVector z = random_sphere_point(2, rng);
    ComplexVector dir(2);
    dir << z[0], z[1];
    CHECK(grad_bundle(z).contains(dir, 1e-10));
    CHECK(grad_bundle(z).dim() == 1);
  }

  const auto gnb = image_bundle(gn_symbol());
  for (int rep = 0; rep < 20; ++rep) {
    const RealVector z = random_sphere_point(3, rng);
    ComplexVector dir(2);
    dir << z[0], z[1] * z[1] + z[2] * z[2];
    CHECK(gnb(z).contains(dir, 1e-10));
    CHECK(gnb(z).dim() == 1);
    CHECK(distance(gnb(z), gn_bundle()(z)) <= 1e-10);
  }

  std::vector<MatrixPolynomial::Term> terms(1);
  terms[0].exponents = (IndexVector(2) << 1, 0).finished();
  terms[0].coeff = ComplexMatrix::Zero(2, 1);
  terms[0].coeff(0, 0) = 1.0;
  const auto degenerate =
      MatrixPolynomial::from_terms(2, 1, HomogeneityPattern::isotropic(2), terms);
  CHECK_THROWS_AS(image_bundle(degenerate), NotElliptic);
}

TEST_CASE("functional_from_operator: gradient with scalar P") {
  // P = identity row (order 0): B(zeta)[w] = zeta^* w on the circle
  std::vector<MatrixPolynomial::Term> pterms(1);
  pterms[0].exponents = IndexVector::Zero(2);
  pterms[0].coeff = ComplexMatrix::Ones(1, 1);
  const auto P =
      MatrixPolynomial::from_terms(1, 1, HomogeneityPattern::isotropic(2), pterms);
  const auto B = functional_from_operator(gradient_symbol(2), P);
  CHECK(!B.order_admissible);  // order 0 != m - d = -1; bilinear-only use
  CHECK(B.order == doctest::Approx(-1.0));

  std::mt19937_64 rng(34);
  for (int rep = 0; rep < 20; ++rep) {
    const RealVector z = random_sphere_point(2, rng);
    const ComplexRowVector row = B.row(z);
    CHECK(std::abs(row(0) - Complex(z[0], 0.0)) <= 1e-12);
    CHECK(std::abs(row(1) - Complex(z[1], 0.0)) <= 1e-12);
  }
}

TEST_CASE("functional_from_operator: algebraic identity B(A v) = P v") {
  const auto A = gn_symbol();
  std::vector<MatrixPolynomial::Term> pterms(1);
  pterms[0].exponents = (IndexVector(3) << 1, 0, 0).finished();
  pterms[0].coeff = ComplexMatrix::Ones(1, 1);
  const auto P = MatrixPolynomial::from_terms(1, 1, gn_pattern(), pterms);
  const auto B = functional_from_operator(A, P);

  std::mt19937_64 rng(35);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 30; ++rep) {
    const RealVector z = random_sphere_point(3, rng);
    const ComplexVector v = ComplexVector::Constant(1, Complex(g(rng), g(rng)));
    const Complex lhs = (B.row(z) * (A(z) * v))(0);
    const Complex rhs = (P(z) * v)(0, 0);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (std::abs(rhs) + 1.0));
  }
}

TEST_CASE("functional_from_operator: stacked-derivative fixture at zeta=(1,0)") {
  // A = (xi_1; xi_2), P = xi_1: at zeta = (1, 0), A^*A = 1 and
  // B = P (A^*A)^{-1} A^* = (1, 0)
  const auto A = gradient_symbol(2);
  std::vector<MatrixPolynomial::Term> pterms(1);
  pterms[0].exponents = (IndexVector(2) << 1, 0).finished();
  pterms[0].coeff = ComplexMatrix::Ones(1, 1);
  const auto P =
      MatrixPolynomial::from_terms(1, 1, HomogeneityPattern::isotropic(2), pterms);
  const auto B = functional_from_operator(A, P);
  const ComplexRowVector row = B.row(vec({1, 0}));
  CHECK(std::abs(row(0) - Complex(1.0, 0.0)) <= 1e-13);
  CHECK(std::abs(row(1)) <= 1e-13);
}

TEST_CASE("kms bundle: hyperplane against the raw defining relation") {
  auto [bundle, pattern] = kms_bundle(1, 1, 1);
  CHECK(pattern.exponents().sum() == doctest::Approx(2.0));
  CHECK(pattern[0] == doctest::Approx(1.0));
  CHECK(bundle.ambient_dim == 2);
  CHECK(bundle.fiber_dim == 1);

  std::mt19937_64 rng(36);
  for (int rep = 0; rep < 20; ++rep) {
    const RealVector z = random_sphere_point(2, rng);
    if (std::abs(z[0]) < 0.05 || std::abs(z[1]) < 0.05) continue;
    // raw normal per the defining sum: (zeta_2^2, zeta_1 zeta_2)
    ComplexVector raw(2);
    raw << z[1] * z[1], z[0] * z[1];
    const Subspace fiber = bundle(z);
    CHECK(fiber.dim() == 1);
    CHECK(std::abs((raw.adjoint() * fiber.frame())(0, 0)) <= 1e-10);
  }

  auto [b23, p23] = kms_bundle(2, 3, 2);
  CHECK(p23[0] == doctest::Approx(4.0 / 5));
  CHECK(p23[1] == doctest::Approx(6.0 / 5));
  CHECK(b23.ambient_dim == 3);
  CHECK(b23.fiber_dim == 2);
  // continuity across the poles zeta_2 = 0 (reduced normal)
  const RealVector pole = vec({1, 0});
  CHECK(b23(pole).dim() == 2);
  CHECK_THROWS_AS(kms_bundle(0, 1, 1), std::domain_error);
}

TEST_CASE("coordinate functional rows are projector rows") {
  const auto omega = gn_bundle();
  const auto B = coordinate_functional(omega, 1);
  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 10; ++rep) {
    const RealVector z = random_sphere_point(3, rng);
    const ComplexMatrix pi = omega.projector(z);
    CHECK((B.row(z) - pi.row(1)).norm() <= 1e-13);
    // on fiber vectors it acts as the plain coordinate
    const ComplexVector w = omega(z).frame().col(0);
    CHECK(std::abs((B.row(z) * w)(0) - w(1)) <= 1e-12);
  }
  CHECK_THROWS_AS(coordinate_functional(omega, 5), std::domain_error);
}
