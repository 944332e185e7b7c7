#include "aniso/builtins.hpp"

#include <cmath>

namespace aniso {

HomogeneityPattern gn_pattern() {
  RealVector a(3);
  a << 1.5, 0.75, 0.75;
  return HomogeneityPattern(a);
}

MatrixPolynomial gn_symbol() {
  std::vector<MatrixPolynomial::Term> terms(3);
  auto unit = [](Complex top, Complex bottom) {
    ComplexMatrix m(2, 1);
    m << top, bottom;
    return m;
  };
  terms[0].exponents = (IndexVector(3) << 1, 0, 0).finished();
  terms[0].coeff = unit(1.0, 0.0);
  terms[1].exponents = (IndexVector(3) << 0, 2, 0).finished();
  terms[1].coeff = unit(0.0, 1.0);
  terms[2].exponents = (IndexVector(3) << 0, 0, 2).finished();
  terms[2].coeff = unit(0.0, 1.0);
  return MatrixPolynomial::from_terms(2, 1, gn_pattern(), std::move(terms));
}

BundleMap line_bundle(int sphere_dim, int ell,
                      std::function<ComplexVector(const RealVector&)> u, BundleKind kind) {
  BundleMap b;
  b.fiber = [u = std::move(u)](const RealVector& zeta) {
    ComplexVector v = u(zeta);
    const double n = v.norm();
    if (n < 1e-14) throw std::domain_error("line_bundle: vanishing direction field");
    return Subspace::from_frame(v / n);
  };
  b.sphere_dim = sphere_dim;
  b.ambient_dim = ell;
  b.fiber_dim = 1;
  b.holder_exponent = 1.0;
  b.kind = kind;
  return b;
}

BundleMap gn_bundle() {
  return line_bundle(3, 2, [](const RealVector& z) {
    ComplexVector u(2);
    u << z[0], z[1] * z[1] + z[2] * z[2];
    return u;
  });
}

std::pair<BundleMap, HomogeneityPattern> kms_bundle(int kappa, int lambda, int big_n) {
  if (kappa < 1 || lambda < 1 || big_n < 1)
    throw std::domain_error("kms_bundle: kappa, lambda, N must be >= 1");
  const int ell = big_n + 1;
  BundleMap b;
  b.fiber = [kappa, lambda, big_n, ell](const RealVector& zeta) {
    if (zeta.size() != 2) throw std::domain_error("kms_bundle: d = 2 bundle");
    ComplexVector normal(ell);
    for (int j = 0; j <= big_n; ++j)
      normal[j] = std::pow(zeta[0], j * kappa) * std::pow(zeta[1], (big_n - j) * lambda);
    const double n = normal.norm();
    if (n < 1e-14) throw std::domain_error("kms_bundle: degenerate normal");
    normal /= n;
    // hyperplane = normal^perp
    ComplexMatrix pi_perp =
        ComplexMatrix::Identity(ell, ell) - normal * normal.adjoint();
    return Subspace::from_span(pi_perp, 1e-8);
  };
  b.sphere_dim = 2;
  b.ambient_dim = ell;
  b.fiber_dim = big_n;
  b.holder_exponent = 1.0;
  b.kind = BundleKind::ClosedForm;

  RealVector a(2);
  a << 2.0 * kappa / (kappa + lambda), 2.0 * lambda / (kappa + lambda);
  return {std::move(b), HomogeneityPattern(a)};
}

MatrixPolynomial gradient_symbol(int dim) {
  if (dim < 1) throw std::domain_error("gradient_symbol: dim >= 1");
  std::vector<MatrixPolynomial::Term> terms(dim);
  for (int j = 0; j < dim; ++j) {
    terms[j].exponents = IndexVector::Zero(dim);
    terms[j].exponents[j] = 1;
    terms[j].coeff = ComplexMatrix::Zero(dim, 1);
    terms[j].coeff(j, 0) = 1.0;
  }
  return MatrixPolynomial::from_terms(dim, 1, HomogeneityPattern::isotropic(dim),
                                      std::move(terms));
}

BundleMap constant_coordinate_bundle(int sphere_dim, int ell, int k) {
  if (k < 0 || k > ell) throw std::domain_error("constant_coordinate_bundle: bad k");
  ComplexMatrix frame = ComplexMatrix::Identity(ell, ell).leftCols(k);
  return BundleMap::constant(sphere_dim, Subspace::from_frame(std::move(frame)));
}

}  // namespace aniso
