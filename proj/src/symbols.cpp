#include "aniso/symbols.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

namespace aniso {

MatrixPolynomial MatrixPolynomial::from_terms(int rows, int cols, HomogeneityPattern pattern,
                                              std::vector<Term> terms) {
  if (rows < 1 || cols < 1) throw std::domain_error("MatrixPolynomial: empty shape");
  if (terms.empty()) throw std::domain_error("MatrixPolynomial: no terms");
  const int d = pattern.dim();
  double order = std::numeric_limits<double>::quiet_NaN();
  for (const auto& t : terms) {
    if (t.exponents.size() != d)
      throw std::domain_error("MatrixPolynomial: exponent arity mismatch");
    if ((t.exponents.array() < 0).any())
      throw std::domain_error("MatrixPolynomial: negative exponent");
    if (t.coeff.rows() != rows || t.coeff.cols() != cols)
      throw std::domain_error("MatrixPolynomial: coefficient shape mismatch");
    double m = 0.0;
    for (int j = 0; j < d; ++j) m += pattern[j] * t.exponents[j];
    if (std::isnan(order)) {
      order = m;
    } else if (std::abs(m - order) > 1e-12) {
      throw std::domain_error(
          "MatrixPolynomial: terms are not a-homogeneous of a common order");
    }
  }
  return MatrixPolynomial(rows, cols, std::move(pattern), std::move(terms), order);
}

ComplexMatrix MatrixPolynomial::operator()(const Eigen::Ref<const RealVector>& xi) const {
  if (xi.size() != pattern_.dim())
    throw std::domain_error("MatrixPolynomial: evaluation dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(rows_, cols_);
  for (const auto& t : terms_) {
    double mono = 1.0;
    for (int j = 0; j < xi.size(); ++j) {
      const int k = t.exponents[j];
      if (k == 0) continue;
      mono *= std::pow(xi[j], k);
    }
    out += mono * t.coeff;
  }
  return out;
}

EllipticityReport ellipticity_check(const MatrixPolynomial& A, const SphereQuadrature& quad,
                                    double tol) {
  if (A.rows() < A.cols())
    throw std::domain_error("ellipticity_check: requires rows >= cols");
  if (quad.dim() != A.pattern().dim())
    throw std::domain_error("ellipticity_check: quadrature dimension mismatch");
  EllipticityReport report;
  report.min_singular_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < quad.size(); ++i) {
    const RealVector z = quad.node(i);
    Eigen::JacobiSVD<ComplexMatrix> svd(A(z));
    const double smin = svd.singularValues().minCoeff();
    if (smin < report.min_singular_value) {
      report.min_singular_value = smin;
      report.argmin_node = z;
    }
  }
  report.is_elliptic = report.min_singular_value > tol;
  return report;
}

BundleMap image_bundle(const MatrixPolynomial& A, double tol) {
  const auto report = ellipticity_check(A, SphereQuadrature::standard(A.pattern().dim()), tol);
  if (!report.is_elliptic)
    throw NotElliptic("image_bundle: symbol is not elliptic", report.argmin_node);
  BundleMap b;
  const int cols = A.cols();
  b.fiber = [A, cols, tol](const RealVector& zeta) {
    Subspace s = Subspace::from_span(A(zeta), tol);
    if (s.dim() != cols)
      throw NotElliptic("image_bundle: rank drop at node", zeta);
    return s;
  };
  b.sphere_dim = A.pattern().dim();
  b.ambient_dim = A.rows();
  b.fiber_dim = cols;
  b.holder_exponent = 1.0;  // polynomial symbol, elliptic: smooth bundle
  b.kind = BundleKind::ImageOfSymbol;
  return b;
}

FunctionalField functional_from_operator(const MatrixPolynomial& A, const MatrixPolynomial& P,
                                         double tol) {
  if (P.rows() != 1) throw std::domain_error("functional_from_operator: P must be a row symbol");
  if (P.cols() != A.cols())
    throw std::domain_error("functional_from_operator: P/A column mismatch");
  if ((P.pattern().exponents() - A.pattern().exponents()).norm() > 1e-12)
    throw std::domain_error("functional_from_operator: A and P carry different patterns");

  FunctionalField f;
  f.bundle = image_bundle(A, tol);
  f.row = [A, P, tol](const RealVector& zeta) -> ComplexRowVector {
    const ComplexMatrix Az = A(zeta);
    // pinv(A) = R^{-1} Q^H from the thin QR; guards the conditioning of
    // (A*A)^{-1} A* without forming the normal equations.
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(Az);
    if (qr.rank() < Az.cols())
      throw NotElliptic("functional_from_operator: singular A(zeta)", zeta);
    (void)tol;
    ComplexMatrix pinv = qr.solve(ComplexMatrix::Identity(Az.rows(), Az.rows()));
    return P(zeta) * pinv;
  };
  f.extended = false;
  f.order = P.order() - A.order();
  f.order_admissible =
      std::abs(P.order() - (A.order() - A.pattern().dim())) <= 1e-9;
  return f;
}

FunctionalField coordinate_functional(const BundleMap& omega, int j) {
  if (j < 0 || j >= omega.ambient_dim)
    throw std::domain_error("coordinate_functional: index out of range");
  FunctionalField f;
  f.bundle = omega;
  f.row = [omega, j](const RealVector& zeta) -> ComplexRowVector {
    // e_j^H pi = j-th row of the (Hermitian) projector
    return omega.projector(zeta).row(j);
  };
  f.extended = false;
  f.order = 0.0;
  f.order_admissible = true;
  return f;
}

}  // namespace aniso
