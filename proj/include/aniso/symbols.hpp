#pragma once

#include "aniso/pattern.hpp"
#include "aniso/quadrature.hpp"
#include "aniso/subspace.hpp"
#include "aniso/types.hpp"

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aniso {

/// Matrix-valued polynomial symbol in d variables,
///   A(xi) = sum_terms coeff * prod_j xi_j^{k_j},
/// a-homogeneous of order m: every term satisfies sum_j a_j k_j = m, so
/// A(Dil_t(xi)) = t^{-m} A(xi). Symbols are plain polynomials in xi; the
/// correspondence with derivatives (the (2 pi i xi)^k factors) is applied
/// only when a symbol acts on grid functions.
class MatrixPolynomial {
 public:
  struct Term {
    IndexVector exponents;  // d nonnegative integers
    ComplexMatrix coeff;    // rows x cols
  };

  static MatrixPolynomial from_terms(int rows, int cols, HomogeneityPattern pattern,
                                     std::vector<Term> terms);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double order() const { return order_; }
  const HomogeneityPattern& pattern() const { return pattern_; }
  const std::vector<Term>& terms() const { return terms_; }

  ComplexMatrix operator()(const Eigen::Ref<const RealVector>& xi) const;

 private:
  MatrixPolynomial(int rows, int cols, HomogeneityPattern pattern,
                   std::vector<Term> terms, double order)
      : rows_(rows), cols_(cols), pattern_(std::move(pattern)),
        terms_(std::move(terms)), order_(order) {}
  int rows_, cols_;
  HomogeneityPattern pattern_;
  std::vector<Term> terms_;
  double order_;
};

struct EllipticityReport {
  bool is_elliptic = false;
  double min_singular_value = 0.0;
  RealVector argmin_node;
};

class NotElliptic : public std::runtime_error {
 public:
  NotElliptic(std::string msg, RealVector node)
      : std::runtime_error(std::move(msg)), argmin_node(std::move(node)) {}
  RealVector argmin_node;
};

/// Smallest singular value of A(zeta) over the quadrature nodes.
EllipticityReport ellipticity_check(const MatrixPolynomial& A,
                                    const SphereQuadrature& quad, double tol = 1e-8);

/// The bundle zeta -> Im A(zeta) = column space of A(zeta). Throws
/// NotElliptic (carrying the offending node) when the rank drops.
BundleMap image_bundle(const MatrixPolynomial& A, double tol = 1e-8);

/// A linear functional on the fibers of a bundle: zeta -> row covector of
/// length l. The row is stored pre-composed with pi_{Omega(zeta)} unless
/// `extended` is set, in which case it is a genuine functional on all of
/// C^l (the extension B-tilde of the construction in cancellation.hpp).
struct FunctionalField {
  std::function<ComplexRowVector(const RealVector&)> row;
  BundleMap bundle;
  bool extended = false;
  /// a-order of the xi-homogeneous extension of the field (order(P) -
  /// order(A) for operator-derived fields); NaN when not applicable.
  double order = std::numeric_limits<double>::quiet_NaN();
  /// True when order == order(A) - d, i.e. the field is admissible as the
  /// symbol of an order-(-d) multiplier acting as P on W_1^Omega.
  bool order_admissible = true;

  Complex operator()(const RealVector& zeta, const ComplexVector& v) const {
    return (row(zeta) * v)(0);
  }
};

/// B(zeta) = P(zeta) (A*(zeta) A(zeta))^{-1} A*(zeta), computed through a
/// QR factorization of A(zeta). On Im A(zeta) it satisfies
/// B(zeta)[A(zeta) v] = P(zeta) v.
FunctionalField functional_from_operator(const MatrixPolynomial& A,
                                         const MatrixPolynomial& P,
                                         double tol = 1e-8);

/// The constant coordinate functional v -> v_j restricted to the bundle
/// (row = e_j^H pi_{Omega(zeta)}).
FunctionalField coordinate_functional(const BundleMap& omega, int j);

}  // namespace aniso
