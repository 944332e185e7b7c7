#pragma once

#include "aniso/pattern.hpp"
#include "aniso/subspace.hpp"
#include "aniso/symbols.hpp"

#include <utility>

namespace aniso {

/// The d=3 example bundle Omega(zeta) = C . (zeta_1, zeta_2^2 + zeta_3^2)
/// in C^2, with pattern (3/2, 3/4, 3/4). Canceling.
BundleMap gn_bundle();
HomogeneityPattern gn_pattern();
/// The underlying 2x1 symbol (xi_1; xi_2^2 + xi_3^2).
MatrixPolynomial gn_symbol();

/// The two-variable hyperplane bundle
///   Omega(zeta) = { v in C^{N+1} : sum_j zeta_1^{j kappa}
///                   zeta_2^{(N+1-j) lambda} v_j = 0 },
/// realized through the reduced normal n_j = zeta_1^{j kappa}
/// zeta_2^{(N-j) lambda} (the common zeta_2^lambda factor of the raw
/// coefficients is dropped so the hyperplane extends continuously to
/// zeta_2 = 0). Returned with the pattern
/// a = (2 kappa / (kappa + lambda), 2 lambda / (kappa + lambda)).
std::pair<BundleMap, HomogeneityPattern> kms_bundle(int kappa, int lambda, int big_n);

/// Gradient symbol in d variables: (xi_1; ...; xi_d), isotropic pattern.
MatrixPolynomial gradient_symbol(int dim);

/// Constant bundle span{e_1, ..., e_k} in C^l over S^{d-1}.
BundleMap constant_coordinate_bundle(int sphere_dim, int ell, int k);

/// Line bundle zeta -> C . u(zeta) for a nonvanishing vector field u.
BundleMap line_bundle(int sphere_dim, int ell,
                      std::function<ComplexVector(const RealVector&)> u,
                      BundleKind kind = BundleKind::ClosedForm);

}  // namespace aniso
