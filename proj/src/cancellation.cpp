#include "aniso/cancellation.hpp"

#include "aniso/numerics.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <random>

namespace aniso {

namespace {

std::vector<RealVector> quad_nodes(const SphereQuadrature& quad) {
  std::vector<RealVector> nodes;
  nodes.reserve(quad.size());
  for (int i = 0; i < quad.size(); ++i) nodes.push_back(quad.node(i));
  return nodes;
}

void fill_intersection(CancellationReport& report, const BundleMap& omega,
                       const SphereQuadrature& quad, double tol) {
  const auto base = intersect_family_detailed(omega, quad_nodes(quad), tol);
  const auto fine = intersect_family_detailed(omega, quad_nodes(quad.refined()), tol);
  report.V = base.V;
  report.v_dim = base.V.dim();
  report.is_canceling = (report.v_dim == 0);
  report.spectral_gap = base.spectral_gap;
  report.ill_conditioned = base.ill_conditioned;
  report.refinement_stable = (base.V.dim() == fine.V.dim());
}

}  // namespace

CancellationReport canceling_check(const BundleMap& omega, const SphereQuadrature& quad,
                                   double tol) {
  CancellationReport report;
  fill_intersection(report, omega, quad, tol);
  report.weakly_canceling = report.is_canceling;
  return report;
}

CancellationReport weak_cancellation_check(const FunctionalField& B, const BundleMap& omega,
                                           const HomogeneityPattern& pattern,
                                           const SphereQuadrature& quad, double tol) {
  if (quad.dim() != pattern.dim())
    throw std::domain_error("weak_cancellation_check: quadrature/pattern mismatch");
  CancellationReport report;
  fill_intersection(report, omega, quad, tol);

  // Cache rows and Jacobian weights over the nodes.
  const int n = quad.size();
  std::vector<ComplexRowVector> rows(n);
  std::vector<double> jac(n);
  for (int i = 0; i < n; ++i) {
    const RealVector z = quad.node(i);
    rows[i] = B.row(z);
    jac[i] = jacobian(z, pattern);
  }

  report.weakly_canceling = true;
  for (int c = 0; c < report.v_dim; ++c) {
    const ComplexVector v = report.V.frame().col(c);
    CompensatedSum<Complex> integral;
    CompensatedSum<double> size;
    for (int i = 0; i < n; ++i) {
      const Complex val = (rows[i] * v)(0);
      integral.add(quad.weights[i] * jac[i] * val);
      size.add(quad.weights[i] * jac[i] * std::abs(val));
    }
    const double scale = std::max(size.value(), 1e-300);
    const Complex normalized = integral.value() / scale;
    report.residuals.push_back(normalized);
    if (std::abs(normalized) >= tol) report.weakly_canceling = false;
  }
  return report;
}

namespace {

// Smooth scalar basis on S^{d-1}: trigonometric functions of the angle for
// d = 2, real spherical harmonics (via std::assoc_legendre) for d = 3.
std::function<double(const RealVector&, int)> sphere_basis(int dim) {
  if (dim == 2) {
    return [](const RealVector& z, int n) -> double {
      if (n == 0) return 1.0 / std::sqrt(2.0 * std::numbers::pi);
      const double theta = std::atan2(z[1], z[0]);
      const int k = (n + 1) / 2;
      const double norm = 1.0 / std::sqrt(std::numbers::pi);
      return norm * ((n % 2 == 1) ? std::cos(k * theta) : std::sin(k * theta));
    };
  }
  if (dim == 3) {
    return [](const RealVector& z, int n) -> double {
      // enumeration: n -> (l, m) with n = l^2 + (m + l)
      const int l = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
      const int m = n - l * l - l;
      const int am = std::abs(m);
      const double ct = std::clamp(z[2], -1.0, 1.0);
      const double phi = std::atan2(z[1], z[0]);
      const double log_ratio = std::lgamma(l - am + 1.0) - std::lgamma(l + am + 1.0);
      const double norm =
          std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi) * std::exp(log_ratio));
      const double p = std::assoc_legendre(l, am, ct);
      if (m == 0) return norm * p;
      const double sq2 = std::numbers::sqrt2;
      return (m > 0) ? sq2 * norm * p * std::cos(am * phi)
                     : sq2 * norm * p * std::sin(am * phi);
    };
  }
  throw std::domain_error("extend_functional: sphere basis only for d = 2, 3");
}

}  // namespace

FunctionalField extend_functional(const FunctionalField& B, const BundleMap& omega,
                                  const HomogeneityPattern& pattern,
                                  const SphereQuadrature& quad, int basis_size,
                                  double residual_tol) {
  const auto weak = weak_cancellation_check(B, omega, pattern, quad);
  if (!weak.weakly_canceling)
    throw std::domain_error(
        "extend_functional: B is not weakly canceling (hypothesis of the construction)");
  const int l = omega.ambient_dim;
  const int n = quad.size();
  const int d = pattern.dim();

  std::vector<ComplexMatrix> pi_perp(n);
  std::vector<ComplexRowVector> row_on_omega(n);
  std::vector<double> jw(n);
  for (int i = 0; i < n; ++i) {
    const RealVector z = quad.node(i);
    const ComplexMatrix pi = omega.projector(z);
    pi_perp[i] = ComplexMatrix::Identity(l, l) - pi;
    row_on_omega[i] = B.row(z) * pi;
    jw[i] = quad.weights[i] * jacobian(z, pattern);
  }

  // Target vector: <a, u> = - integral B(zeta)[pi u] J dsigma, i.e.
  // a^H = - integral (row pi) J, projected onto V^perp.
  ComplexRowVector moment = ComplexRowVector::Zero(l);
  for (int i = 0; i < n; ++i) moment += jw[i] * row_on_omega[i];
  ComplexVector target = -moment.adjoint();
  if (weak.v_dim > 0) {
    const auto& vf = weak.V.frame();
    target -= vf * (vf.adjoint() * target);
  }

  // Moment matrix of the correction field b(zeta) = sum c_{m,p} phi_m e_p:
  // column (m, p) is integral phi_m(zeta) pi_perp(zeta) e_p J dsigma.
  const auto basis = sphere_basis(d);
  ComplexMatrix M(l, basis_size * l);
  for (int m = 0; m < basis_size; ++m) {
    ComplexMatrix acc = ComplexMatrix::Zero(l, l);
    for (int i = 0; i < n; ++i) acc += jw[i] * basis(quad.node(i), m) * pi_perp[i];
    M.block(0, m * l, l, l) = acc;
  }
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(M);
  const ComplexVector coeff = cod.solve(target);  // minimum-norm least squares
  const double defect = (M * coeff - target).norm();
  const double scale = std::max(target.norm(), 1e-300);
  if (defect > residual_tol * std::max(1.0, scale))
    throw std::runtime_error("extend_functional: extension basis too small");

  FunctionalField out;
  out.bundle = omega;
  out.extended = true;
  out.order = B.order;
  out.order_admissible = B.order_admissible;
  auto base_row = B.row;
  out.row = [base_row, omega, coeff, basis, basis_size, l](const RealVector& zeta) {
    const ComplexMatrix pi = omega.projector(zeta);
    const ComplexMatrix perp = ComplexMatrix::Identity(l, l) - pi;
    ComplexVector b = ComplexVector::Zero(l);
    for (int m = 0; m < basis_size; ++m)
      b += basis(zeta, m) * coeff.segment(m * l, l);
    ComplexRowVector row = base_row(zeta) * pi + b.adjoint() * perp;
    return row;
  };
  return out;
}

MikhlinReport mikhlin_cancellation_check(const SphereKernel& K,
                                         const HomogeneityPattern& pattern,
                                         const SphereQuadrature& quad, double tol) {
  if (quad.dim() != pattern.dim())
    throw std::domain_error("mikhlin_cancellation_check: quadrature/pattern mismatch");
  CompensatedSum<Complex> integral;
  CompensatedSum<double> size;
  for (int i = 0; i < quad.size(); ++i) {
    const RealVector z = quad.node(i);
    const double jw = quad.weights[i] * jacobian(z, pattern);
    const Complex val = K(z);
    integral.add(jw * val);
    size.add(std::abs(jw) * std::abs(val));
  }
  MikhlinReport report;
  report.residual = integral.value();
  report.scale = std::max(size.value(), 1e-300);
  report.passes = std::abs(report.residual) < tol * report.scale;
  return report;
}

DiniReport dini_modulus(const SphereKernel& K, int dim, const std::vector<double>& scales,
                        int pairs_per_scale, unsigned long seed) {
  for (size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0 && scales[i] <= 1.0))
      throw std::domain_error("dini_modulus: scales must lie in (0, 1]");
    if (i > 0 && !(scales[i] < scales[i - 1]))
      throw std::domain_error("dini_modulus: scales must be strictly decreasing");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.5, 1.0);
  DiniReport report;
  report.scales = scales;
  report.modulus.assign(scales.size(), 0.0);
  for (size_t si = 0; si < scales.size(); ++si) {
    const double t = scales[si];
    double w = 0.0;
    for (int p = 0; p < pairs_per_scale; ++p) {
      const RealVector z1 = random_sphere_point(dim, rng);
      RealVector dir(dim);
      for (int j = 0; j < dim; ++j) dir[j] = gauss(rng);
      dir -= dir.dot(z1) * z1;
      if (dir.norm() < 1e-12) continue;
      RealVector z2 = z1 + t * unif(rng) * dir.normalized();
      z2.normalize();
      if ((z1 - z2).norm() > t) continue;
      w = std::max(w, std::abs(K(z1) - K(z2)));
    }
    report.modulus[si] = w;
  }
  // w(t) is nondecreasing in t; enforce on the sampled values.
  for (size_t i = 1; i < report.modulus.size(); ++i)
    report.modulus[i] = std::min(report.modulus[i], report.modulus[i - 1]);
  // upper sum of integral w(t)/t dt over [t_min, t_0]
  CompensatedSum<double> acc;
  for (size_t i = 1; i < scales.size(); ++i)
    acc.add(report.modulus[i - 1] * std::log(scales[i - 1] / scales[i]));
  report.dini_sum = acc.value();
  return report;
}

Complex bilinear_condition(const MatrixPolynomial& P1, const MatrixPolynomial& P2,
                           const SphereKernel& Q, const HomogeneityPattern& pattern,
                           const SphereQuadrature& quad, double elliptic_tol) {
  if (P1.rows() != 1 || P1.cols() != 1 || P2.rows() != 1 || P2.cols() != 1)
    throw std::domain_error("bilinear_condition: P1, P2 must be scalar symbols");
  CompensatedSum<Complex> acc;
  for (int i = 0; i < quad.size(); ++i) {
    const RealVector z = quad.node(i);
    const Complex p1 = P1(z)(0, 0);
    const Complex p2 = P2(z)(0, 0);
    if (std::abs(p1) < elliptic_tol || std::abs(p2) < elliptic_tol)
      throw std::domain_error("bilinear_condition: symbol vanishes on a node (non-elliptic)");
    const double jw = quad.weights[i] * jacobian(z, pattern);
    acc.add(jw * Q(z) / (p1 * std::conj(p2)));
  }
  return acc.value();
}

HomogeneityPattern bilinear_family_pattern(int kappa, int lambda) {
  RealVector a(2);
  a << 2.0 * lambda / (kappa + lambda), 2.0 * kappa / (kappa + lambda);
  return HomogeneityPattern(a);
}

namespace {

void check_line_condition(const BilinearFamily& fam) {
  const double lhs =
      (fam.alpha + 0.5) / fam.kappa + (fam.beta + 0.5) / fam.lambda;
  if (std::abs(lhs - 1.0) > 1e-10)
    throw std::domain_error(
        "bilinear family: exponents violate the line condition "
        "(alpha+1/2)/kappa + (beta+1/2)/lambda = 1");
  if (fam.alpha < 0.0 || fam.beta < 0.0)
    throw std::domain_error("bilinear family: alpha, beta must be nonnegative");
}

void check_param_elliptic(Complex tau, int kappa) {
  // tau must avoid the closure of { rho^kappa : rho real }
  const bool on_range = (kappa % 2 == 1) ? (tau.imag() == 0.0)
                                         : (tau.imag() == 0.0 && tau.real() >= 0.0);
  if (on_range)
    throw std::domain_error(
        "bilinear family: tau1/sigma1 lies on the real image of rho^kappa (non-elliptic)");
}

MatrixPolynomial family_symbol(int kappa, int lambda, Complex c,
                               const HomogeneityPattern& pattern) {
  std::vector<MatrixPolynomial::Term> terms(2);
  terms[0].exponents = (IndexVector(2) << kappa, 0).finished();
  terms[0].coeff = ComplexMatrix::Constant(1, 1, 1.0);
  terms[1].exponents = (IndexVector(2) << 0, lambda).finished();
  terms[1].coeff = ComplexMatrix::Constant(1, 1, -c);
  return MatrixPolynomial::from_terms(1, 1, pattern, std::move(terms));
}

// integral_0^inf rho^{2 alpha} / ((rho^k - tau)(rho^k - sigma)) drho
// = tanh-sinh core on [0, cutoff] + geometric-series tail.
Complex half_line_integral(double alpha, int kappa, Complex tau, Complex sigma,
                           double cutoff) {
  const double grow = std::max({1.0, std::abs(tau), std::abs(sigma)});
  const double c = std::max(cutoff, 4.0 * std::pow(grow, 1.0 / kappa));
  auto f = [&](double rho) -> Complex {
    const Complex rk = std::pow(rho, kappa);
    return std::pow(rho, 2.0 * alpha) / ((rk - tau) * (rk - sigma));
  };
  const Complex core = tanh_sinh(f, 0.0, c, 1e-13);

  // tail: 1/((u - tau)(u - sigma)) = u^{-2} sum_m c_m u^{-m}, u = rho^kappa,
  // c_m = sum_{i+j=m} tau^i sigma^j
  CompensatedSum<Complex> tail;
  Complex tau_pow = 1.0;
  for (int m = 0; m < 220; ++m) {
    // c_m
    Complex cm = 0.0;
    Complex ti = 1.0;
    for (int i = 0; i <= m; ++i) {
      cm += ti * std::pow(sigma, static_cast<double>(m - i));
      ti *= tau;
    }
    const double expo = 2.0 * alpha - 2.0 * kappa - kappa * m;
    // integral_c^inf rho^expo drho, expo < -1
    const Complex term = cm * (-std::pow(c, expo + 1.0) / (expo + 1.0));
    tail.add(term);
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(core))) break;
    (void)tau_pow;
  }
  return core + tail.value();
}

}  // namespace

Complex bilinear_family_sphere_integral(const BilinearFamily& fam, int n_nodes) {
  check_line_condition(fam);
  check_param_elliptic(fam.tau1, fam.kappa);
  check_param_elliptic(fam.sigma1, fam.kappa);
  const HomogeneityPattern pattern = bilinear_family_pattern(fam.kappa, fam.lambda);
  const auto P1 = family_symbol(fam.kappa, fam.lambda, fam.tau1, pattern);
  const auto P2 = family_symbol(fam.kappa, fam.lambda, fam.sigma1, pattern);
  const double alpha = fam.alpha, beta = fam.beta;
  SphereKernel Q = [alpha, beta](const RealVector& z) -> Complex {
    return std::pow(std::abs(z[0]), 2.0 * alpha) * std::pow(std::abs(z[1]), 2.0 * beta);
  };
  return bilinear_condition(P1, P2, Q, pattern, SphereQuadrature::circle(n_nodes));
}

Complex bilinear_reduced_integral(const BilinearFamily& fam, double cutoff) {
  check_line_condition(fam);
  check_param_elliptic(fam.tau1, fam.kappa);
  check_param_elliptic(fam.sigma1, fam.kappa);
  // split at 0; rho < 0 maps to (tau, sigma) -> ((-1)^kappa tau, ...)
  const double sign = (fam.kappa % 2 == 0) ? 1.0 : -1.0;
  const Complex pos = half_line_integral(fam.alpha, fam.kappa, fam.tau1, fam.sigma1, cutoff);
  const Complex neg =
      half_line_integral(fam.alpha, fam.kappa, sign * fam.tau1, sign * fam.sigma1, cutoff);
  return pos + neg;
}

Complex bilinear_reduced_combined(const BilinearFamily& fam, double cutoff) {
  const double parity = ((fam.lambda - fam.kappa) % 2 == 0) ? 1.0 : -1.0;
  BilinearFamily mirrored = fam;
  mirrored.tau1 *= parity;
  mirrored.sigma1 *= parity;
  const Complex first = bilinear_reduced_integral(fam, cutoff);
  const Complex second = bilinear_reduced_integral(mirrored, cutoff);
  const double front = 2.0 * fam.kappa / (fam.kappa + fam.lambda);
  return front * (first + second);
}

bool bilinear_predicted_zero(const BilinearFamily& fam) {
  const bool odd = (fam.kappa % 2 == 1) || (fam.lambda % 2 == 1);
  const bool pinned = std::abs(fam.alpha - (fam.kappa - 1) / 2.0) < 1e-12 &&
                      std::abs(fam.beta - (fam.lambda - 1) / 2.0) < 1e-12;
  const bool same_sign =
      fam.tau1.imag() != 0.0 && fam.sigma1.imag() != 0.0 &&
      fam.tau1.imag() * fam.sigma1.imag() > 0.0;
  return odd && pinned && same_sign;
}

}  // namespace aniso
