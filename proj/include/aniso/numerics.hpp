#pragma once

#include "aniso/types.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace aniso {

// Neumaier-compensated accumulator. All quadrature reductions in this
// library go through it so that results are reproducible to ~1e-16
// regardless of summation order.
template <class T>
class CompensatedSum {
 public:
  void add(T value) {
    T t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

template <>
class CompensatedSum<Complex> {
 public:
  void add(Complex value) {
    re_.add(value.real());
    im_.add(value.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

// Ordinary least squares y ~ slope*x + intercept.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, RealVector& nodes, RealVector& weights);

// Adaptive tanh-sinh quadrature of f on the finite interval [a, b].
// Handles integrable endpoint singularities; rel_tol is on the result.
Complex tanh_sinh(const std::function<Complex(double)>& f, double a, double b,
                  double rel_tol = 1e-12);

}  // namespace aniso
