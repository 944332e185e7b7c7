#include "aniso/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aniso {

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::domain_error("fit_line: need >= 2 matched samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  if (sxx == 0.0) throw std::domain_error("fit_line: degenerate abscissae");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

void gauss_legendre(int n, RealVector& nodes, RealVector& weights) {
  if (n < 1) throw std::domain_error("gauss_legendre: n >= 1");
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev initial guess, Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

Complex tanh_sinh(const std::function<Complex(double)>& f, double a, double b,
                  double rel_tol) {
  if (!(a < b)) throw std::domain_error("tanh_sinh: need a < b");
  const double c = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  // x = mid + c * tanh((pi/2) sinh(t)); weights c * (pi/2) cosh(t) / cosh^2(...)
  auto eval = [&](double t, Complex& val, bool& usable) {
    const double s = std::sinh(t);
    const double u = 0.5 * std::numbers::pi * s;
    const double x = mid + c * std::tanh(u);
    const double w = c * 0.5 * std::numbers::pi * std::cosh(t) / std::pow(std::cosh(u), 2);
    usable = (x > a && x < b && std::isfinite(w) && w > 0.0);
    if (usable) {
      val = w * f(x);
      usable = std::isfinite(val.real()) && std::isfinite(val.imag());
    }
  };

  const double t_max = 6.5;
  double h = 1.0;
  Complex prev{0.0, 0.0};
  // level 0
  {
    CompensatedSum<Complex> acc;
    for (double t = -t_max; t <= t_max + 1e-12; t += h) {
      Complex v;
      bool ok;
      eval(t, v, ok);
      if (ok) acc.add(v);
    }
    prev = h * acc.value();
  }
  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    CompensatedSum<Complex> acc;
    for (double t = -t_max + h; t <= t_max + 1e-12; t += 2 * h) {
      Complex v;
      bool ok;
      eval(t, v, ok);
      if (ok) acc.add(v);
    }
    const Complex cur = 0.5 * prev + h * acc.value();
    if (level >= 3 && std::abs(cur - prev) <= rel_tol * std::max(1e-300, std::abs(cur))) {
      return cur;
    }
    prev = cur;
  }
  return prev;
}

}  // namespace aniso
