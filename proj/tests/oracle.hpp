#pragma once

// Test-only oracles, independent of the library's quadrature path: a
// recursive adaptive Simpson rule plus closed forms.  Expected values in the
// tests are computed here, never copied from the implementation.

#include <cmath>
#include <functional>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

// adaptive Simpson on [a, b]; integrand must be finite on the closed interval
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol, 48);
}

// int_0^1 f with integrable endpoint behavior handled by a tiny inset
inline double integrate01_open(const std::function<double(double)>& f, double tol = 1e-12) {
  return integrate(f, 1e-12, 1.0 - 1e-12, tol);
}

// E_{1/2}(-x) = exp(x^2) erfc(x)
inline double ml_half(double x) { return std::exp(x * x) * std::erfc(x); }

}  // namespace oracle
