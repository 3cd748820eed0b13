#pragma once

#include <cmath>
#include <stdexcept>

namespace lcb {

/// Error function, 2/sqrt(pi) * int_0^x exp(-t^2) dt.
double erf(double x);

/// Inverse of erf on (-1, 1); |erf(erf_inv(y)) - y| <= 1e-12.
/// Throws std::domain_error for |y| >= 1.
double erf_inv(double y);

/// Normalized Gaussian integral (1/sqrt(z)) int_0^sqrt(z) exp(-t^2/2) dt, z > 0.
double phi(double z);

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
template <class F>
double integrate_adaptive_simpson(const F& f, double a, double b, double tol = 1e-12, int max_depth = 50) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace lcb
