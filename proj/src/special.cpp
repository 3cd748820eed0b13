#include "lcbound/special.hpp"

#include <numbers>

namespace lcb {

double erf(double x) { return std::erf(x); }

double erf_inv(double y) {
  if (!(std::abs(y) < 1.0)) throw std::domain_error("erf_inv requires |y| < 1");
  if (y == 0.0) return 0.0;
  if (y < 0.0) return -erf_inv(-y);
  // erf(6) rounds to one in double precision, so [0, 6] brackets every representable y < 1.
  double lo = 0.0;
  double hi = 6.0;
  double x = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double r = erf(x) - y;
    if (r == 0.0) return x;
    if (r > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double slope = 2.0 * std::numbers::inv_sqrtpi * std::exp(-x * x);
    double next = x - r / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, x)) return next;
    x = next;
  }
  return x;
}

double phi(double z) {
  if (!(z > 0.0)) throw std::domain_error("phi requires z > 0");
  const double s = std::sqrt(z / 2.0);
  if (s < 1e-4) {
    // Series keeps full precision near zero: 1 - z/6 + z^2/40.
    return 1.0 - z / 6.0 + z * z / 40.0;
  }
  return std::sqrt(std::numbers::pi / (2.0 * z)) * erf(s);
}

}  // namespace lcb
