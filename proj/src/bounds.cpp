#include "lcbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lcbound/special.hpp"

namespace lcb {

namespace {

void require_log_concave(std::span<const LatticeDistribution> dists) {
  if (dists.empty()) throw std::invalid_argument("at least one component is required");
  if (!all_log_concave(dists)) throw std::invalid_argument("component is not discrete log-concave");
}

void require_symmetric_flag(std::span<const LatticeDistribution> dists, bool symmetric) {
  if (symmetric && !all_symmetric(dists)) {
    throw std::invalid_argument("symmetric bound requested for a component without a center of symmetry");
  }
}

// l / sqrt(1 + c S + c (l^2 - 1)/12); with l = 1 this is exactly 1/sqrt(1 + c S).
double progression_value(double c, double total_var, int length) {
  const double l = static_cast<double>(length);
  return l / std::sqrt(1.0 + c * total_var + c * ((l * l - 1.0) / 12.0));
}

void set_probability(BoundReport& r, double raw) {
  r.raw_bound = raw;
  r.bound = std::min(raw, 1.0);
  r.informative = raw < 1.0;
}

}  // namespace

double total_variance(std::span<const LatticeDistribution> dists) {
  double s = 0.0;
  for (const auto& d : dists) s += variance(d);
  return s;
}

bool all_symmetric(std::span<const LatticeDistribution> dists) {
  return std::all_of(dists.begin(), dists.end(), [](const auto& d) { return symmetry_center(d).has_value(); });
}

bool all_log_concave(std::span<const LatticeDistribution> dists) {
  return std::all_of(dists.begin(), dists.end(), [](const auto& d) { return is_log_concave(d); });
}

BoundReport bound_concentration(std::span<const LatticeDistribution> dists, bool symmetric) {
  require_log_concave(dists);
  require_symmetric_flag(dists, symmetric);
  BoundReport r;
  r.theorem = "concentration";
  r.c = symmetric ? 2.0 : 1.0;
  r.branch = symmetric ? "symmetric" : "general";
  const double s = total_variance(dists);
  set_probability(r, progression_value(r.c, s, 1));
  r.inputs = {{"n", static_cast<double>(dists.size())}, {"sum_variance", s}};
  return r;
}

BoundReport bound_entropy_power(std::span<const LatticeDistribution> dists, RenyiOrder alpha, bool symmetric) {
  require_log_concave(dists);
  require_symmetric_flag(dists, symmetric);
  BoundReport r;
  r.theorem = "entropy_power";
  const double a = alpha.value();
  if (a > 1.0 && a <= 2.0) {
    r.c = 4.0;
    r.branch = "renyi_1_2";
  } else if (symmetric) {
    r.c = 2.0;
    r.branch = "symmetric";
  } else {
    r.c = 1.0;
    r.branch = "general";
  }
  const double s = total_variance(dists);
  r.raw_bound = 1.0 + r.c * s;
  r.bound = r.raw_bound;
  r.inputs = {{"alpha", a}, {"n", static_cast<double>(dists.size())}, {"sum_variance", s}};
  return r;
}

BoundReport bound_ap(std::span<const LatticeDistribution> dists, int length, bool symmetric) {
  if (length < 1) throw std::invalid_argument("progression length must be >= 1");
  require_log_concave(dists);
  require_symmetric_flag(dists, symmetric);
  BoundReport r;
  r.theorem = "arithmetic_progression";
  r.c = symmetric ? 2.0 : 1.0;
  r.branch = symmetric ? "symmetric" : "general";
  const double s = total_variance(dists);
  set_probability(r, progression_value(r.c, s, length));
  r.inputs = {{"l", static_cast<double>(length)}, {"n", static_cast<double>(dists.size())}, {"sum_variance", s}};
  return r;
}

std::optional<TwoPointSpec> as_two_point(const LatticeDistribution& d) {
  const auto support = d.support();
  if (support.size() != 2) return std::nullopt;
  return TwoPointSpec{support[0], support[1], d.at(support[1])};
}

BoundReport bound_two_point(std::span<const TwoPointSpec> specs) {
  if (specs.empty()) throw std::invalid_argument("at least one component is required");
  double s = 0.0;
  for (const auto& t : specs) {
    if (t.x1 == t.x2) throw std::invalid_argument("two-point component with x1 == x2");
    if (!(t.theta > 0.0 && t.theta < 1.0)) throw std::invalid_argument("two-point theta must lie in (0, 1)");
    s += t.theta * (1.0 - t.theta);
  }
  BoundReport r;
  r.theorem = "two_point";
  r.c = 2.0;
  r.branch = "normalized_bernoulli";
  set_probability(r, 1.0 / std::sqrt(1.0 + 2.0 * s));
  r.inputs = {{"n", static_cast<double>(specs.size())}, {"sum_normalized_variance", s}};
  return r;
}

double fourier_A(int length) {
  if (length < 2) throw std::invalid_argument("fourier_A requires l >= 2");
  const double l = static_cast<double>(length);
  const double k = l * l - 1.0;
  return erf_inv(std::sqrt(k) / l) / std::sqrt(std::numbers::pi * k);
}

double fourier_A_residual(int length) {
  const double a = fourier_A(length);
  const double l = static_cast<double>(length);
  const double rate = std::numbers::pi * (l * l - 1.0);
  const double integral =
      2.0 * integrate_adaptive_simpson([rate](double t) { return std::exp(-rate * t * t); }, 0.0, a, 1e-13);
  return std::abs(integral - 1.0 / l);
}

BoundReport bound_bernoulli_ap(const FourierBoundInputs& inputs) {
  if (inputs.length < 2) throw std::invalid_argument("Fourier progression bound requires l >= 2");
  if (inputs.variances.empty()) throw std::invalid_argument("at least one component is required");
  double s = 0.0;
  for (double v : inputs.variances) {
    if (!(v > 0.0 && v <= 0.25 + 1e-15)) throw std::invalid_argument("Bernoulli variance must lie in (0, 1/4]");
    s += v;
  }
  const double l = static_cast<double>(inputs.length);
  const double a = fourier_A(inputs.length);
  const double gauss = std::numbers::pi * (l * l - 1.0) * a * a;
  const double big_c = gauss + 6.0 * s;
  const double p = big_c / gauss;
  const double ap_coefficient = 4.0 * std::numbers::pi * a * a;

  BoundReport r;
  r.theorem = "bernoulli_ap";
  r.c = 2.0;
  r.branch = "fourier";
  r.applicable = p >= 2.0;
  const double raw = std::pow(2.0 * a, 1.0 / p) * l / std::sqrt(1.0 + 2.0 * s + (l * l - 1.0) / 12.0 * ap_coefficient);
  set_probability(r, raw);
  r.inputs = {{"l", l},
              {"n", static_cast<double>(inputs.variances.size())},
              {"sum_variance", s},
              {"A", a},
              {"C", big_c},
              {"p", p},
              {"ap_coefficient", ap_coefficient},
              {"bound_ap_c2", progression_value(2.0, s, inputs.length)}};
  return r;
}

std::optional<FourierBoundInputs> bernoulli_inputs(std::span<const LatticeDistribution> dists, int length) {
  FourierBoundInputs out;
  out.length = length;
  for (const auto& d : dists) {
    if (d.window() != 2) return std::nullopt;
    out.variances.push_back(variance(d));
  }
  if (out.variances.empty()) return std::nullopt;
  return out;
}

bool is_uniform_on_set(const LatticeDistribution& d) {
  const auto pmf = d.pmf();
  const double ref = pmf.front();
  return std::all_of(pmf.begin(), pmf.end(), [ref](double v) { return v == 0.0 || std::abs(v - ref) <= 1e-12; });
}

BoundReport epi_uniform_rhs(std::span<const LatticeDistribution> dists, RenyiOrder alpha) {
  if (dists.empty()) throw std::invalid_argument("at least one component is required");
  if (alpha.value() > 2.0) throw std::invalid_argument("uniform entropy power inequality requires alpha <= 2");
  double rhs = 0.0;
  for (const auto& d : dists) {
    if (!is_uniform_on_set(d)) throw std::invalid_argument("component is not uniform on a set of integers");
    rhs += entropy_power(d, alpha);
  }
  rhs -= static_cast<double>(dists.size()) - 1.0;
  BoundReport r;
  r.theorem = "uniform_epi";
  r.c = 12.0;
  r.branch = "uniform";
  r.raw_bound = rhs;
  r.bound = rhs;
  r.inputs = {{"alpha", alpha.value()}, {"n", static_cast<double>(dists.size())}};
  return r;
}

double renyi_upper_bound(double var, RenyiOrder alpha) {
  if (!(alpha.value() > 1.0)) throw std::invalid_argument("Renyi upper bound requires alpha > 1");
  const double a = alpha.value();
  const double coefficient = alpha.is_infinite() ? 12.0 : 4.0 * (3.0 * a - 1.0) / (a - 1.0);
  return 1.0 + coefficient * var;
}

double shannon_upper_bound(double var) {
  const double two_pi_e = 2.0 * std::numbers::pi * std::numbers::e;
  return two_pi_e / 12.0 + two_pi_e * var;
}

LogConcaveUpper upper_bounds_logconcave(const LatticeDistribution& d, RenyiOrder alpha) {
  if (!is_log_concave(d)) throw std::invalid_argument("distribution is not discrete log-concave");
  const double var = variance(d);
  LogConcaveUpper out{std::nullopt, shannon_upper_bound(var)};
  if (alpha.value() > 1.0) out.renyi_upper = renyi_upper_bound(var, alpha);
  return out;
}

double sharpness_lower(std::span<const LatticeDistribution> dists) {
  if (dists.empty()) throw std::invalid_argument("at least one component is required");
  return 1.0 / std::sqrt(1.0 + 12.0 * total_variance(dists));
}

}  // namespace lcb
