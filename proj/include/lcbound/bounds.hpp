#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcbound/entropy.hpp"
#include "lcbound/lattice_dist.hpp"
#include "lcbound/rational.hpp"

namespace lcb {

/// Result of evaluating one closed-form bound.
struct BoundReport {
  std::string theorem;
  double bound = 0.0;      // probability bounds are clamped to at most 1
  double raw_bound = 0.0;  // value before clamping
  double c = 0.0;
  bool applicable = true;
  bool informative = true;  // false once a probability bound reaches 1
  std::string branch;
  std::vector<std::pair<std::string, double>> inputs;
};

/// Arithmetic progression {x + m j : j = 1..l}.
struct APParams {
  int length = 1;
  Rational step{1};
  Rational anchor{0};
};

/// Bernoulli variances (each in (0, 1/4]) and a progression length l >= 2.
struct FourierBoundInputs {
  std::vector<double> variances;
  int length = 2;
};

/// Variable taking x1 with probability 1 - theta and x2 with probability theta.
struct TwoPointSpec {
  std::int64_t x1;
  std::int64_t x2;
  double theta;
};

double total_variance(std::span<const LatticeDistribution> dists);
bool all_symmetric(std::span<const LatticeDistribution> dists);
bool all_log_concave(std::span<const LatticeDistribution> dists);

/// sup_x P(a.X = x) <= 1/sqrt(1 + c sum Var), c = 2 for symmetric components, else 1.
/// Throws std::invalid_argument for a non-log-concave component, or when
/// `symmetric` is requested but some component has no center of symmetry.
BoundReport bound_concentration(std::span<const LatticeDistribution> dists, bool symmetric);

/// N_alpha(a.X) >= 1 + c sum Var. c = 4 on 1 < alpha <= 2, 2 for symmetric components, else 1.
BoundReport bound_entropy_power(std::span<const LatticeDistribution> dists, RenyiOrder alpha, bool symmetric);

/// sup_x P(a.X in A_{l,m}(x)) <= l / sqrt(1 + c sum Var + c (l^2-1)/12).
BoundReport bound_ap(std::span<const LatticeDistribution> dists, int length, bool symmetric);

/// 1/sqrt(1 + 2 sum theta_i (1 - theta_i)).
BoundReport bound_two_point(std::span<const TwoPointSpec> specs);

/// Two-atom distributions only.
std::optional<TwoPointSpec> as_two_point(const LatticeDistribution& d);

/// Constant A with int_{-A}^{A} exp(-pi (l^2-1) t^2) dt = 1/l, in closed form.
double fourier_A(int length);

/// |int_{-A}^{A} exp(-pi (l^2-1) t^2) dt - 1/l| by adaptive quadrature.
double fourier_A_residual(int length);

/// Fourier-analytic progression bound for Bernoulli sums. Marked inapplicable
/// (not an error) when the Holder exponent p falls below 2.
BoundReport bound_bernoulli_ap(const FourierBoundInputs& inputs);

/// Collects variances when every component is a Bernoulli law on two adjacent integers.
std::optional<FourierBoundInputs> bernoulli_inputs(std::span<const LatticeDistribution> dists, int length);

/// sum_k N_alpha(U_k) - (n - 1) for uniforms on finite integer sets, 0 <= alpha <= 2.
BoundReport epi_uniform_rhs(std::span<const LatticeDistribution> dists, RenyiOrder alpha);

bool is_uniform_on_set(const LatticeDistribution& d);

/// 1 + 4(3 alpha - 1)/(alpha - 1) Var for alpha > 1 (12 Var at alpha = inf).
double renyi_upper_bound(double var, RenyiOrder alpha);

/// 2 pi e / 12 + 2 pi e Var.
double shannon_upper_bound(double var);

struct LogConcaveUpper {
  std::optional<double> renyi_upper;  // present only for alpha > 1
  double shannon_upper;
};

LogConcaveUpper upper_bounds_logconcave(const LatticeDistribution& d, RenyiOrder alpha);

/// 1/sqrt(1 + 12 sum Var); valid for arbitrary components.
double sharpness_lower(std::span<const LatticeDistribution> dists);

}  // namespace lcb
