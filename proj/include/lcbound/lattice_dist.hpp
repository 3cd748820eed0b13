#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lcbound/rational.hpp"

namespace lcb {

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kRenormalizeTolerance = 1e-9;
inline constexpr std::size_t kDefaultWindowCap = 10'000'000;

/// Exact law of an integer-valued random variable with finite support.
///
/// The pmf is stored on the window offset, offset+1, ..., offset+size-1.
/// Both window ends carry positive mass; interior zeros are allowed so that
/// dilated supports (the law of k*X) are representable.
class LatticeDistribution {
 public:
  /// Validates: entries >= 0, ends > 0, total within 1e-12 of one.
  LatticeDistribution(std::int64_t offset, std::vector<double> pmf);

  static LatticeDistribution point_mass(std::int64_t at);

  std::int64_t offset() const { return offset_; }
  std::int64_t max_point() const { return offset_ + static_cast<std::int64_t>(pmf_.size()) - 1; }
  std::size_t window() const { return pmf_.size(); }
  std::span<const double> pmf() const { return pmf_; }

  /// Probability of the point k; zero outside the window.
  double at(std::int64_t k) const;

  /// Number of positive-probability points.
  std::size_t atom_count() const;

  /// Positive-probability support points in increasing order.
  std::vector<std::int64_t> support() const;

  friend bool operator==(const LatticeDistribution&, const LatticeDistribution&) = default;

 private:
  std::int64_t offset_;
  std::vector<double> pmf_;
};

/// Builds a distribution from raw values by dropping exact zeros at both
/// ends (underflow after long convolutions) and then validating.
LatticeDistribution trimmed_distribution(std::int64_t offset, std::vector<double> pmf);

/// Thrown when a computed support window would exceed the configured cap.
class WindowCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

namespace family {
struct Bernoulli { double p; };
/// P(X = +1) = p, P(X = -1) = 1 - p.
struct Rademacher { double p; };
struct Binomial { int n; double p; };
/// Uniform on {a, ..., b}.
struct UniformInterval { std::int64_t a; std::int64_t b; };
struct UniformSet { std::vector<std::int64_t> support; };
/// P(X = x1) = 1 - theta, P(X = x2) = theta.
struct TwoPoint { std::int64_t x1; std::int64_t x2; double theta; };
struct Explicit { std::int64_t offset; std::vector<double> probs; };
}  // namespace family

using DistributionSpec = std::variant<family::Bernoulli, family::Rademacher, family::Binomial,
                                      family::UniformInterval, family::UniformSet, family::TwoPoint,
                                      family::Explicit>;

LatticeDistribution make_distribution(const DistributionSpec& spec);

/// Short human label, e.g. "bernoulli(0.5)" or "uniform_interval(1,5)".
std::string describe(const DistributionSpec& spec);

struct Moments {
  double mean;
  double variance;
};

Moments moments(const LatticeDistribution& d);
inline double variance(const LatticeDistribution& d) { return moments(d).variance; }

/// Integer-interval support and p(j)^2 >= p(j-1)p(j+1) up to 1e-12 * max(p)^2.
bool is_log_concave(const LatticeDistribution& d);

/// Center (min+max)/2 when the pmf is a palindrome within 1e-12 per entry.
std::optional<double> symmetry_center(const LatticeDistribution& d);

/// Law of k*X. Throws std::invalid_argument for k == 0.
LatticeDistribution scale_support(const LatticeDistribution& d, std::int64_t k);

LatticeDistribution convolve(const LatticeDistribution& lhs, const LatticeDistribution& rhs);

/// Squeezed rearrangement: positive atoms moved onto 0, 1, ..., m in order.
LatticeDistribution squeeze(const LatticeDistribution& d);

struct WeightedSumSpec {
  std::vector<Rational> coefficients;
  std::vector<LatticeDistribution> components;

  /// Throws std::invalid_argument on zero coefficients or a length mismatch.
  void validate() const;
};

struct WeightedSumResult {
  LatticeDistribution distribution;  // law of scale * (a . X)
  std::int64_t scale;
  std::vector<std::int64_t> integer_coefficients;
};

WeightedSumResult weighted_sum(const WeightedSumSpec& spec, std::size_t window_cap = kDefaultWindowCap);

/// Law of sum_i k_i X_i for nonzero integer k_i.
LatticeDistribution integer_weighted_sum(std::span<const std::int64_t> coefficients,
                                         std::span<const LatticeDistribution> components,
                                         std::size_t window_cap = kDefaultWindowCap);

}  // namespace lcb
