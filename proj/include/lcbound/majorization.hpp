#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "lcbound/lattice_dist.hpp"
#include "lcbound/rational.hpp"

namespace lcb {

inline constexpr double kMajorizationTolerance = 1e-12;

/// Positive probabilities sorted nonincreasing.
class DescendingProfile {
 public:
  /// Sorts the input; throws if an entry is nonpositive or the total is off by more than 1e-12.
  explicit DescendingProfile(std::vector<double> probs);

  /// Drops zero atoms and sorts.
  static DescendingProfile of(const LatticeDistribution& d);

  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// min_k (sum_{i<=k} top_i - sum_{i<=k} bottom_i), shorter profile padded with zeros.
/// Nonnegative exactly when bottom is majorized by top.
double dominance_margin(const DescendingProfile& top, const DescendingProfile& bottom);

/// True iff bottom is majorized by top: every prefix sum of top dominates up to tol.
bool majorizes(const DescendingProfile& top, const DescendingProfile& bottom,
               double tol = kMajorizationTolerance);

/// A doubly stochastic matrix with matrix * source == target.
///
/// `labels` records which atom each coordinate of `target` belongs to: plain
/// indices for the point-mass construction, support points of the
/// distribution for the pushforward construction.
struct StochasticMatrixCertificate {
  std::size_t size = 0;
  std::vector<double> matrix;  // row-major, size x size
  std::vector<std::int64_t> labels;
  std::vector<double> source;
  std::vector<double> target;

  double operator()(std::size_t row, std::size_t col) const { return matrix[row * size + col]; }
};

/// Largest violation among row sums, column sums, negativity and matrix*source - target.
double certificate_residual(const StochasticMatrixCertificate& cert);

inline bool verify_certificate(const StochasticMatrixCertificate& cert, double tol = kMajorizationTolerance) {
  return certificate_residual(cert) <= tol;
}

/// Cyclic-shift matrix with rows (lambda_i, ..., lambda_{i-1}), lambda = p / total,
/// mapping (total, 0, ..., 0) onto p.
StochasticMatrixCertificate certificate_point_mass(std::span<const double> p, double total = 1.0);

/// Block-diagonal certificate that law(y) is majorized by law(f(y)).
/// Fibers are ordered by increasing label f(x), atoms inside a fiber by increasing x.
/// Throws std::invalid_argument if f is undefined on an atom of y.
StochasticMatrixCertificate certificate_pushforward(const LatticeDistribution& y,
                                                    const std::map<std::int64_t, std::int64_t>& f);

/// Law of f(Y) for a finite map f defined on the atoms of y.
LatticeDistribution pushforward(const LatticeDistribution& y, const std::map<std::int64_t, std::int64_t>& f);

struct SignReduction {
  std::vector<int> signs;
  std::vector<std::int64_t> integer_coefficients;
  std::int64_t scale = 1;
};

/// Clears denominators (scale = lcm) and reads off the signs.
SignReduction sign_reduction(std::span<const Rational> coefficients);

}  // namespace lcb
