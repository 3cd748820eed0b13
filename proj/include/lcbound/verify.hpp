#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcbound/entropy.hpp"
#include "lcbound/lattice_dist.hpp"
#include "lcbound/rational.hpp"

namespace lcb {

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

struct APResult {
  double value = 0.0;
  Rational witness_x{0};
};

/// P(Y in {x + m j : j = 1..l}).
double ap_probability(const LatticeDistribution& d, int length, Rational step, Rational anchor);

/// sup_x P(Y in {x + m j : j = 1..l}) by enumerating every anchor that puts at
/// least one progression point on an atom. Ties go to the smallest anchor.
APResult ap_sup_probability(const LatticeDistribution& d, int length, Rational step);

/// The same supremum computed as l * M(Y - m U_l), U_l uniform on {1..l}.
double ap_sup_probability_via_convolution(const LatticeDistribution& d, int length, Rational step);

/// Visits one representative per orbit of nonzero integer vectors in
/// [-box, box]^n under the symmetries that leave the law of a.X unchanged up
/// to relabeling atoms: global sign flip and permutations among identical
/// components, plus global scaling (gcd = 1) when `dedupe_scaling` is set.
void for_each_coefficient_vector(std::span<const LatticeDistribution> dists, int box, bool dedupe_scaling,
                                 const std::function<void(std::span<const std::int64_t>)>& visit);

struct SearchResult {
  double worst_value = 0.0;
  std::vector<std::int64_t> witness;
  std::size_t evaluated = 0;
};

/// Exhaustive max of M(a.X) over nonzero integer a with |a_i| <= box.
/// Among near ties (1e-12) the witness with the smallest l1 norm, then the
/// lexicographically largest, wins.
SearchResult worst_case_search(std::span<const LatticeDistribution> dists, int box,
                               std::size_t window_cap = kDefaultWindowCap);

// ---------------------------------------------------------------------------
// Sweep engine
// ---------------------------------------------------------------------------

struct SweepConfig {
  /// Pool for the log-concave sweeps; tuples are multisets of size 1..max_n.
  std::vector<DistributionSpec> families;
  int max_n = 4;
  int box = 3;
  std::vector<RenyiOrder> alphas;
  std::vector<int> ap_lengths{1, 2, 3, 4};
  std::vector<Rational> ap_steps{Rational(1), Rational(2), Rational(3, 2)};
  int ap_max_n = 4;
  /// Pool for the normalized two-point sweep.
  std::vector<DistributionSpec> two_point_families;
  int two_point_max_n = 4;
  int uniform_trials = 100;
  int uniform_max_n = 3;
  int uniform_max_set = 5;
  int uniform_range = 6;
  int pushforward_trials = 50;
  std::uint64_t seed = 20240601;
  double violation_tolerance = 1e-9;
  double exact_tolerance = 1e-12;
  unsigned jobs = 1;
  std::size_t window_cap = kDefaultWindowCap;

  /// Bernoulli(0.2, 0.5, 0.8), binomial(3, 1/2), uniform intervals of length 1..5,
  /// alpha grid {0, 0.5, 1, 1.5, 2, 3, inf}, Rademacher and two-point pool.
  static SweepConfig defaults();

  /// Throws std::invalid_argument on nonpositive caps or an empty family pool.
  void validate() const;
};

enum class CaseStatus { pass, fail, precondition_failed };
/// upper: achieved <= bound is certified; lower: achieved >= bound.
enum class Direction { upper, lower };

struct CaseRecord {
  std::string id;
  std::string theorem;
  std::string parameters;
  std::vector<DistributionSpec> components;
  double bound = 0.0;
  double achieved = 0.0;
  double slack = 0.0;  // margin in the certified direction
  Direction direction = Direction::upper;
  double tolerance = 1e-9;
  std::vector<std::int64_t> witness_a;
  std::optional<Rational> witness_x;
  CaseStatus status = CaseStatus::pass;
  std::string note;

  bool pass() const { return status == CaseStatus::pass; }
};

struct VerificationReport {
  std::vector<CaseRecord> cases;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t precondition_failed = 0;
  double wall_seconds = 0.0;

  bool all_pass() const { return failed == 0; }
};

/// Runs every certification family. Deterministic for a given config,
/// independent of `jobs`.
VerificationReport run_suite(const SweepConfig& config);

}  // namespace lcb
