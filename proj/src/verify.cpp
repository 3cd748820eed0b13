#include "lcbound/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lcbound/bounds.hpp"
#include "lcbound/majorization.hpp"

namespace lcb {

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

namespace {

// Anchor x and step m = r/s live on the lattice (1/s)Z; hits are the points
// s*x + r*j that are multiples of s.
double ap_mass_scaled(const LatticeDistribution& d, int length, std::int64_t r, std::int64_t s, std::int64_t x_scaled) {
  double total = 0.0;
  for (int j = 1; j <= length; ++j) {
    const std::int64_t point = checked_add(x_scaled, checked_mul(r, j));
    if (point % s != 0) continue;
    total += d.at(point / s);
  }
  return total;
}

void require_progression(int length, const Rational& step) {
  if (length < 1) throw std::invalid_argument("progression length must be >= 1");
  if (step.is_zero()) throw std::invalid_argument("progression step must be nonzero");
}

}  // namespace

double ap_probability(const LatticeDistribution& d, int length, Rational step, Rational anchor) {
  require_progression(length, step);
  // Bring anchor and step onto a common denominator.
  const std::int64_t s = checked_lcm(step.den(), anchor.den());
  const std::int64_t r = checked_mul(step.num(), s / step.den());
  const std::int64_t x = checked_mul(anchor.num(), s / anchor.den());
  return ap_mass_scaled(d, length, r, s, x);
}

APResult ap_sup_probability(const LatticeDistribution& d, int length, Rational step) {
  require_progression(length, step);
  const std::int64_t r = step.num();
  const std::int64_t s = step.den();
  std::vector<std::int64_t> anchors;
  const auto support = d.support();
  anchors.reserve(support.size() * static_cast<std::size_t>(length));
  for (std::int64_t y : support) {
    const std::int64_t ys = checked_mul(y, s);
    for (int j = 1; j <= length; ++j) anchors.push_back(ys - checked_mul(r, j));
  }
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  APResult best{-1.0, Rational(0)};
  for (std::int64_t x : anchors) {
    const double mass = ap_mass_scaled(d, length, r, s, x);
    if (mass > best.value) best = {mass, Rational(x, s)};
  }
  return best;
}

double ap_sup_probability_via_convolution(const LatticeDistribution& d, int length, Rational step) {
  require_progression(length, step);
  const auto scaled = scale_support(d, step.den());
  const auto uniform = make_distribution(family::UniformInterval{1, length});
  const auto shifted = convolve(scaled, scale_support(uniform, -step.num()));
  return static_cast<double>(length) * m_functional(shifted);
}

void for_each_coefficient_vector(std::span<const LatticeDistribution> dists, int box, bool dedupe_scaling,
                                 const std::function<void(std::span<const std::int64_t>)>& visit) {
  if (box < 1) throw std::invalid_argument("coefficient box must be >= 1");
  const std::size_t n = dists.size();
  if (n == 0) return;

  // group[i] = index of the first component identical to component i.
  std::vector<std::size_t> group(n);
  for (std::size_t i = 0; i < n; ++i) {
    group[i] = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (dists[j] == dists[i]) {
        group[i] = group[j];
        break;
      }
    }
  }
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[group[i]].push_back(i);

  auto group_sorted = [&](std::vector<std::int64_t> v) {
    for (const auto& m : members) {
      if (m.size() < 2) continue;
      std::vector<std::int64_t> vals;
      for (std::size_t i : m) vals.push_back(v[i]);
      std::sort(vals.begin(), vals.end(), std::greater<>());
      for (std::size_t k = 0; k < m.size(); ++k) v[m[k]] = vals[k];
    }
    return v;
  };

  std::vector<std::int64_t> values;
  for (int v = box; v >= -box; --v) {
    if (v != 0) values.push_back(v);
  }
  std::vector<std::size_t> digit(n, 0);
  std::vector<std::int64_t> a(n);
  std::vector<std::int64_t> neg(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) a[i] = values[digit[i]];
    bool canonical = true;
    if (dedupe_scaling) {
      std::int64_t g = 0;
      for (auto x : a) g = std::gcd(g, x);
      canonical = (g == 1);
    }
    if (canonical) canonical = (group_sorted(a) == a);
    if (canonical) {
      for (std::size_t i = 0; i < n; ++i) neg[i] = -a[i];
      canonical = !(a < group_sorted(neg));
    }
    if (canonical) visit(a);

    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digit[pos] < values.size()) break;
      digit[pos] = 0;
      if (pos == 0) return;
    }
  }
}

namespace {

std::int64_t l1_norm(std::span<const std::int64_t> a) {
  std::int64_t s = 0;
  for (auto x : a) s += x < 0 ? -x : x;
  return s;
}

// Tracks the best value over coefficient vectors with a deterministic witness.
class Extremum {
 public:
  explicit Extremum(bool maximize) : maximize_(maximize) {}

  void offer(double value, std::span<const std::int64_t> a, std::optional<Rational> x = std::nullopt) {
    bool take = false;
    if (!has_) {
      take = true;
    } else {
      const double gain = maximize_ ? value - value_ : value_ - value;
      if (gain > 1e-12) {
        take = true;
      } else if (gain >= -1e-12) {
        const auto l1 = l1_norm(a);
        const auto best_l1 = l1_norm(witness_);
        take = l1 < best_l1 ||
               (l1 == best_l1 && std::lexicographical_compare(witness_.begin(), witness_.end(), a.begin(), a.end()));
      }
    }
    if (take) {
      has_ = true;
      value_ = value;
      witness_.assign(a.begin(), a.end());
      anchor_ = x;
    }
  }

  bool has() const { return has_; }
  double value() const { return value_; }
  const std::vector<std::int64_t>& witness() const { return witness_; }
  const std::optional<Rational>& anchor() const { return anchor_; }

 private:
  bool maximize_;
  bool has_ = false;
  double value_ = 0.0;
  std::vector<std::int64_t> witness_;
  std::optional<Rational> anchor_;
};

}  // namespace

SearchResult worst_case_search(std::span<const LatticeDistribution> dists, int box, std::size_t window_cap) {
  if (dists.empty()) throw std::invalid_argument("at least one component is required");
  Extremum best(true);
  std::size_t count = 0;
  for_each_coefficient_vector(dists, box, true, [&](std::span<const std::int64_t> a) {
    best.offer(m_functional(integer_weighted_sum(a, dists, window_cap)), a);
    ++count;
  });
  return {best.value(), best.witness(), count};
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

SweepConfig SweepConfig::defaults() {
  SweepConfig c;
  c.families = {family::Bernoulli{0.2},         family::Bernoulli{0.5},         family::Bernoulli{0.8},
                family::Binomial{3, 0.5},       family::UniformInterval{0, 0},  family::UniformInterval{0, 1},
                family::UniformInterval{0, 2},  family::UniformInterval{0, 3},  family::UniformInterval{0, 4}};
  c.alphas = {RenyiOrder::of(0.0), RenyiOrder::of(0.5), RenyiOrder::of(1.0), RenyiOrder::of(1.5),
              RenyiOrder::of(2.0), RenyiOrder::of(3.0), RenyiOrder::infinity()};
  c.two_point_families = {family::Rademacher{0.5}, family::Rademacher{0.3}, family::Bernoulli{0.3},
                          family::TwoPoint{0, 2, 0.4}};
  return c;
}

void SweepConfig::validate() const {
  if (families.empty()) throw std::invalid_argument("sweep needs at least one component family");
  if (max_n < 1 || box < 1) throw std::invalid_argument("max_n and box must be positive");
  if (ap_max_n < 0 || two_point_max_n < 0) throw std::invalid_argument("tuple caps must be nonnegative");
  if (uniform_trials < 0 || pushforward_trials < 0) throw std::invalid_argument("trial counts must be nonnegative");
  if (uniform_max_n < 1 || uniform_max_set < 1 || uniform_range < 0) {
    throw std::invalid_argument("uniform trial parameters must be positive");
  }
  if (2 * uniform_range + 1 < uniform_max_set) throw std::invalid_argument("uniform range too small for set size");
  for (int l : ap_lengths) {
    if (l < 1) throw std::invalid_argument("progression lengths must be >= 1");
  }
  for (const auto& m : ap_steps) {
    if (m.is_zero()) throw std::invalid_argument("progression steps must be nonzero");
  }
  // A negative violation tolerance demands that much margin; useful for locating sharp cases.
  if (!std::isfinite(violation_tolerance)) throw std::invalid_argument("violation tolerance must be finite");
  if (!(exact_tolerance >= 0.0)) throw std::invalid_argument("negative exact tolerance");
  if (window_cap < 1) throw std::invalid_argument("window cap must be positive");
}

namespace {

struct Pool {
  std::vector<DistributionSpec> specs;
  std::vector<LatticeDistribution> dists;
};

Pool build_pool(const std::vector<DistributionSpec>& specs) {
  Pool p;
  p.specs = specs;
  for (const auto& s : specs) p.dists.push_back(make_distribution(s));
  return p;
}

std::vector<std::vector<std::size_t>> multisets(std::size_t pool_size, int max_n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
    if (!cur.empty()) out.push_back(cur);
    if (left == 0) return;
    for (std::size_t i = start; i < pool_size; ++i) {
      cur.push_back(i);
      rec(i, left - 1);
      cur.pop_back();
    }
  };
  rec(0, max_n);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

CaseRecord make_record(std::string theorem, std::string id, std::string parameters,
                       std::vector<DistributionSpec> components, double bound, double achieved, Direction direction,
                       double tolerance) {
  CaseRecord r;
  r.theorem = std::move(theorem);
  r.id = std::move(id);
  r.parameters = std::move(parameters);
  r.components = std::move(components);
  r.bound = bound;
  r.achieved = achieved;
  r.direction = direction;
  r.tolerance = tolerance;
  r.slack = direction == Direction::upper ? bound - achieved : achieved - bound;
  r.status = r.slack >= -tolerance ? CaseStatus::pass : CaseStatus::fail;
  return r;
}

CaseRecord precondition_record(std::string theorem, std::string id, std::string parameters,
                               std::vector<DistributionSpec> components, Direction direction, std::string note) {
  CaseRecord r;
  r.theorem = std::move(theorem);
  r.id = std::move(id);
  r.parameters = std::move(parameters);
  r.components = std::move(components);
  r.bound = std::numeric_limits<double>::quiet_NaN();
  r.achieved = std::numeric_limits<double>::quiet_NaN();
  r.slack = std::numeric_limits<double>::quiet_NaN();
  r.direction = direction;
  r.status = CaseStatus::precondition_failed;
  r.note = std::move(note);
  return r;
}

std::string alpha_param(const RenyiOrder& a) { return "alpha=" + a.to_string(); }

std::string ap_param(int l, const Rational& m) { return "l=" + std::to_string(l) + ",m=" + m.to_string(); }

class SuiteBuilder {
 public:
  explicit SuiteBuilder(const SweepConfig& config)
      : cfg_(config), pool_(build_pool(config.families)), two_pool_(build_pool(config.two_point_families)) {}

  std::vector<std::function<std::vector<CaseRecord>()>> tasks() {
    std::vector<std::function<std::vector<CaseRecord>()>> out;
    const auto tuples = multisets(pool_.dists.size(), cfg_.max_n);
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      out.push_back([this, t, idx = tuples[t]] { return main_tuple(t, idx); });
    }
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      if (static_cast<int>(tuples[t].size()) > cfg_.ap_max_n) continue;
      if (cfg_.ap_lengths.empty() || cfg_.ap_steps.empty()) break;
      out.push_back([this, t, idx = tuples[t]] { return ap_tuple(t, idx); });
    }
    if (!two_pool_.dists.empty()) {
      const auto two_tuples = multisets(two_pool_.dists.size(), cfg_.two_point_max_n);
      for (std::size_t t = 0; t < two_tuples.size(); ++t) {
        out.push_back([this, t, idx = two_tuples[t]] { return two_point_tuple(t, idx); });
      }
    }
    std::mt19937_64 rng(cfg_.seed);
    for (int k = 0; k < cfg_.uniform_trials; ++k) {
      auto specs = uniform_trial(rng, k);
      out.push_back([this, k, specs = std::move(specs)] { return uniform_case(k, specs); });
    }
    for (int k = 0; k < cfg_.pushforward_trials; ++k) {
      auto trial = pushforward_trial(rng);
      out.push_back([this, k, trial = std::move(trial)] { return pushforward_case(k, trial); });
    }
    return out;
  }

 private:
  struct PushforwardTrial {
    std::vector<std::size_t> idx;
    std::vector<std::int64_t> a;
    std::map<std::int64_t, std::int64_t> f;
  };

  std::vector<DistributionSpec> specs_of(const Pool& pool, const std::vector<std::size_t>& idx) const {
    std::vector<DistributionSpec> out;
    for (auto i : idx) out.push_back(pool.specs[i]);
    return out;
  }

  std::vector<LatticeDistribution> dists_of(const Pool& pool, const std::vector<std::size_t>& idx) const {
    std::vector<LatticeDistribution> out;
    for (auto i : idx) out.push_back(pool.dists[i]);
    return out;
  }

  std::vector<CaseRecord> main_tuple(std::size_t t, const std::vector<std::size_t>& idx) const {
    const auto specs = specs_of(pool_, idx);
    const auto dists = dists_of(pool_, idx);
    const bool lc = all_log_concave(dists);
    const bool sym = all_symmetric(dists);
    const std::string tag = "/t" + std::to_string(t);
    const double tol = cfg_.violation_tolerance;

    Extremum worst_m(true);
    std::vector<Extremum> min_power(cfg_.alphas.size(), Extremum(false));
    Extremum min_margin(false);
    std::map<std::vector<std::int64_t>, DescendingProfile> sign_profiles;

    for_each_coefficient_vector(dists, cfg_.box, true, [&](std::span<const std::int64_t> a) {
      const auto sum = integer_weighted_sum(a, dists, cfg_.window_cap);
      worst_m.offer(m_functional(sum), a);
      for (std::size_t k = 0; k < cfg_.alphas.size(); ++k) min_power[k].offer(entropy_power(sum, cfg_.alphas[k]), a);
      if (lc) {
        std::vector<std::int64_t> signs;
        for (auto x : a) signs.push_back(x > 0 ? 1 : -1);
        auto it = sign_profiles.find(signs);
        if (it == sign_profiles.end()) {
          it = sign_profiles.emplace(signs, DescendingProfile::of(integer_weighted_sum(signs, dists, cfg_.window_cap)))
                   .first;
        }
        min_margin.offer(dominance_margin(it->second, DescendingProfile::of(sum)), a);
      }
    });

    std::vector<CaseRecord> out;
    auto with_witness = [](CaseRecord r, const Extremum& e) {
      r.witness_a = e.witness();
      return r;
    };

    if (lc) {
      const auto b = bound_concentration(dists, sym);
      auto r = make_record("concentration", "concentration" + tag, "c=" + std::to_string(static_cast<int>(b.c)), specs,
                           b.bound, worst_m.value(), Direction::upper, tol);
      out.push_back(with_witness(std::move(r), worst_m));
    } else {
      out.push_back(precondition_record("concentration", "concentration" + tag, "", specs, Direction::upper,
                                        "component is not log-concave"));
    }

    for (std::size_t k = 0; k < cfg_.alphas.size(); ++k) {
      const auto& alpha = cfg_.alphas[k];
      const std::string id = "entropy_power" + tag + "/" + alpha_param(alpha);
      if (lc) {
        const auto b = bound_entropy_power(dists, alpha, sym);
        auto r = make_record("entropy_power", id, alpha_param(alpha) + ",c=" + std::to_string(static_cast<int>(b.c)),
                             specs, b.bound, min_power[k].value(), Direction::lower, tol);
        out.push_back(with_witness(std::move(r), min_power[k]));
      } else {
        out.push_back(precondition_record("entropy_power", id, alpha_param(alpha), specs, Direction::lower,
                                          "component is not log-concave"));
      }
    }

    if (lc) {
      auto r = make_record("sign_dominance", "sign_dominance" + tag, "", specs, 0.0, min_margin.value(),
                           Direction::lower, cfg_.exact_tolerance);
      out.push_back(with_witness(std::move(r), min_margin));
    } else {
      out.push_back(precondition_record("sign_dominance", "sign_dominance" + tag, "", specs, Direction::lower,
                                        "component is not log-concave"));
    }

    {
      auto r = make_record("sharpness_lower", "sharpness_lower" + tag, "", specs, sharpness_lower(dists),
                           worst_m.value(), Direction::lower, tol);
      out.push_back(with_witness(std::move(r), worst_m));
    }

    // Plain sum X_1 + ... + X_n.
    const std::vector<std::int64_t> ones(dists.size(), 1);
    const auto plain = integer_weighted_sum(ones, dists, cfg_.window_cap);
    const double m = m_functional(plain);
    const double var = variance(plain);
    {
      auto r = make_record("lc_sandwich_lower", "lc_sandwich_lower" + tag, "", specs, 1.0 / std::sqrt(1.0 + 12.0 * var),
                           m, Direction::lower, tol);
      r.witness_a = ones;
      out.push_back(std::move(r));
    }
    if (lc) {
      auto r = make_record("lc_sandwich_upper", "lc_sandwich_upper" + tag, "", specs, 1.0 / std::sqrt(1.0 + var), m,
                           Direction::upper, tol);
      r.witness_a = ones;
      out.push_back(std::move(r));
      if (sym) {
        auto rs = make_record("lc_sandwich_symmetric", "lc_sandwich_symmetric" + tag, "", specs,
                              1.0 / std::sqrt(1.0 + 2.0 * var), m, Direction::upper, tol);
        rs.witness_a = ones;
        out.push_back(std::move(rs));
      }
      for (const auto& alpha : cfg_.alphas) {
        if (alpha.value() < 1.0) continue;
        const double power = entropy_power(plain, alpha);
        const auto up = upper_bounds_logconcave(plain, alpha);
        auto rs = make_record("logconcave_upper_shannon", "logconcave_upper_shannon" + tag + "/" + alpha_param(alpha),
                              alpha_param(alpha), specs, up.shannon_upper, power, Direction::upper, tol);
        rs.witness_a = ones;
        out.push_back(std::move(rs));
        if (up.renyi_upper) {
          auto rr = make_record("logconcave_upper_renyi", "logconcave_upper_renyi" + tag + "/" + alpha_param(alpha),
                                alpha_param(alpha), specs, *up.renyi_upper, power, Direction::upper, tol);
          rr.witness_a = ones;
          out.push_back(std::move(rr));
        }
      }
    } else {
      out.push_back(precondition_record("lc_sandwich_upper", "lc_sandwich_upper" + tag, "", specs, Direction::upper,
                                        "component is not log-concave"));
    }
    return out;
  }

  std::vector<CaseRecord> ap_tuple(std::size_t t, const std::vector<std::size_t>& idx) const {
    const auto specs = specs_of(pool_, idx);
    const auto dists = dists_of(pool_, idx);
    const bool lc = all_log_concave(dists);
    const bool sym = all_symmetric(dists);
    const std::string tag = "/t" + std::to_string(t) + "/";

    const std::size_t nl = cfg_.ap_lengths.size();
    const std::size_t nm = cfg_.ap_steps.size();
    std::vector<Extremum> best(nl * nm, Extremum(true));
    std::vector<Extremum> worst_gap(nl * nm, Extremum(true));

    for_each_coefficient_vector(dists, cfg_.box, false, [&](std::span<const std::int64_t> a) {
      const auto sum = integer_weighted_sum(a, dists, cfg_.window_cap);
      for (std::size_t i = 0; i < nl; ++i) {
        for (std::size_t j = 0; j < nm; ++j) {
          const int l = cfg_.ap_lengths[i];
          const auto& step = cfg_.ap_steps[j];
          const auto hit = ap_sup_probability(sum, l, step);
          const double conv = ap_sup_probability_via_convolution(sum, l, step);
          best[i * nm + j].offer(hit.value, a, hit.witness_x);
          worst_gap[i * nm + j].offer(std::abs(hit.value - conv), a);
        }
      }
    });

    std::vector<CaseRecord> out;
    for (std::size_t i = 0; i < nl; ++i) {
      for (std::size_t j = 0; j < nm; ++j) {
        const int l = cfg_.ap_lengths[i];
        const auto& step = cfg_.ap_steps[j];
        const auto& e = best[i * nm + j];
        const std::string param = ap_param(l, step);
        if (lc) {
          const auto b = bound_ap(dists, l, sym);
          auto r = make_record("arithmetic_progression", "arithmetic_progression" + tag + param, param, specs, b.bound,
                               e.value(), Direction::upper, cfg_.violation_tolerance);
          r.witness_a = e.witness();
          r.witness_x = e.anchor();
          out.push_back(std::move(r));
        } else {
          out.push_back(precondition_record("arithmetic_progression", "arithmetic_progression" + tag + param, param,
                                            specs, Direction::upper, "component is not log-concave"));
        }
        {
          const auto& g = worst_gap[i * nm + j];
          auto r = make_record("ap_identity", "ap_identity" + tag + param, param, specs, 0.0, g.value(),
                               Direction::upper, cfg_.exact_tolerance);
          r.witness_a = g.witness();
          out.push_back(std::move(r));
        }
        if (l >= 2) {
          if (const auto inputs = bernoulli_inputs(dists, l)) {
            const auto b = bound_bernoulli_ap(*inputs);
            const std::string id = "bernoulli_ap" + tag + param;
            if (b.applicable) {
              auto r = make_record("bernoulli_ap", id, param, specs, b.bound, e.value(), Direction::upper,
                                   cfg_.violation_tolerance);
              r.witness_a = e.witness();
              r.witness_x = e.anchor();
              out.push_back(std::move(r));
            } else {
              out.push_back(precondition_record("bernoulli_ap", id, param, specs, Direction::upper,
                                                "Holder exponent p < 2"));
            }
          }
        }
      }
    }
    return out;
  }

  std::vector<CaseRecord> two_point_tuple(std::size_t t, const std::vector<std::size_t>& idx) const {
    const auto specs = specs_of(two_pool_, idx);
    const auto dists = dists_of(two_pool_, idx);
    const std::string tag = "/p" + std::to_string(t);
    const auto worst = worst_case_search(dists, cfg_.box, cfg_.window_cap);
    std::vector<CaseRecord> out;
    std::vector<TwoPointSpec> two;
    for (const auto& d : dists) {
      if (auto s = as_two_point(d)) two.push_back(*s);
    }
    if (two.size() == dists.size()) {
      auto r = make_record("two_point", "two_point" + tag, "", specs, bound_two_point(two).bound, worst.worst_value,
                           Direction::upper, cfg_.violation_tolerance);
      r.witness_a = worst.witness;
      out.push_back(std::move(r));
    } else {
      out.push_back(precondition_record("two_point", "two_point" + tag, "", specs, Direction::upper,
                                        "component is not supported on two points"));
    }
    auto r = make_record("sharpness_lower", "sharpness_lower" + tag, "", specs, sharpness_lower(dists),
                         worst.worst_value, Direction::lower, cfg_.violation_tolerance);
    r.witness_a = worst.witness;
    out.push_back(std::move(r));
    return out;
  }

  std::vector<DistributionSpec> uniform_trial(std::mt19937_64& rng, int k) const {
    if (k == 0) return {family::UniformSet{{0, 1}}, family::UniformSet{{0, 1}}};
    std::uniform_int_distribution<int> count(1, cfg_.uniform_max_n);
    std::uniform_int_distribution<int> size(1, cfg_.uniform_max_set);
    std::uniform_int_distribution<std::int64_t> point(-cfg_.uniform_range, cfg_.uniform_range);
    std::vector<DistributionSpec> out;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      const int want = size(rng);
      std::vector<std::int64_t> pts;
      while (static_cast<int>(pts.size()) < want) {
        const auto x = point(rng);
        if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
      }
      std::sort(pts.begin(), pts.end());
      out.push_back(family::UniformSet{std::move(pts)});
    }
    return out;
  }

  std::vector<CaseRecord> uniform_case(int k, const std::vector<DistributionSpec>& specs) const {
    std::vector<LatticeDistribution> dists;
    for (const auto& s : specs) dists.push_back(make_distribution(s));
    const std::vector<std::int64_t> ones(dists.size(), 1);
    const auto sum = integer_weighted_sum(ones, dists, cfg_.window_cap);
    std::vector<CaseRecord> out;
    for (const auto& alpha : cfg_.alphas) {
      if (alpha.value() > 2.0) continue;
      const auto rhs = epi_uniform_rhs(dists, alpha);
      auto r = make_record("uniform_epi", "uniform_epi/u" + std::to_string(k) + "/" + alpha_param(alpha),
                           alpha_param(alpha), specs, rhs.bound, entropy_power(sum, alpha), Direction::lower,
                           cfg_.violation_tolerance);
      r.witness_a = ones;
      out.push_back(std::move(r));
    }
    return out;
  }

  PushforwardTrial pushforward_trial(std::mt19937_64& rng) const {
    PushforwardTrial trial;
    std::uniform_int_distribution<std::size_t> pick(0, pool_.dists.size() - 1);
    std::uniform_int_distribution<int> count(1, std::min(2, cfg_.max_n));
    std::uniform_int_distribution<std::int64_t> coef(1, cfg_.box);
    std::bernoulli_distribution flip(0.5);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      trial.idx.push_back(pick(rng));
      const auto c = coef(rng);
      trial.a.push_back(flip(rng) ? -c : c);
    }
    const auto y = integer_weighted_sum(trial.a, dists_of(pool_, trial.idx), cfg_.window_cap);
    const auto support = y.support();
    std::uniform_int_distribution<std::int64_t> labels(0, static_cast<std::int64_t>(support.size()) - 1);
    const auto range = labels(rng);
    std::uniform_int_distribution<std::int64_t> label(0, range);
    for (auto x : support) trial.f[x] = label(rng);
    return trial;
  }

  std::vector<CaseRecord> pushforward_case(int k, const PushforwardTrial& trial) const {
    const auto specs = specs_of(pool_, trial.idx);
    const auto y = integer_weighted_sum(trial.a, dists_of(pool_, trial.idx), cfg_.window_cap);
    const auto image = pushforward(y, trial.f);
    const auto cert = certificate_pushforward(y, trial.f);
    const std::string tag = "/f" + std::to_string(k);
    std::vector<CaseRecord> out;
    auto r = make_record("pushforward", "pushforward" + tag, "", specs, 0.0,
                         dominance_margin(DescendingProfile::of(image), DescendingProfile::of(y)), Direction::lower,
                         cfg_.exact_tolerance);
    r.witness_a = trial.a;
    out.push_back(std::move(r));
    auto rc = make_record("pushforward_certificate", "pushforward_certificate" + tag, "", specs, 0.0,
                          certificate_residual(cert), Direction::upper, cfg_.exact_tolerance);
    rc.witness_a = trial.a;
    out.push_back(std::move(rc));
    return out;
  }

  const SweepConfig& cfg_;
  Pool pool_;
  Pool two_pool_;
};

}  // namespace

VerificationReport run_suite(const SweepConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  SuiteBuilder builder(config);
  const auto tasks = builder.tasks();

  std::vector<std::vector<CaseRecord>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        results[i] = tasks[i]();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned width = std::max(1u, config.jobs);
  if (width == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned k = 0; k < width; ++k) threads.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  VerificationReport report;
  for (auto& batch : results) {
    for (auto& r : batch) {
      switch (r.status) {
        case CaseStatus::pass: ++report.passed; break;
        case CaseStatus::fail: ++report.failed; break;
        case CaseStatus::precondition_failed: ++report.precondition_failed; break;
      }
      report.cases.push_back(std::move(r));
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace lcb
