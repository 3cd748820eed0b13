#include "lcbound/lattice_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lcb {

namespace {

double total_mass(std::span<const double> pmf) {
  // Compensated sum; windows can be long after convolution.
  double sum = 0.0;
  double carry = 0.0;
  for (double v : pmf) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

void require_probability(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in (0, 1)");
  }
}

}  // namespace

LatticeDistribution::LatticeDistribution(std::int64_t offset, std::vector<double> pmf)
    : offset_(offset), pmf_(std::move(pmf)) {
  if (pmf_.empty()) throw std::invalid_argument("distribution with empty support");
  for (double v : pmf_) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("pmf entries must be finite and nonnegative");
  }
  if (!(pmf_.front() > 0.0) || !(pmf_.back() > 0.0)) {
    throw std::invalid_argument("pmf window must start and end with positive mass");
  }
  if (std::abs(total_mass(pmf_) - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument("pmf does not sum to one");
  }
}

LatticeDistribution LatticeDistribution::point_mass(std::int64_t at) { return LatticeDistribution(at, {1.0}); }

double LatticeDistribution::at(std::int64_t k) const {
  if (k < offset_ || k > max_point()) return 0.0;
  return pmf_[static_cast<std::size_t>(k - offset_)];
}

std::size_t LatticeDistribution::atom_count() const {
  return static_cast<std::size_t>(std::count_if(pmf_.begin(), pmf_.end(), [](double v) { return v > 0.0; }));
}

std::vector<std::int64_t> LatticeDistribution::support() const {
  std::vector<std::int64_t> out;
  out.reserve(pmf_.size());
  for (std::size_t i = 0; i < pmf_.size(); ++i) {
    if (pmf_[i] > 0.0) out.push_back(offset_ + static_cast<std::int64_t>(i));
  }
  return out;
}

LatticeDistribution trimmed_distribution(std::int64_t offset, std::vector<double> pmf) {
  auto first = std::find_if(pmf.begin(), pmf.end(), [](double v) { return v != 0.0; });
  if (first == pmf.end()) throw std::invalid_argument("distribution with no positive mass");
  auto last = std::find_if(pmf.rbegin(), pmf.rend(), [](double v) { return v != 0.0; }).base();
  const auto lead = std::distance(pmf.begin(), first);
  std::vector<double> body(first, last);
  return LatticeDistribution(offset + lead, std::move(body));
}

LatticeDistribution make_distribution(const DistributionSpec& spec) {
  struct Visitor {
    LatticeDistribution operator()(const family::Bernoulli& f) const {
      require_probability(f.p, "bernoulli p");
      return LatticeDistribution(0, {1.0 - f.p, f.p});
    }
    LatticeDistribution operator()(const family::Rademacher& f) const {
      require_probability(f.p, "rademacher p");
      return LatticeDistribution(-1, {1.0 - f.p, 0.0, f.p});
    }
    LatticeDistribution operator()(const family::Binomial& f) const {
      if (f.n < 0) throw std::invalid_argument("binomial n must be nonnegative");
      require_probability(f.p, "binomial p");
      std::vector<double> pmf(static_cast<std::size_t>(f.n) + 1);
      const double lp = std::log(f.p);
      const double lq = std::log1p(-f.p);
      for (int k = 0; k <= f.n; ++k) {
        const double log_choose = std::lgamma(f.n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(f.n - k + 1.0);
        pmf[static_cast<std::size_t>(k)] = std::exp(log_choose + k * lp + (f.n - k) * lq);
      }
      const double total = total_mass(pmf);
      for (double& v : pmf) v /= total;
      return trimmed_distribution(0, std::move(pmf));
    }
    LatticeDistribution operator()(const family::UniformInterval& f) const {
      if (f.a > f.b) throw std::invalid_argument("uniform_interval requires a <= b");
      const auto len = static_cast<std::size_t>(f.b - f.a) + 1;
      if (len > kDefaultWindowCap) throw WindowCapExceeded("uniform_interval too long");
      return LatticeDistribution(f.a, std::vector<double>(len, 1.0 / static_cast<double>(len)));
    }
    LatticeDistribution operator()(const family::UniformSet& f) const {
      if (f.support.empty()) throw std::invalid_argument("uniform_set requires a nonempty support");
      std::vector<std::int64_t> pts = f.support;
      std::sort(pts.begin(), pts.end());
      if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
        throw std::invalid_argument("uniform_set support has duplicate points");
      }
      const auto len = static_cast<std::size_t>(pts.back() - pts.front()) + 1;
      if (len > kDefaultWindowCap) throw WindowCapExceeded("uniform_set window too long");
      std::vector<double> pmf(len, 0.0);
      const double w = 1.0 / static_cast<double>(pts.size());
      for (auto x : pts) pmf[static_cast<std::size_t>(x - pts.front())] = w;
      return LatticeDistribution(pts.front(), std::move(pmf));
    }
    LatticeDistribution operator()(const family::TwoPoint& f) const {
      if (f.x1 >= f.x2) throw std::invalid_argument("two_point requires x1 < x2");
      require_probability(f.theta, "two_point theta");
      const auto len = static_cast<std::size_t>(f.x2 - f.x1) + 1;
      if (len > kDefaultWindowCap) throw WindowCapExceeded("two_point window too long");
      std::vector<double> pmf(len, 0.0);
      pmf.front() = 1.0 - f.theta;
      pmf.back() = f.theta;
      return LatticeDistribution(f.x1, std::move(pmf));
    }
    LatticeDistribution operator()(const family::Explicit& f) const {
      if (f.probs.empty()) throw std::invalid_argument("explicit pmf is empty");
      for (double v : f.probs) {
        if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("explicit pmf entries must be finite and nonnegative");
      }
      const double total = total_mass(f.probs);
      if (std::abs(total - 1.0) > kRenormalizeTolerance) {
        throw std::invalid_argument("explicit pmf does not sum to one within 1e-9");
      }
      std::vector<double> pmf = f.probs;
      // Already-normalized input is kept verbatim so serialized laws round-trip exactly.
      if (std::abs(total - 1.0) > kNormalizationTolerance) {
        for (double& v : pmf) v /= total;
      }
      return trimmed_distribution(f.offset, std::move(pmf));
    }
  };
  return std::visit(Visitor{}, spec);
}

std::string describe(const DistributionSpec& spec) {
  std::ostringstream os;
  struct Visitor {
    std::ostringstream& os;
    void operator()(const family::Bernoulli& f) const { os << "bernoulli(" << f.p << ")"; }
    void operator()(const family::Rademacher& f) const { os << "rademacher(" << f.p << ")"; }
    void operator()(const family::Binomial& f) const { os << "binomial(" << f.n << "," << f.p << ")"; }
    void operator()(const family::UniformInterval& f) const { os << "uniform_interval(" << f.a << "," << f.b << ")"; }
    void operator()(const family::UniformSet& f) const {
      os << "uniform_set{";
      for (std::size_t i = 0; i < f.support.size(); ++i) os << (i ? "," : "") << f.support[i];
      os << "}";
    }
    void operator()(const family::TwoPoint& f) const { os << "two_point(" << f.x1 << "," << f.x2 << "," << f.theta << ")"; }
    void operator()(const family::Explicit& f) const {
      os << "explicit@" << f.offset << "(";
      for (std::size_t i = 0; i < f.probs.size(); ++i) os << (i ? "," : "") << f.probs[i];
      os << ")";
    }
  };
  std::visit(Visitor{os}, spec);
  return os.str();
}

Moments moments(const LatticeDistribution& d) {
  const auto pmf = d.pmf();
  // Work relative to the offset so large offsets do not cost precision.
  double mean_rel = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) mean_rel += static_cast<double>(i) * pmf[i];
  double var = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    const double dev = static_cast<double>(i) - mean_rel;
    var += dev * dev * pmf[i];
  }
  return {static_cast<double>(d.offset()) + mean_rel, std::max(var, 0.0)};
}

bool is_log_concave(const LatticeDistribution& d) {
  const auto pmf = d.pmf();
  if (std::any_of(pmf.begin(), pmf.end(), [](double v) { return v <= 0.0; })) return false;
  const double peak = *std::max_element(pmf.begin(), pmf.end());
  const double eps = 1e-12 * peak * peak;
  for (std::size_t j = 1; j + 1 < pmf.size(); ++j) {
    if (pmf[j] * pmf[j] < pmf[j - 1] * pmf[j + 1] - eps) return false;
  }
  return true;
}

std::optional<double> symmetry_center(const LatticeDistribution& d) {
  const auto pmf = d.pmf();
  for (std::size_t i = 0, j = pmf.size() - 1; i < j; ++i, --j) {
    if (std::abs(pmf[i] - pmf[j]) > 1e-12) return std::nullopt;
  }
  return 0.5 * static_cast<double>(d.offset() + d.max_point());
}

LatticeDistribution scale_support(const LatticeDistribution& d, std::int64_t k) {
  if (k == 0) throw std::invalid_argument("scale_support factor must be nonzero");
  if (k == 1) return d;
  const auto pmf = d.pmf();
  const std::int64_t mag = k < 0 ? -k : k;
  const auto len = static_cast<std::size_t>(checked_mul(static_cast<std::int64_t>(pmf.size()) - 1, mag)) + 1;
  std::vector<double> out(len, 0.0);
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    const std::size_t pos = i * static_cast<std::size_t>(mag);
    out[k > 0 ? pos : len - 1 - pos] = pmf[i];
  }
  const std::int64_t offset = k > 0 ? checked_mul(d.offset(), k) : checked_mul(d.max_point(), k);
  return LatticeDistribution(offset, std::move(out));
}

LatticeDistribution convolve(const LatticeDistribution& lhs, const LatticeDistribution& rhs) {
  const auto a = lhs.pmf();
  const auto b = rhs.pmf();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  // Dilated windows are mostly zeros; skip them on both sides.
  std::vector<std::size_t> nz;
  nz.reserve(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] != 0.0) nz.push_back(j);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    double* row = out.data() + i;
    for (std::size_t j : nz) row[j] += ai * b[j];
  }
  return trimmed_distribution(checked_add(lhs.offset(), rhs.offset()), std::move(out));
}

LatticeDistribution squeeze(const LatticeDistribution& d) {
  std::vector<double> out;
  out.reserve(d.window());
  for (double v : d.pmf()) {
    if (v > 0.0) out.push_back(v);
  }
  return LatticeDistribution(0, std::move(out));
}

void WeightedSumSpec::validate() const {
  if (coefficients.size() != components.size()) {
    throw std::invalid_argument("coefficient and component counts differ");
  }
  if (coefficients.empty()) throw std::invalid_argument("weighted sum needs at least one component");
  for (const auto& c : coefficients) {
    if (c.is_zero()) throw std::invalid_argument("zero coefficient");
  }
}

LatticeDistribution integer_weighted_sum(std::span<const std::int64_t> coefficients,
                                         std::span<const LatticeDistribution> components,
                                         std::size_t window_cap) {
  if (coefficients.size() != components.size()) {
    throw std::invalid_argument("coefficient and component counts differ");
  }
  if (coefficients.empty()) throw std::invalid_argument("weighted sum needs at least one component");
  std::int64_t span = 0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] == 0) throw std::invalid_argument("zero coefficient");
    const std::int64_t mag = coefficients[i] < 0 ? -coefficients[i] : coefficients[i];
    span = checked_add(span, checked_mul(mag, static_cast<std::int64_t>(components[i].window()) - 1));
  }
  if (static_cast<std::uint64_t>(span) + 1 > window_cap) {
    throw WindowCapExceeded("weighted sum window of " + std::to_string(span + 1) +
                            " points exceeds cap of " + std::to_string(window_cap));
  }
  LatticeDistribution acc = scale_support(components[0], coefficients[0]);
  for (std::size_t i = 1; i < coefficients.size(); ++i) {
    acc = convolve(acc, scale_support(components[i], coefficients[i]));
  }
  return acc;
}

WeightedSumResult weighted_sum(const WeightedSumSpec& spec, std::size_t window_cap) {
  spec.validate();
  const std::int64_t scale = common_denominator(spec.coefficients);
  std::vector<std::int64_t> ints;
  ints.reserve(spec.coefficients.size());
  for (const auto& c : spec.coefficients) ints.push_back(checked_mul(c.num(), scale / c.den()));
  auto dist = integer_weighted_sum(ints, spec.components, window_cap);
  return {std::move(dist), scale, std::move(ints)};
}

}  // namespace lcb
