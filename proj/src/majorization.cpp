#include "lcbound/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lcb {

DescendingProfile::DescendingProfile(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("empty profile");
  for (double v : probs_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("profile entries must be positive");
  }
  std::sort(probs_.begin(), probs_.end(), std::greater<>());
  double total = 0.0;
  for (double v : probs_) total += v;
  if (std::abs(total - 1.0) > kNormalizationTolerance) throw std::invalid_argument("profile does not sum to one");
}

DescendingProfile DescendingProfile::of(const LatticeDistribution& d) {
  std::vector<double> probs;
  probs.reserve(d.window());
  for (double v : d.pmf()) {
    if (v > 0.0) probs.push_back(v);
  }
  return DescendingProfile(std::move(probs));
}

double dominance_margin(const DescendingProfile& top, const DescendingProfile& bottom) {
  const auto t = top.probs();
  const auto b = bottom.probs();
  const std::size_t n = std::max(t.size(), b.size());
  double st = 0.0;
  double sb = 0.0;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    if (k < t.size()) st += t[k];
    if (k < b.size()) sb += b[k];
    margin = std::min(margin, st - sb);
  }
  return margin;
}

bool majorizes(const DescendingProfile& top, const DescendingProfile& bottom, double tol) {
  return dominance_margin(top, bottom) >= -tol;
}

double certificate_residual(const StochasticMatrixCertificate& cert) {
  const std::size_t n = cert.size;
  if (cert.matrix.size() != n * n || cert.source.size() != n || cert.target.size() != n) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    double col = 0.0;
    double image = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = cert(i, j);
      if (v < 0.0) worst = std::max(worst, -v);
      row += v;
      col += cert(j, i);
      image += v * cert.source[j];
    }
    worst = std::max({worst, std::abs(row - 1.0), std::abs(col - 1.0), std::abs(image - cert.target[i])});
  }
  return worst;
}

StochasticMatrixCertificate certificate_point_mass(std::span<const double> p, double total) {
  if (!(total > 0.0)) throw std::invalid_argument("point-mass total must be positive");
  if (p.empty()) throw std::invalid_argument("empty vector");
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) throw std::invalid_argument("negative entry");
    sum += v;
  }
  if (std::abs(sum - total) > kMajorizationTolerance) {
    throw std::invalid_argument("entries do not sum to the point-mass total");
  }
  const std::size_t n = p.size();
  StochasticMatrixCertificate cert;
  cert.size = n;
  cert.matrix.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cert.matrix[i * n + j] = p[(i + j) % n] / total;
  }
  cert.labels.resize(n);
  std::iota(cert.labels.begin(), cert.labels.end(), std::int64_t{0});
  cert.source.assign(n, 0.0);
  cert.source[0] = total;
  cert.target.assign(p.begin(), p.end());
  return cert;
}

namespace {

// Fiber label -> atoms (support points) in increasing order.
std::map<std::int64_t, std::vector<std::int64_t>> fibers_of(const LatticeDistribution& y,
                                                            const std::map<std::int64_t, std::int64_t>& f) {
  std::map<std::int64_t, std::vector<std::int64_t>> fibers;
  for (std::int64_t x : y.support()) {
    const auto it = f.find(x);
    if (it == f.end()) throw std::invalid_argument("map undefined on atom " + std::to_string(x));
    fibers[it->second].push_back(x);
  }
  return fibers;
}

}  // namespace

StochasticMatrixCertificate certificate_pushforward(const LatticeDistribution& y,
                                                    const std::map<std::int64_t, std::int64_t>& f) {
  const auto fibers = fibers_of(y, f);
  const std::size_t n = y.atom_count();
  StochasticMatrixCertificate cert;
  cert.size = n;
  cert.matrix.assign(n * n, 0.0);
  cert.source.assign(n, 0.0);
  cert.labels.reserve(n);
  cert.target.reserve(n);
  std::size_t start = 0;
  for (const auto& [label, atoms] : fibers) {
    std::vector<double> block_p;
    block_p.reserve(atoms.size());
    double mass = 0.0;
    for (std::int64_t x : atoms) {
      block_p.push_back(y.at(x));
      mass += y.at(x);
    }
    const auto block = certificate_point_mass(block_p, mass);
    const std::size_t k = atoms.size();
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) cert.matrix[(start + i) * n + start + j] = block(i, j);
    }
    cert.source[start] = mass;
    cert.labels.insert(cert.labels.end(), atoms.begin(), atoms.end());
    cert.target.insert(cert.target.end(), block_p.begin(), block_p.end());
    start += k;
  }
  return cert;
}

LatticeDistribution pushforward(const LatticeDistribution& y, const std::map<std::int64_t, std::int64_t>& f) {
  const auto fibers = fibers_of(y, f);
  const std::int64_t lo = fibers.begin()->first;
  const std::int64_t hi = fibers.rbegin()->first;
  std::vector<double> pmf(static_cast<std::size_t>(hi - lo) + 1, 0.0);
  for (const auto& [label, atoms] : fibers) {
    for (std::int64_t x : atoms) pmf[static_cast<std::size_t>(label - lo)] += y.at(x);
  }
  return LatticeDistribution(lo, std::move(pmf));
}

SignReduction sign_reduction(std::span<const Rational> coefficients) {
  SignReduction out;
  out.scale = common_denominator(coefficients);
  for (const auto& c : coefficients) {
    if (c.is_zero()) throw std::invalid_argument("zero coefficient");
    out.integer_coefficients.push_back(checked_mul(c.num(), out.scale / c.den()));
    out.signs.push_back(c.sign());
  }
  return out;
}

}  // namespace lcb
