#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "lcbound/lattice_dist.hpp"
#include "lcbound/majorization.hpp"
#include "oracles.hpp"

using namespace lcb;
namespace fam = lcb::family;

namespace {

// A q computed by explicit matrix-vector multiplication.
std::vector<double> apply(const StochasticMatrixCertificate& c) {
  std::vector<double> out(c.size, 0.0);
  for (std::size_t i = 0; i < c.size; ++i) {
    for (std::size_t j = 0; j < c.size; ++j) out[i] += c(i, j) * c.source[j];
  }
  return out;
}

void check_doubly_stochastic(const StochasticMatrixCertificate& c) {
  for (std::size_t i = 0; i < c.size; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < c.size; ++j) {
      CHECK(c(i, j) >= 0.0);
      row += c(i, j);
      col += c(j, i);
    }
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto q = apply(c);
  for (std::size_t i = 0; i < c.size; ++i) CHECK(std::abs(q[i] - c.target[i]) <= 1e-12);
}

std::vector<double> vec(const DescendingProfile& p) { return {p.probs().begin(), p.probs().end()}; }

}  // namespace

TEST_CASE("profiles sort descending; of() drops zero atoms") {
  CHECK(vec(DescendingProfile({0.2, 0.5, 0.3})) == std::vector<double>{0.5, 0.3, 0.2});
  CHECK_THROWS(DescendingProfile({0.5, 0.4}));
  CHECK_THROWS(DescendingProfile({0.5, 0.0, 0.5}));
  CHECK(vec(DescendingProfile::of(make_distribution(fam::UniformSet{{0, 3}}))) == std::vector<double>{0.5, 0.5});
}

TEST_CASE("majorizes by prefix sums") {
  CHECK(majorizes(DescendingProfile({1.0}), DescendingProfile({0.5, 0.3, 0.2})));
  CHECK(majorizes(DescendingProfile({0.6, 0.4}), DescendingProfile({0.5, 0.3, 0.2})));
  CHECK_FALSE(majorizes(DescendingProfile({0.5, 0.5}), DescendingProfile({0.7, 0.3})));
  CHECK(dominance_margin(DescendingProfile({0.5, 0.5}), DescendingProfile({0.7, 0.3})) == doctest::Approx(-0.2));
}

TEST_CASE("point-mass certificate") {
  const std::vector<double> one{1.0};
  auto c = certificate_point_mass(one);
  CHECK(c.size == 1);
  CHECK(c(0, 0) == 1.0);

  const std::vector<double> half{0.5, 0.5};
  c = certificate_point_mass(half);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) CHECK(c(i, j) == 0.5);
  }

  const std::vector<double> p{0.6, 0.3, 0.1};
  c = certificate_point_mass(p);
  CHECK(c.source == std::vector<double>{1.0, 0.0, 0.0});
  for (std::size_t i = 0; i < 3; ++i) {
    // Each row is a cyclic shift of p.
    std::multiset<double> row, ref(p.begin(), p.end());
    for (std::size_t j = 0; j < 3; ++j) row.insert(c(i, j));
    CHECK(row == ref);
  }
  check_doubly_stochastic(c);
  CHECK(verify_certificate(c));

  const std::vector<double> scaled{0.3, 0.15, 0.05};
  check_doubly_stochastic(certificate_point_mass(scaled, 0.5));
  CHECK_THROWS(certificate_point_mass(p, 0.0));
  CHECK_THROWS(certificate_point_mass(p, 0.9));
}

TEST_CASE("pushforward certificate") {
  const auto u = make_distribution(fam::UniformInterval{0, 3});
  std::map<std::int64_t, std::int64_t> id{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  auto c = certificate_pushforward(u, id);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(c(i, j) == (i == j ? 1.0 : 0.0));
  }

  std::map<std::int64_t, std::int64_t> half{{0, 0}, {1, 0}, {2, 1}, {3, 1}};
  c = certificate_pushforward(u, half);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(c(i, j) == (i / 2 == j / 2 ? 0.5 : 0.0));
  }
  check_doubly_stochastic(c);

  const auto y = make_distribution(fam::Explicit{0, {0.3, 0.5, 0.2}});
  std::map<std::int64_t, std::int64_t> constant{{0, 9}, {1, 9}, {2, 9}};
  c = certificate_pushforward(y, constant);
  const std::vector<double> p{0.3, 0.5, 0.2};
  const auto ref = certificate_point_mass(p);
  CHECK(c.matrix == ref.matrix);
  check_doubly_stochastic(c);

  std::map<std::int64_t, std::int64_t> partial{{0, 0}, {1, 0}};
  CHECK_THROWS(certificate_pushforward(y, partial));
}

TEST_CASE("sign reduction") {
  const std::vector<Rational> a{Rational(3, 2), Rational(-2, 5)};
  auto r = sign_reduction(a);
  CHECK(r.scale == 10);
  CHECK(r.integer_coefficients == std::vector<std::int64_t>{15, -4});
  CHECK(r.signs == std::vector<int>{1, -1});
  const std::vector<Rational> ones(3, Rational(1));
  r = sign_reduction(ones);
  CHECK(r.scale == 1);
  CHECK(r.signs == std::vector<int>{1, 1, 1});
  const std::vector<Rational> neg{Rational(-7)};
  r = sign_reduction(neg);
  CHECK(r.integer_coefficients == std::vector<std::int64_t>{-7});
  CHECK(r.signs == std::vector<int>{-1});
  const std::vector<Rational> zero{Rational(0)};
  CHECK_THROWS(sign_reduction(zero));
}

TEST_CASE("property: reflexive and antisymmetric up to profile") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    const auto p = DescendingProfile::of(oracle::random_pmf(rng, 5));
    const auto q = DescendingProfile::of(oracle::random_pmf(rng, 5));
    CHECK(majorizes(p, p));
    if (majorizes(p, q) && majorizes(q, p)) {
      REQUIRE(p.size() == q.size());
      for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p.probs()[i] - q.probs()[i]) <= 1e-12);
    }
  }
}

TEST_CASE("property: random pushforwards concentrate mass and certify") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> label(-2, 2);
  for (int t = 0; t < 200; ++t) {
    const auto y = oracle::random_pmf(rng, 7);
    std::map<std::int64_t, std::int64_t> f;
    for (auto x : y.support()) f[x] = label(rng);
    const auto fy = pushforward(y, f);
    CHECK(majorizes(DescendingProfile::of(fy), DescendingProfile::of(y)));
    const auto c = certificate_pushforward(y, f);
    check_doubly_stochastic(c);
    CHECK(verify_certificate(c));
  }
}

TEST_CASE("property: signs majorize the weighted sum for log-concave components") {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> coef(-4, 4), count(1, 3);
  for (int t = 0; t < 200; ++t) {
    const int n = count(rng);
    std::vector<LatticeDistribution> comps;
    std::vector<Rational> a;
    for (int i = 0; i < n; ++i) {
      comps.push_back(oracle::random_log_concave(rng, 4));
      int num = coef(rng);
      if (num == 0) num = 1;
      a.emplace_back(num, 1 + t % 3);
    }
    const auto red = sign_reduction(a);
    const auto av = weighted_sum(WeightedSumSpec{a, comps}).distribution;
    const std::vector<std::int64_t> v(red.signs.begin(), red.signs.end());
    const auto vv = integer_weighted_sum(v, comps);
    CHECK(dominance_margin(DescendingProfile::of(vv), DescendingProfile::of(av)) >= -1e-12);
  }
}

TEST_CASE("property: squeezed copies majorize dilated sums") {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<int> k(2, 5);
  for (int t = 0; t < 200; ++t) {
    const auto x = oracle::random_log_concave(rng, 5);
    const auto y = oracle::random_log_concave(rng, 5);
    const auto dilated = convolve(scale_support(x, k(rng)), scale_support(y, k(rng)));
    const auto squeezed = convolve(squeeze(x), squeeze(y));
    CHECK(dominance_margin(DescendingProfile::of(squeezed), DescendingProfile::of(dilated)) >= -1e-12);
  }
}
