#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lcbound/lattice_dist.hpp"
#include "oracles.hpp"

using namespace lcb;
namespace fam = lcb::family;

namespace {

void check_pmf(const LatticeDistribution& d, std::int64_t offset, const std::vector<double>& pmf, double tol = 1e-15) {
  REQUIRE(d.offset() == offset);
  REQUIRE(d.pmf().size() == pmf.size());
  for (std::size_t i = 0; i < pmf.size(); ++i) CHECK(d.pmf()[i] == doctest::Approx(pmf[i]).epsilon(tol));
}

double total(const LatticeDistribution& d) {
  double s = 0.0;
  for (double p : d.pmf()) s += p;
  return s;
}

std::vector<double> sorted_atoms(const LatticeDistribution& d) {
  std::vector<double> out;
  for (double p : d.pmf()) {
    if (p > 0.0) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("constructor enforces a tight normalized window") {
  CHECK_THROWS_AS(LatticeDistribution(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(LatticeDistribution(0, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(LatticeDistribution(0, {0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(LatticeDistribution(0, {1.5, -0.5}), std::invalid_argument);
  CHECK_NOTHROW(LatticeDistribution(3, {0.5, 0.0, 0.5}));
}

TEST_CASE("family constructors") {
  check_pmf(make_distribution(fam::Bernoulli{0.5}), 0, {0.5, 0.5});
  check_pmf(make_distribution(fam::UniformSet{{0, 2, 5}}), 0, {1.0 / 3, 0, 1.0 / 3, 0, 0, 1.0 / 3});
  check_pmf(make_distribution(fam::Rademacher{0.3}), -1, {0.7, 0.0, 0.3});
  check_pmf(make_distribution(fam::UniformInterval{1, 5}), 1, {0.2, 0.2, 0.2, 0.2, 0.2});
  check_pmf(make_distribution(fam::TwoPoint{0, 3, 0.25}), 0, {0.75, 0, 0, 0.25});

  // Binomial against repeated convolution of Bernoulli laws.
  for (int n = 1; n <= 6; ++n) {
    auto conv = make_distribution(fam::Bernoulli{0.3});
    for (int i = 1; i < n; ++i) conv = convolve(conv, make_distribution(fam::Bernoulli{0.3}));
    const auto bin = make_distribution(fam::Binomial{n, 0.3});
    REQUIRE(bin.pmf().size() == conv.pmf().size());
    for (std::size_t k = 0; k < conv.pmf().size(); ++k) CHECK(bin.pmf()[k] == doctest::Approx(conv.pmf()[k]).epsilon(1e-12));
  }
  check_pmf(make_distribution(fam::Binomial{2, 0.5}), 0, {0.25, 0.5, 0.25}, 1e-12);
}

TEST_CASE("family parameter errors") {
  CHECK_THROWS(make_distribution(fam::Bernoulli{0.0}));
  CHECK_THROWS(make_distribution(fam::Bernoulli{1.2}));
  CHECK_THROWS(make_distribution(fam::Binomial{-1, 0.5}));
  CHECK(make_distribution(fam::Binomial{0, 0.5}) == LatticeDistribution::point_mass(0));
  CHECK_THROWS(make_distribution(fam::UniformInterval{3, 1}));
  CHECK_THROWS(make_distribution(fam::UniformSet{{}}));
  CHECK_THROWS(make_distribution(fam::UniformSet{{1, 1}}));
  CHECK_THROWS(make_distribution(fam::TwoPoint{2, 2, 0.5}));
  CHECK_THROWS(make_distribution(fam::Explicit{0, {0.5, 0.4}}));
  CHECK_THROWS(make_distribution(fam::Explicit{0, {}}));
}

TEST_CASE("explicit pmfs within 1e-9 are renormalized, trailing zeros trimmed") {
  const auto d = make_distribution(fam::Explicit{-1, {0.0, 0.25, 0.5, 0.25 + 5e-10, 0.0}});
  CHECK(d.offset() == 0);
  CHECK(d.pmf().size() == 3);
  CHECK(std::abs(total(d) - 1.0) <= 1e-12);
  CHECK_THROWS(make_distribution(fam::Explicit{0, {0.5, 0.5 + 1e-8}}));
}

TEST_CASE("moments") {
  const auto u = moments(make_distribution(fam::UniformInterval{1, 5}));
  CHECK(u.mean == doctest::Approx(3.0));
  CHECK(u.variance == doctest::Approx(2.0).epsilon(1e-14));
  const auto pm = moments(LatticeDistribution::point_mass(7));
  CHECK(pm.mean == 7.0);
  CHECK(pm.variance == 0.0);
  const auto b = moments(make_distribution(fam::Bernoulli{0.3}));
  CHECK(b.mean == doctest::Approx(0.3));
  CHECK(b.variance == doctest::Approx(0.21));
}

TEST_CASE("log-concavity") {
  CHECK(is_log_concave(make_distribution(fam::Binomial{4, 0.5})));
  CHECK_FALSE(is_log_concave(make_distribution(fam::UniformSet{{0, 2, 5}})));
  CHECK_FALSE(is_log_concave(make_distribution(fam::Explicit{0, {0.1, 0.05, 0.85}})));
  CHECK(is_log_concave(LatticeDistribution::point_mass(-3)));
  CHECK(is_log_concave(make_distribution(fam::UniformInterval{-2, 2})));
  CHECK_FALSE(is_log_concave(make_distribution(fam::Rademacher{0.5})));
}

TEST_CASE("symmetry center") {
  CHECK(symmetry_center(make_distribution(fam::Bernoulli{0.5})) == 0.5);
  CHECK_FALSE(symmetry_center(make_distribution(fam::Bernoulli{0.3})).has_value());
  CHECK(symmetry_center(LatticeDistribution(-1, {0.25, 0.5, 0.25})) == 0.0);
}

TEST_CASE("scale_support") {
  check_pmf(scale_support(make_distribution(fam::Bernoulli{0.5}), 2), 0, {0.5, 0, 0.5});
  check_pmf(scale_support(make_distribution(fam::Bernoulli{0.3}), -1), -1, {0.3, 0.7});
  const auto d = make_distribution(fam::Binomial{3, 0.4});
  CHECK(scale_support(d, 1) == d);
  CHECK_THROWS(scale_support(d, 0));
}

TEST_CASE("convolve") {
  const auto b = make_distribution(fam::Bernoulli{0.5});
  check_pmf(convolve(b, b), 0, {0.25, 0.5, 0.25});
  const auto d = make_distribution(fam::Binomial{3, 0.2});
  CHECK(convolve(d, LatticeDistribution::point_mass(0)) == d);
  const auto u = make_distribution(fam::UniformSet{{0, 1}});
  check_pmf(convolve(u, scale_support(u, 5)), 0, {0.25, 0.25, 0, 0, 0, 0.25, 0.25});
}

TEST_CASE("weighted_sum") {
  const auto b = make_distribution(fam::Bernoulli{0.5});
  WeightedSumSpec spec{{Rational(1), Rational(1)}, {b, b}};
  auto r = weighted_sum(spec);
  CHECK(r.scale == 1);
  check_pmf(r.distribution, 0, {0.25, 0.5, 0.25});

  spec.coefficients = {Rational(3, 2), Rational(-2, 5)};
  r = weighted_sum(spec);
  CHECK(r.scale == 10);
  CHECK(r.integer_coefficients == std::vector<std::int64_t>{15, -4});

  spec.coefficients = {Rational(1), Rational(2)};
  check_pmf(weighted_sum(spec).distribution, 0, {0.25, 0.25, 0.25, 0.25});

  spec.coefficients = {Rational(0), Rational(2)};
  CHECK_THROWS_AS(weighted_sum(spec), std::invalid_argument);
  spec.coefficients = {Rational(1)};
  CHECK_THROWS_AS(weighted_sum(spec), std::invalid_argument);
}

TEST_CASE("window cap is an error, not a truncation") {
  const auto b = make_distribution(fam::Bernoulli{0.5});
  WeightedSumSpec spec{{Rational(1), Rational(1, 999983)}, {b, b}};
  CHECK_THROWS_AS(weighted_sum(spec, 1000), WindowCapExceeded);
  CHECK_NOTHROW(weighted_sum(spec));
}

TEST_CASE("squeeze") {
  const auto d = make_distribution(fam::Explicit{-2, {0.3, 0, 0.5, 0, 0, 0, 0, 0.2}});
  check_pmf(squeeze(d), 0, {0.3, 0.5, 0.2});
  check_pmf(squeeze(make_distribution(fam::UniformInterval{4, 6})), 0, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  check_pmf(squeeze(scale_support(make_distribution(fam::Bernoulli{0.3}), 7)), 0, {0.7, 0.3});
}

TEST_CASE("property: transforms preserve normalization, moments and atoms") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> kdist(-4, 4);
  for (int t = 0; t < 300; ++t) {
    const auto d1 = oracle::random_pmf(rng);
    const auto d2 = oracle::random_log_concave(rng);
    const auto c = convolve(d1, d2);
    CHECK(std::abs(total(c) - 1.0) <= 1e-12);
    const auto m1 = moments(d1), m2 = moments(d2), mc = moments(c);
    CHECK(mc.mean == doctest::Approx(m1.mean + m2.mean).epsilon(1e-9));
    CHECK(mc.variance == doctest::Approx(m1.variance + m2.variance).epsilon(1e-9));
    CHECK(c.offset() == d1.offset() + d2.offset());
    CHECK(c.window() == d1.window() + d2.window() - 1);

    const auto sq = squeeze(d1);
    CHECK(sorted_atoms(sq) == sorted_atoms(d1));
    CHECK(std::abs(total(sq) - 1.0) <= 1e-12);
    CHECK(std::find(sq.pmf().begin(), sq.pmf().end(), 0.0) == sq.pmf().end());

    int k = kdist(rng);
    if (k == 0) k = 3;
    const auto s = scale_support(d1, k);
    CHECK(sorted_atoms(s) == sorted_atoms(d1));
    CHECK(variance(s) == doctest::Approx(k * k * m1.variance).epsilon(1e-9));

    // Independent oracle for the weighted sum.
    const std::int64_t a = k, b = kdist(rng) == 0 ? -1 : 2;
    const auto ws = integer_weighted_sum(std::vector<std::int64_t>{a, b}, std::vector{d1, d2});
    const auto ref = oracle::weighted_law({a, b}, {oracle::law_of(d1), oracle::law_of(d2)});
    for (const auto& [x, p] : ref) CHECK(ws.at(x) == doctest::Approx(p).epsilon(1e-12));
    CHECK(oracle::law_of(ws).size() == ref.size());
  }
}

TEST_CASE("property: convolution preserves log-concavity across families") {
  std::vector<LatticeDistribution> pool;
  for (double p : {0.1, 0.5, 0.9}) pool.push_back(make_distribution(fam::Bernoulli{p}));
  for (int n : {2, 5}) pool.push_back(make_distribution(fam::Binomial{n, 0.3}));
  for (int b : {0, 2, 4}) pool.push_back(make_distribution(fam::UniformInterval{-1, b}));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) pool.push_back(oracle::random_log_concave(rng));
  for (const auto& x : pool) {
    for (const auto& y : pool) CHECK(is_log_concave(convolve(x, y)));
  }
}

TEST_CASE("property: unit weights agree with iterated convolution") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    std::vector<LatticeDistribution> comps;
    for (int i = 0; i < 3; ++i) comps.push_back(oracle::random_pmf(rng, 5));
    const auto ws = weighted_sum(WeightedSumSpec{std::vector<Rational>(3, Rational(1)), comps}).distribution;
    const auto it = convolve(convolve(comps[0], comps[1]), comps[2]);
    REQUIRE(ws.offset() == it.offset());
    REQUIRE(ws.window() == it.window());
    for (std::size_t i = 0; i < it.window(); ++i) CHECK(std::abs(ws.pmf()[i] - it.pmf()[i]) <= 1e-12);
  }
}
