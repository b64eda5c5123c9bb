#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "radonlab/errors.hpp"
#include "radonlab/random.hpp"
#include "radonlab/sparse.hpp"

using namespace radonlab;

namespace {

Signal1D random_signal(Rng& rng, std::int64_t len, double density) {
  Signal1D::Values v(len);
  for (std::int64_t i = 0; i < len; ++i) v[i] = rng.bernoulli(density) ? rng.uniform() * 4.0 : 0.0;
  return Signal1D(0, v);
}

double direct_average(const Signal1D& phi, std::int64_t lo, std::int64_t hi, double r) {
  double s = 0.0;
  for (std::int64_t n = lo; n <= hi; ++n) s += std::pow(std::abs(phi(n)), r);
  return std::pow(s / static_cast<double>(hi - lo + 1), 1.0 / r);
}

// Best form value over every sparse collection of dyadic intervals of [0, len).
// For a nested family the disjoint witness sets exist exactly when, for every
// chosen I, the chosen intervals inside I need at most |I| points, each needing
// floor(|I|/4) + 1. That makes the search a tree dynamic programme over the
// total need.
std::map<std::int64_t, double> oracle_best(const Signal1D& f, const Signal1D& g, double p, double q,
                                           double lambda, std::int64_t lo, std::int64_t len) {
  std::map<std::int64_t, double> table{{0, 0.0}};
  if (len > 1) {
    const auto left = oracle_best(f, g, p, q, lambda, lo, len / 2);
    const auto right = oracle_best(f, g, p, q, lambda, lo + len / 2, len / 2);
    table.clear();
    for (const auto& [a, wa] : left)
      for (const auto& [b, wb] : right) {
        auto [it, fresh] = table.try_emplace(a + b, wa + wb);
        if (!fresh) it->second = std::max(it->second, wa + wb);
      }
  }
  const double w = direct_average(f, lo, lo + len - 1, p) * direct_average(g, lo, lo + len - 1, q) *
                   std::pow(static_cast<double>(len), 1.0 - lambda);
  const std::int64_t need = len / 4 + 1;
  auto with = table;
  for (const auto& [c, wc] : table)
    if (c + need <= len) {
      auto [it, fresh] = with.try_emplace(c + need, wc + w);
      if (!fresh) it->second = std::max(it->second, wc + w);
    }
  return with;
}

double oracle_max(const Signal1D& f, const Signal1D& g, double p, double q, double lambda, std::int64_t len) {
  double best = 0.0;
  for (const auto& [c, w] : oracle_best(f, g, p, q, lambda, 0, len)) best = std::max(best, w);
  return best;
}

}  // namespace

TEST(Sparse, ValidationRules) {
  SparseCollection S;
  S.entries.push_back({{0, 7}, {0, 1, 2}});
  S.entries.push_back({{4, 7}, {4, 5}});
  EXPECT_TRUE(validate(S));
  S.entries.push_back({{4, 5}, {5}});  // 5 already used
  EXPECT_FALSE(validate(S));
  S.entries.back().witness = {4};  // also used
  EXPECT_FALSE(validate(S));
  SparseCollection thin;
  thin.entries.push_back({{0, 7}, {0, 1}});  // 2 = 8/4 is not enough
  EXPECT_FALSE(validate(thin));
  SparseCollection outside;
  outside.entries.push_back({{0, 3}, {9}});
  EXPECT_FALSE(validate(outside));
  const Signal1D one = Signal1D::indicator(0, 7);
  EXPECT_THROW(lambda_form(thin, one, one, 1, 1, 0), InvalidCollection);
}

TEST(Sparse, ConstantSignalsGiveTheTopInterval) {
  const Signal1D one = Signal1D::indicator(0, 15);
  const auto r = greedy_collection(one, one, 2, 3, 5);
  ASSERT_EQ(r.collection.entries.size(), 1u);
  EXPECT_EQ(r.collection.entries[0].interval, (Interval{0, 15}));
  EXPECT_NEAR(r.value, 16.0, 1e-12);
  // lambda = 1 drops the length factor.
  EXPECT_NEAR(lambda_form(r.collection, one, one, 2, 3, 1.0), 1.0, 1e-12);
}

TEST(Sparse, SpikeGivesNestedChain) {
  Signal1D::Values v = Signal1D::Values::Zero(16);
  v[5] = 1.0;
  const Signal1D f(0, v), g = Signal1D::indicator(0, 15);
  const auto r = greedy_collection(f, g, 1, 1, 3);
  ASSERT_EQ(r.collection.entries.size(), 3u);
  EXPECT_EQ(r.collection.entries[0].interval, (Interval{0, 15}));
  EXPECT_EQ(r.collection.entries[1].interval, (Interval{4, 7}));
  EXPECT_EQ(r.collection.entries[2].interval, (Interval{5, 5}));
  EXPECT_EQ(r.collection.entries[1].witness, (std::vector<std::int64_t>{4, 6, 7}));
  EXPECT_EQ(r.collection.entries[0].witness.size(), 12u);
  // 1/16 * 16 + 1/4 * 4 + 1 * 1.
  EXPECT_NEAR(r.value, 3.0, 1e-12);
  EXPECT_TRUE(validate(r.collection));
}

// The stopping time is not an optimizer: on these inputs it reaches 15% to 80%
// of the optimum (median about 43%), so only the two bounds are asserted.
TEST(Sparse, GreedyIsValidAndBelowTheExhaustiveOptimum) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Signal1D f = random_signal(rng, 16, 0.3), g = random_signal(rng, 16, 0.7);
    const double p = 1.0 + rng.uniform() * 2.0, q = 1.0 + rng.uniform() * 2.0, lambda = rng.uniform();
    const auto r = greedy_collection(f, g, p, q, 5, lambda);
    ASSERT_TRUE(validate(r.collection));
    const double best = oracle_max(f, g, p, q, lambda, 16);
    EXPECT_LE(r.value, best * (1 + 1e-12) + 1e-15) << trial;
    const double top = direct_average(f, 0, 15, p) * direct_average(g, 0, 15, q) * std::pow(16.0, 1.0 - lambda);
    EXPECT_GE(r.value, top * (1 - 1e-12));
  }
}

TEST(Sparse, FormMatchesBruteForce) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Signal1D f = random_signal(rng, 256, 0.05), g = random_signal(rng, 256, 0.5);
    const double p = 1.5, q = 2.5, lambda = 0.25;
    const auto r = greedy_collection(f, g, p, q, 6, lambda);
    double brute = 0.0;
    for (const auto& e : r.collection.entries) {
      const auto [lo, hi] = e.interval;
      brute += direct_average(f, lo, hi, p) * direct_average(g, lo, hi, q) *
               std::pow(static_cast<double>(hi - lo + 1), 1.0 - lambda);
    }
    EXPECT_NEAR(r.value, brute, 1e-10 * brute);
  }
}

TEST(Sparse, Deterministic) {
  Rng rng(13);
  const Signal1D f = random_signal(rng, 100, 0.2), g = random_signal(rng, 100, 0.6);
  const auto a = greedy_collection(f, g, 2, 2, 6), b = greedy_collection(f, g, 2, 2, 6);
  ASSERT_EQ(a.collection.entries.size(), b.collection.entries.size());
  for (std::size_t i = 0; i < a.collection.entries.size(); ++i) {
    EXPECT_EQ(a.collection.entries[i].interval, b.collection.entries[i].interval);
    EXPECT_EQ(a.collection.entries[i].witness, b.collection.entries[i].witness);
  }
  EXPECT_EQ(a.value, b.value);
}

TEST(Sparse, LocalAverageInfinity) {
  const Signal1D f(0, (Signal1D::Values(4) << 1, -3, 2, 0).finished());
  EXPECT_EQ(local_average(f, {0, 3}, std::numeric_limits<double>::infinity()), 3.0);
  EXPECT_NEAR(local_average(f, {0, 3}, 1), 1.5, 1e-15);
  EXPECT_THROW(local_average(f, {0, 3}, 0.5), InvalidExponent);
}

TEST(Sparse, PairingOfDeltas) {
  // For P(x) = x, A_1 delta_0 (-1) = 1 and A_N delta_0 (-1) = 1/N.
  const IntPolynomial P = IntPolynomial::monomial(1);
  const Signal1D f = Signal1D::delta(0);
  EXPECT_NEAR(pairing(P, 8, f, Signal1D::delta(-1)), 1.0, 1e-15);
  EXPECT_NEAR(pairing(P, 8, f, Signal1D::delta(-4)), 0.25, 1e-15);
  EXPECT_EQ(pairing(P, 8, f, Signal1D::delta(3)), 0.0);
  EXPECT_THROW(pairing(P, 8, f, Signal1D::delta(-1, -1.0)), NegativeInput);
}
