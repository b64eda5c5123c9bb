#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "radonlab/averages.hpp"
#include "radonlab/normlab.hpp"
#include "radonlab/random.hpp"

using namespace radonlab;

namespace {

const IntPolynomial kSquare = IntPolynomial::monomial(2);
const IntPolynomial kCube = IntPolynomial::monomial(3);

Signal1D random_nonneg(Rng& rng, std::int64_t len) {
  Signal1D::Values v(len);
  for (auto& x : v) x = rng.bernoulli(0.4) ? rng.uniform() : 0.0;
  v[0] = 1.0;
  return Signal1D(rng.uniform_int(-20, 20), v);
}

SignalD random_nonneg_2d(Rng& rng, std::int64_t rows, std::int64_t cols) {
  SignalD::Values v(rows * cols);
  for (auto& x : v) x = rng.bernoulli(0.3) ? rng.uniform() : 0.0;
  v[0] = 1.0;
  return SignalD({rng.uniform_int(-4, 4), rng.uniform_int(-20, 20)}, {rows, cols}, v);
}

// ||A_N 1_[1,L]||_q / L^{1/p} by counting, for every x, the k with x + P(k) in [1, L].
double oracle_interval_ratio(const std::vector<std::int64_t>& c, std::int64_t N, std::int64_t L, double p,
                             double q) {
  std::int64_t lo = 0, hi = 0;
  for (std::int64_t k = 1; k <= N; ++k) {
    lo = std::min(lo, 1 - oracle::eval_int(c, k));
    hi = std::max(hi, L - oracle::eval_int(c, k));
  }
  std::vector<double> out;
  for (std::int64_t x = lo; x <= hi; ++x) {
    std::int64_t hits = 0;
    for (std::int64_t k = 1; k <= N; ++k) {
      const std::int64_t y = x + oracle::eval_int(c, k);
      hits += (y >= 1 && y <= L);
    }
    out.push_back(static_cast<double>(hits) / static_cast<double>(N));
  }
  return oracle::lp(out, q) / std::pow(static_cast<double>(L), 1.0 / p);
}

// Same for the box [1, 2N] x [1, 2N^2] under the parabola average.
double oracle_box_ratio_2d(std::int64_t N, double p, double q) {
  const std::int64_t X = 2 * N, Y = 2 * N * N;
  std::vector<double> out;
  for (std::int64_t x = 1 - N; x <= X - 1; ++x)
    for (std::int64_t y = 1 - N * N; y <= Y - 1; ++y) {
      std::int64_t hits = 0;
      for (std::int64_t k = 1; k <= N; ++k)
        hits += (x + k >= 1 && x + k <= X && y + k * k >= 1 && y + k * k <= Y);
      if (hits) out.push_back(static_cast<double>(hits) / static_cast<double>(N));
    }
  return oracle::lp(out, q) / std::pow(static_cast<double>(X * Y), 1.0 / p);
}

}  // namespace

TEST(Ratio, ContractionWhenPEqualsQ) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_nonneg(rng, rng.uniform_int(1, 60));
    for (const double p : {1.0, 1.5, 2.0, 3.0, kInf}) EXPECT_LE(ratio(kSquare, 16, f, p, p).ratio, 1.0 + 1e-12);
  }
}

TEST(Ratio, ZeroInputRejected) {
  EXPECT_THROW(ratio(kSquare, 4, Signal1D::zeros(0, 5), 2.0, 2.0), ZeroInput);
  EXPECT_THROW(ratio(2, 4, SparseSignal(2), 2.0, 2.0), ZeroInput);
}

TEST(Ratio, SparseMatchesDense) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_nonneg(rng, rng.uniform_int(1, 40));
    const auto a = ratio(kCube, 7, f, 1.6, 2.5);
    const auto b = ratio(kCube, 7, to_sparse(f), 1.6, 2.5);
    EXPECT_EQ(a.ratio, b.ratio);
    const auto g = random_nonneg_2d(rng, 3, 9);
    EXPECT_EQ(ratio(2, 5, g, 1.3, 2.0).ratio, ratio(2, 5, to_sparse(g), 1.3, 2.0).ratio);
  }
}

TEST(Ratio, MatchesDefinition) {
  Rng rng(13);
  const auto f = random_nonneg(rng, 30);
  const auto s = ratio(kSquare, 6, f, 1.5, 3.0);
  std::vector<double> out, in;
  for (std::int64_t x = f.offset() - 36; x <= f.last() - 1; ++x) {
    double acc = 0.0;
    for (std::int64_t k = 1; k <= 6; ++k) acc += f(x + k * k);
    out.push_back(acc / 6.0);
  }
  for (std::int64_t i = 0; i < f.size(); ++i) in.push_back(f.values()[i]);
  EXPECT_NEAR(s.ratio, oracle::lp(out, 3.0) / oracle::lp(in, 1.5), 1e-12);
}

TEST(Families, PolynomialValuesExample) {
  const auto e = extremizer(Family::PolynomialValues, kSquare, 8);
  EXPECT_EQ(e.support, 8);
  const auto m = measure(e, 2.0, 2.0);
  EXPECT_NEAR(m.witness, std::pow(8.0, -0.5), 1e-15);
  EXPECT_TRUE(m.exact);
  // A_8 f(0) = 1 and ||f||_2 = sqrt 8.
  const auto A = average(kSquare, 8, e.points);
  EXPECT_DOUBLE_EQ(A({0}), 1.0);
  EXPECT_DOUBLE_EQ(lp_norm(e.points, 2.0), std::sqrt(8.0));
}

TEST(Families, DeltaExample) {
  const auto m = measure(extremizer(Family::Delta, kSquare, 8), 1.5, 2.0);
  EXPECT_NEAR(m.full_ratio, std::pow(8.0, -0.5), 1e-15);
  EXPECT_NEAR(m.predicted, std::pow(8.0, -0.5), 1e-15);
}

TEST(Families, MomentCurveExample) {
  const auto e = extremizer(Family::MomentCurve, 2, 4);
  for (const double p : {1.0, 1.7, 2.0}) {
    EXPECT_NEAR(lp_norm(e.points, p), std::pow(4.0, 1.0 / p), 1e-14);
    EXPECT_NEAR(measure(e, p, 2.0).witness, std::pow(4.0, -1.0 / p), 1e-14);
  }
  EXPECT_DOUBLE_EQ(multidim_average(2, 4, e.points)({0, 0}), 1.0);
}

TEST(Families, ClosedFormsMatchWhenInjective) {
  Rng rng(21);
  const std::vector<std::vector<std::int64_t>> polys = {{0, 0, 1}, {0, 0, 0, 1}, {3, 1, 2}, {0, -1, 0, 1}};
  for (int trial = 0; trial < 60; ++trial) {
    const auto& c = polys[trial % polys.size()];
    std::vector<i128> c128(c.begin(), c.end());
    const auto P = IntPolynomial::from_integers(c128);
    const std::int64_t N = rng.uniform_int(2, 40);
    const double p = 1.0 + 2.0 * rng.uniform();
    const double q = p + 3.0 * rng.uniform();
    for (const Family fam : {Family::PolynomialValues, Family::Delta}) {
      const auto m = measure(extremizer(fam, P, N), p, q);
      EXPECT_NEAR(m.witness, m.predicted, 1e-9 * m.predicted) << family_letter(fam) << " N=" << N;
    }
    EXPECT_NEAR(measure(extremizer(Family::Delta, P, N), p, q).predicted, std::pow(N, 1.0 / q - 1.0), 1e-12);
    const int d = 2 + trial % 2;
    for (const Family fam : {Family::MomentCurve, Family::MultiDelta}) {
      const auto m = measure(extremizer(fam, d, N), p, q);
      EXPECT_NEAR(m.witness, m.predicted, 1e-9 * m.predicted);
    }
  }
}

TEST(Families, IntervalFullRatioMatchesOracle) {
  for (const auto& c : std::vector<std::vector<std::int64_t>>{{0, 0, 1}, {0, 0, 0, 1}, {3, 1, 2}}) {
    std::vector<i128> c128(c.begin(), c.end());
    const auto P = IntPolynomial::from_integers(c128);
    for (const std::int64_t N : {1, 2, 5, 9}) {
      const auto e = extremizer(Family::Interval, P, N);
      const std::int64_t L = e.last[0] - e.first[0] + 1;
      const auto m = measure(e, 1.7, 2.4);
      EXPECT_NEAR(m.full_ratio, oracle_interval_ratio(c, N, L, 1.7, 2.4), 1e-12);
      EXPECT_GE(m.full_ratio, m.predicted * (1.0 - 1e-12));
      EXPECT_FALSE(m.exact);
    }
  }
}

TEST(Families, BoxFullRatioMatchesOracle) {
  for (const std::int64_t N : {1, 2, 3, 6}) {
    const auto m = measure(extremizer(Family::Box, 2, N), 1.8, 1.8 / 0.8);
    EXPECT_NEAR(m.full_ratio, oracle_box_ratio_2d(N, 1.8, 1.8 / 0.8), 1e-12);
    EXPECT_GE(m.full_ratio, m.predicted * (1.0 - 1e-12));
  }
}

TEST(Families, NonInjectiveReported) {
  // x^2 - 3x takes -2 at both 1 and 2.
  const auto P = IntPolynomial::from_integers({0, -3, 1});
  EXPECT_THROW(extremizer(Family::PolynomialValues, P, 4), NonInjective);
  const auto e = extremizer(Family::PolynomialValues, P, 4, true);
  EXPECT_FALSE(e.injective);
  EXPECT_EQ(e.support, 3);
  const auto m = measure(e, 2.0, 3.0);
  EXPECT_NEAR(m.witness, std::pow(3.0, -0.5), 1e-15);
  // Delta: mult = (2, 1, 1), so the ratio is (2^q + 2)^{1/q} / 4.
  const auto b = measure(extremizer(Family::Delta, P, 4, true), 2.0, 3.0);
  EXPECT_NEAR(b.full_ratio, std::cbrt(10.0) / 4.0, 1e-14);
  EXPECT_NEAR(b.predicted, b.full_ratio, 1e-14);
}

TEST(Families, Letters) {
  for (const Family f : {Family::PolynomialValues, Family::Delta, Family::Interval, Family::MomentCurve,
                         Family::MultiDelta, Family::Box})
    EXPECT_EQ(family_from_letter(family_letter(f)), f);
  EXPECT_THROW(family_from_letter('z'), InvalidArgument);
}

TEST(ImprovementFit, FamilySlopes) {
  const double p = 1.6, q = 1.6 / 0.6;
  std::vector<RatioSample> a, b, f;
  for (const std::int64_t N : {4, 8, 16, 32, 64, 128}) {
    const auto ma = measure(extremizer(Family::PolynomialValues, kSquare, N), p, q);
    a.push_back({N, p, q, ma.witness, 0, 0, "a"});
    const auto mb = measure(extremizer(Family::Delta, kSquare, N), p, q);
    b.push_back({N, p, q, mb.full_ratio, 0, 0, "b"});
  }
  EXPECT_NEAR(improvement_fit(a).slope, -1.0 / p, 1e-9);
  EXPECT_NEAR(improvement_fit(b).slope, 1.0 / q - 1.0, 1e-9);
  const double pf = 1.8, qf = 1.8 / 0.8;
  for (const std::int64_t N : {8, 16, 32, 64, 128}) {
    const auto mf = measure(extremizer(Family::Box, 2, N), pf, qf);
    f.push_back({N, pf, qf, mf.full_ratio, 0, 0, "f"});
  }
  EXPECT_NEAR(improvement_fit(f).slope, -3.0 * (1.0 / pf - 1.0 / qf), 0.1);
}

TEST(Search, ContractionAttainedByWideWindow) {
  SearchOptions opt;
  opt.trials = 4;
  opt.seed = 7;
  opt.window = 1000;
  const auto r = search_near_extremal(kSquare, 16, 2.0, 2.0, opt);
  EXPECT_GE(r.best.ratio, 0.9);
  EXPECT_LE(r.best.ratio, 1.0 + 1e-12);
  ASSERT_TRUE(r.bound.has_value());
  EXPECT_FALSE(r.violation);
}

TEST(Search, NeverExceedsContraction) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SearchOptions opt;
    opt.trials = 8;
    opt.seed = seed;
    EXPECT_LE(search_near_extremal(kCube, 6, 2.0, 2.0, opt).best.ratio, 1.0 + 1e-12);
    EXPECT_LE(search_near_extremal(2, 4, 2.0, 3.0, opt).best.ratio, 1.0 + 1e-12);
  }
}

TEST(Search, Deterministic) {
  SearchOptions opt;
  opt.trials = 12;
  opt.seed = 99;
  const auto a = search_near_extremal(kSquare, 12, 1.6, 1.6 / 0.6, opt);
  const auto b = search_near_extremal(kSquare, 12, 1.6, 1.6 / 0.6, opt);
  EXPECT_EQ(a.best.ratio, b.best.ratio);
  EXPECT_EQ(a.best.tag, b.best.tag);
  const auto c = search_near_extremal(2, 5, 1.5, 3.0, opt);
  const auto e = search_near_extremal(2, 5, 1.5, 3.0, opt);
  EXPECT_EQ(c.best.ratio, e.best.ratio);
}

TEST(Search, BeatsEveryFamily) {
  SearchOptions opt;
  opt.trials = 8;
  opt.seed = 3;
  const double p = 1.6, q = 1.6 / 0.6;
  const auto r = search_near_extremal(kSquare, 20, p, q, opt);
  for (const Family fam : {Family::PolynomialValues, Family::Delta, Family::Interval})
    EXPECT_GE(r.best.ratio, measure(extremizer(fam, kSquare, 20), p, q).full_ratio);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR(ratio(kSquare, 20, *r.witness, p, q).ratio, r.best.ratio, 1e-12 * r.best.ratio);
}

TEST(Search, ConfiguredBoundViolation) {
  SearchOptions opt;
  opt.trials = 2;
  opt.seed = 1;
  opt.upper_bound = 1e-6;
  const auto r = search_near_extremal(kSquare, 8, 2.0, 2.0, opt);
  EXPECT_TRUE(r.violation);
  EXPECT_TRUE(r.witness.has_value());
  EXPECT_FALSE(proven_upper_bound(2.0, 1.5).has_value());
  EXPECT_EQ(*proven_upper_bound(1.5, 2.0), 1.0);
}

TEST(HyChain, RandomInputsHold) {
  Rng rng(31);
  const auto rec = mean_value_exact(8, 2, 4);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_nonneg_2d(rng, rng.uniform_int(1, 8), rng.uniform_int(1, 64));
    const auto r = hy_chain_check(2, 8, f, rec);
    EXPECT_TRUE(r.holds) << r.slack;
    EXPECT_NEAR(r.p, 16.0 / 9.0, 1e-15);
    EXPECT_NEAR(r.p_dual, 16.0 / 7.0, 1e-15);
  }
}

TEST(HyChain, DeltaAndTranslation) {
  const auto delta = SignalD::delta({0, 0});
  const auto r = hy_chain_check(2, 6, delta, 2);
  EXPECT_TRUE(r.holds);
  // Ã_N delta is N^{-1} on N points.
  EXPECT_NEAR(r.lhs, std::pow(6.0, 1.0 / r.p_dual - 1.0), 1e-12);
  Rng rng(32);
  const auto f = random_nonneg_2d(rng, 3, 5);
  const auto one = hy_chain_check(2, 1, f, 3);
  EXPECT_NEAR(one.weyl_norm, 1.0, 1e-15);
  EXPECT_NEAR(one.lhs, lp_norm(f, one.p_dual), 1e-14);
  EXPECT_TRUE(one.holds);
}
