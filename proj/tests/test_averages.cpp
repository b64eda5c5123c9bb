#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "radonlab/averages.hpp"
#include "radonlab/random.hpp"

using namespace radonlab;

namespace {

const IntPolynomial kLinear = IntPolynomial::monomial(1);
const IntPolynomial kSquare = IntPolynomial::monomial(2);

// A_N f(x) straight from the definition, on every x where it can be nonzero.
std::map<std::int64_t, double> oracle_average(const std::vector<std::int64_t>& c, std::int64_t N,
                                              const Signal1D& f) {
  std::map<std::int64_t, double> out;
  for (std::int64_t y = f.offset(); y <= f.last(); ++y)
    for (std::int64_t k = 1; k <= N; ++k) out[y - oracle::eval_int(c, k)] += 0.0;
  for (auto& [x, v] : out) {
    double acc = 0.0;
    for (std::int64_t k = 1; k <= N; ++k) acc += f(x + oracle::eval_int(c, k));
    v = acc / static_cast<double>(N);
  }
  return out;
}

Signal1D random_nonneg(Rng& rng, std::int64_t len) {
  Signal1D::Values v(len);
  for (auto& x : v) x = rng.bernoulli(0.3) ? rng.uniform() : 0.0;
  return Signal1D(rng.uniform_int(-50, 50), v);
}

Signal1D random_real(Rng& rng, std::int64_t len) {
  Signal1D::Values v(len);
  for (auto& x : v) x = 2.0 * rng.uniform() - 1.0;
  return Signal1D(rng.uniform_int(-50, 50), v);
}

}  // namespace

TEST(Average, Examples) {
  const auto a = average(kLinear, 1, Signal1D::delta(0));
  EXPECT_EQ(a(-1), 1.0);
  EXPECT_EQ(lp_norm(a, 1.0), 1.0);
  const auto b = average(kSquare, 2, Signal1D::delta(0));
  EXPECT_EQ(b(-1), 0.5);
  EXPECT_EQ(b(-4), 0.5);
  EXPECT_EQ(lp_norm(b, 1.0), 1.0);
}

TEST(Average, IndicatorRatioScalesLikeOptimalityExample) {
  // f = 1 on [1, 2N^2]: A_N f = 1 on [0, N^2] and A_N f <= 1 on a window of
  // length 3N^2, so the ratio sits between 2^{-1/p} and 3^{1/q} times
  // N^{-2(1/p - 1/q)}.
  const std::int64_t N = 64;
  const auto f = Signal1D::indicator(1, 2 * N * N);
  const auto Af = average(kSquare, N, f);
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{1.5, 3.0}, {4.0 / 3.0, 4.0}, {2.0, 2.5}}) {
    const double ratio = lp_norm(Af, q) / lp_norm(f, p);
    const double scale = std::pow(static_cast<double>(N), -2.0 * (1.0 / p - 1.0 / q));
    EXPECT_GE(ratio, std::pow(2.0, -1.0 / p) * scale);
    EXPECT_LE(ratio, std::pow(3.0, 1.0 / q) * scale);
  }
}

TEST(Average, MatchesDefinition) {
  Rng rng(31);
  const std::vector<std::vector<std::int64_t>> polys{{0, 1}, {0, 0, 1}, {3, -2, 1}, {0, 1, 0, 1}, {0, -1, 2}};
  for (const auto& c : polys) {
    const auto P = IntPolynomial::from_integers(std::vector<i128>(c.begin(), c.end()));
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_real(rng, rng.uniform_int(1, 40));
      const std::int64_t N = rng.uniform_int(1, 12);
      const auto Af = average(P, N, f);
      for (const auto& [x, v] : oracle_average(c, N, f)) ASSERT_NEAR(Af(x), v, 1e-14);
      ASSERT_NEAR(lp_norm(Af, 1.0), lp_norm(abs(Af), 1.0), 0.0);
    }
  }
}

TEST(Average, PointEvaluationIsBitwiseConsistent) {
  Rng rng(32);
  const auto f = random_real(rng, 60);
  const auto Af = average(kSquare, 9, f);
  const auto shifts = polynomial_shifts(kSquare, 9);
  for (std::int64_t x = Af.offset(); x <= Af.last(); ++x)
    ASSERT_EQ(average_at(std::span<const std::int64_t>(shifts), f, x), Af(x));
}

TEST(Average, FftPathAgrees) {
  Rng rng(33);
  const auto f = random_real(rng, 5000);
  const auto direct = average(kSquare, 40, f);
  const auto fft = average_fft(kSquare, 40, f);
  ASSERT_EQ(direct.offset(), fft.offset());
  ASSERT_EQ(direct.size(), fft.size());
  EXPECT_LE((direct.values() - fft.values()).abs().maxCoeff(), 1e-9);
}

TEST(Average, SparseAgreesWithDense) {
  Rng rng(34);
  std::vector<std::int64_t> pts;
  for (int i = 0; i < 30; ++i) pts.push_back(rng.uniform_int(-100, 100));
  std::vector<SparseSignal::Point> spts;
  for (const auto p : pts) spts.push_back({p});
  const auto dense = average(kSquare, 11, Signal1D::from_points(pts));
  const auto sparse = average(kSquare, 11, SparseSignal::indicator(1, spts));
  for (const auto& [x, v] : sparse.entries()) ASSERT_EQ(dense(x[0]), v);
  for (const double p : {1.0, 1.5, 3.0, kInf}) ASSERT_EQ(lp_norm(dense, p), lp_norm(sparse, p));
}

TEST(Average, AdjointPairing) {
  Rng rng(35);
  const auto f = random_real(rng, 30);
  const auto h = random_real(rng, 80);
  const auto Af = average(kSquare, 7, f);
  const auto Ath = average_adjoint(kSquare, 7, h);
  double lhs = 0.0, rhs = 0.0;
  for (std::int64_t x = Af.offset(); x <= Af.last(); ++x) lhs += Af(x) * h(x);
  for (std::int64_t y = f.offset(); y <= f.last(); ++y) rhs += f(y) * Ath(y);
  EXPECT_NEAR(lhs, rhs, 1e-12);
}

TEST(MultidimAverage, Examples) {
  const auto a = multidim_average(2, 1, SignalD::delta({0, 0}));
  EXPECT_EQ(a(std::vector<std::int64_t>{-1, -1}), 1.0);
  EXPECT_EQ(lp_norm(a, 1.0), 1.0);
  const auto b = multidim_average(2, 2, SignalD::delta({0, 0}));
  EXPECT_EQ(b(std::vector<std::int64_t>{-1, -1}), 0.5);
  EXPECT_EQ(b(std::vector<std::int64_t>{-2, -4}), 0.5);
  EXPECT_EQ(lp_norm(b, 1.0), 1.0);
}

TEST(MultidimAverage, BoxIndicatorRatio) {
  // f = 1 on [1,2N]x[1,2N^2]x[1,2N^3]: Ã_N f = 1 on [0,N]x[0,N^2]x[0,N^3] and
  // <= 1 on a box 3N x 3N^2 x 3N^3 (up to +1 per axis).
  const std::int64_t N = 8;
  const auto f = SignalD::box({1, 1, 1}, {2 * N, 2 * N * N, 2 * N * N * N});
  const auto Af = multidim_average(3, N, f);
  const double n6 = std::pow(static_cast<double>(N), 6.0);
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{1.5, 3.0}, {1.2, 6.0}}) {
    const double ratio = lp_norm(Af, q) / lp_norm(f, p);
    const double scale = std::pow(n6, -(1.0 / p - 1.0 / q));
    EXPECT_GE(ratio, std::pow(8.0, -1.0 / p) * scale);
    EXPECT_LE(ratio, std::pow(27.0 * 1.2, 1.0 / q) * scale);
  }
}

TEST(MultidimAverage, OneDimensionMatchesLinearAverage) {
  Rng rng(36);
  const auto f = random_real(rng, 50);
  const SignalD fd({f.offset()}, {f.size()}, f.values());
  const auto a = average(kLinear, 13, f);
  const auto b = multidim_average(1, 13, fd);
  ASSERT_EQ(a.size(), b.cells());
  for (std::int64_t x = a.offset(); x <= a.last(); ++x) ASSERT_EQ(a(x), b(std::vector<std::int64_t>{x}));
}

TEST(MultidimAverage, MatchesDefinitionAndSparse) {
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<SparseSignal::Point> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({rng.uniform_int(-5, 5), rng.uniform_int(-20, 20)});
    const auto dense = SignalD::from_points(pts);
    const std::int64_t N = rng.uniform_int(1, 6);
    const auto Af = multidim_average(2, N, dense);
    const auto As = multidim_average(2, N, SparseSignal::indicator(2, pts));
    for_each_row(Af.extents(), [&](const std::vector<std::int64_t>& idx, std::int64_t) {
      for (std::int64_t i = 0; i < Af.extents()[1]; ++i) {
        const std::vector<std::int64_t> x{idx[0] + Af.offsets()[0], i + Af.offsets()[1]};
        double acc = 0.0;
        for (std::int64_t k = 1; k <= N; ++k) acc += dense(std::vector<std::int64_t>{x[0] + k, x[1] + k * k});
        ASSERT_NEAR(Af(x), acc / static_cast<double>(N), 1e-15);
        ASSERT_EQ(As(x), Af(x));
      }
    });
  }
}

// ------------------------------------------------------------ fractional

TEST(Fractional, Examples) {
  // Only k = 1 reaches the support: x + 1 = -1 at x = -2.
  const auto r = fractional_exact(kLinear, 0.5, Signal1D::delta(-1), -5, 5);
  EXPECT_EQ(r(-2), 1.0);
  EXPECT_EQ(r(0), 0.0);
  EXPECT_EQ(fractional_exact(kLinear, 0.5, Signal1D::delta(1), 0, 0)(0), 1.0);
  // x^2 with f = delta_1 + delta_4: k = 1 and k = 2 both land at x = 0.
  const auto f = Signal1D::delta(1) + Signal1D::delta(4);
  const auto two = fractional(kSquare, FractionalOrder(0.5, 2), f);
  EXPECT_DOUBLE_EQ(two.values(0), 1.0 + std::pow(2.0, -0.5));
  EXPECT_TRUE(two.exact);
}

TEST(Fractional, ReportsTruncationThreshold) {
  const auto f = Signal1D::indicator(0, 99);
  const auto low = fractional(kSquare, FractionalOrder(0.3, 3), f, 0, 0);
  EXPECT_FALSE(low.exact);
  EXPECT_EQ(low.K_exact, 9);  // 9^2 = 81 <= 99 < 100
  const auto at = fractional(kSquare, FractionalOrder(0.3, low.K_exact), f, 0, 0);
  const auto beyond = fractional(kSquare, FractionalOrder(0.3, 500), f, 0, 0);
  EXPECT_TRUE(at.exact);
  EXPECT_EQ(at.values(0), beyond.values(0));
  EXPECT_THROW(FractionalOrder(1.0, 3), InvalidArgument);
  EXPECT_THROW(FractionalOrder(0.5, 0), InvalidArgument);
}

TEST(Fractional, ExactTruncationMatchesScan) {
  Rng rng(38);
  const std::vector<std::vector<std::int64_t>> polys{{0, 1}, {0, 0, 1}, {5, -7, 1}, {0, 3, -4, 1}, {0, 0, -1}};
  for (const auto& c : polys) {
    const auto P = IntPolynomial::from_integers(std::vector<i128>(c.begin(), c.end()));
    for (int trial = 0; trial < 20; ++trial) {
      const std::int64_t f0 = rng.uniform_int(-300, 300), f1 = f0 + rng.uniform_int(0, 100);
      const std::int64_t x0 = rng.uniform_int(-300, 300), x1 = x0 + rng.uniform_int(0, 100);
      std::int64_t ref = 0;
      for (std::int64_t k = 1; k <= 2000; ++k) {
        const std::int64_t v = oracle::eval_int(c, k);
        if (v >= f0 - x1 && v <= f1 - x0) ref = k;
      }
      ASSERT_EQ(exact_truncation(P, f0, f1, x0, x1), ref);
    }
  }
}

TEST(Fractional, AverageDominatedPointwise) {
  // sum_{k<=N} k^{-lambda} f(x+P(k)) >= N^{-lambda} sum_{k<=N} f(x+P(k)) for f >= 0.
  Rng rng(39);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_nonneg(rng, rng.uniform_int(1, 60));
    const double lambda = 0.05 + 0.9 * rng.uniform();
    const std::int64_t N = rng.uniform_int(1, 20);
    const auto Af = average(kSquare, N, f);
    const auto If = fractional_exact(kSquare, lambda, f, Af.offset(), Af.last());
    const double scale = std::pow(static_cast<double>(N), lambda - 1.0);
    for (std::int64_t x = Af.offset(); x <= Af.last(); ++x) ASSERT_LE(Af(x), scale * If(x) * (1 + 1e-12));
  }
}

TEST(MultidimFractional, Examples) {
  const auto a = multidim_fractional(2, FractionalOrder(0.5, 1), SignalD::delta({1, 1}));
  EXPECT_EQ(a.values(std::vector<std::int64_t>{0, 0}), 1.0);
  SignalD f = SignalD::delta({1, 1}) + SignalD::delta({2, 4});
  const auto b = multidim_fractional(2, FractionalOrder(0.5, 2), f);
  EXPECT_DOUBLE_EQ(b.values(std::vector<std::int64_t>{0, 0}), 1.0 + std::pow(2.0, -0.5));
  EXPECT_TRUE(b.exact);
  EXPECT_EQ(multidim_fractional_exact_at(2, 0.5, f, std::vector<std::int64_t>{0, 0}),
            b.values(std::vector<std::int64_t>{0, 0}));
}

TEST(MultidimFractional, AverageDominatedPointwise) {
  Rng rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SparseSignal::Point> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({rng.uniform_int(0, 8), rng.uniform_int(0, 40)});
    const auto f = SignalD::from_points(pts, 0.5);
    const double lambda = 0.1 + 0.8 * rng.uniform();
    const std::int64_t N = rng.uniform_int(1, 6);
    const auto Af = multidim_average(2, N, f);
    const double scale = std::pow(static_cast<double>(N), lambda - 1.0);
    for_each_row(Af.extents(), [&](const std::vector<std::int64_t>& idx, std::int64_t) {
      for (std::int64_t i = 0; i < Af.extents()[1]; ++i) {
        const std::vector<std::int64_t> x{idx[0] + Af.offsets()[0], i + Af.offsets()[1]};
        ASSERT_LE(Af(x), scale * multidim_fractional_exact_at(2, lambda, f, x) * (1 + 1e-12));
      }
    });
  }
}

// ------------------------------------------------------------ maximal

TEST(Maximal, Examples) {
  const auto m = maximal(kLinear, 2, Signal1D::delta(0));
  EXPECT_EQ(m(-1), 1.0);
  EXPECT_EQ(m(-2), 0.5);
  Signal1D::Values v(2);
  v << 1.0, -1.0;
  EXPECT_THROW(maximal(kLinear, 2, Signal1D(0, v)), NegativeInput);
}

TEST(Maximal, MatchesBruteForceAndDominatesAverages) {
  Rng rng(41);
  const std::vector<std::int64_t> c{0, 0, 1};
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_nonneg(rng, rng.uniform_int(1, 50));
    const auto M = maximal(kSquare, 16, f);
    std::map<std::int64_t, double> best;
    for (std::int64_t N = 1; N <= 16; ++N) {
      for (const auto& [x, v] : oracle_average(c, N, f)) best[x] = std::max(best[x], v);
      const auto Af = average(kSquare, N, f);
      for (std::int64_t x = Af.offset(); x <= Af.last(); ++x) ASSERT_GE(M(x), Af(x));
    }
    for (const auto& [x, v] : best) ASSERT_NEAR(M(x), v, 1e-14);
  }
}

// ------------------------------------------------------------ properties

TEST(AverageProperty, Linearity) {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_real(rng, rng.uniform_int(1, 80));
    const auto g = random_real(rng, rng.uniform_int(1, 80));
    const double alpha = 4 * rng.uniform() - 2, beta = 4 * rng.uniform() - 2;
    const std::int64_t N = rng.uniform_int(1, 15);
    const auto lhs = average(kSquare, N, alpha * f + beta * g);
    const auto rhs = alpha * average(kSquare, N, f) + beta * average(kSquare, N, g);
    const auto diff = lhs - rhs;
    ASSERT_LE(lp_norm(diff, kInf), 1e-12);
  }
}

TEST(AverageProperty, ContractionAndMassConservation) {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_real(rng, rng.uniform_int(1, 100));
    const std::int64_t N = rng.uniform_int(1, 30);
    const auto Af = average(kSquare, N, f);
    for (const double p : {1.0, 1.3, 2.0, 4.0, kInf}) ASSERT_LE(lp_norm(Af, p), lp_norm(f, p) * (1 + 1e-12));
    ASSERT_NEAR(sum(Af), sum(f), 1e-12 * std::max(1.0, lp_norm(f, 1.0)));
  }
}
