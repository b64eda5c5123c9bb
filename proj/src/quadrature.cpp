#include <cmath>
#include <numeric>

#include "radonlab/errors.hpp"
#include "radonlab/random.hpp"
#include "radonlab/weyl.hpp"

namespace radonlab {

namespace {

double bernoulli2(double x) { return x * x - x + 1.0 / 6.0; }

// P_2 worst-case error of the lattice rule with generator z (smaller is better).
double p2_criterion(std::int64_t n, const std::vector<std::int64_t>& z) {
  const double two_pi_sq = 2.0 * M_PI * M_PI;
  double acc = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    double prod = 1.0;
    for (const auto zj : z) {
      const auto r = static_cast<std::int64_t>((static_cast<i128>(i) * zj) % n);
      prod *= 1.0 + two_pi_sq * bernoulli2(static_cast<double>(r) / static_cast<double>(n));
    }
    acc += prod;
  }
  return acc / static_cast<double>(n) - 1.0;
}

std::vector<std::int64_t> korobov_vector(std::int64_t n, std::int64_t a, int d) {
  std::vector<std::int64_t> z(static_cast<std::size_t>(d));
  std::int64_t v = 1;
  for (int j = 0; j < d; ++j) {
    z[j] = v;
    v = static_cast<std::int64_t>((static_cast<i128>(v) * a) % n);
  }
  return z;
}

double abs_pow(std::complex<double> v, double s) { return std::pow(std::norm(v), 0.5 * s); }

}  // namespace

std::vector<std::int64_t> korobov_generator(std::int64_t n, int d) {
  if (n < 2) throw InvalidArgument("lattice size must be at least 2");
  if (d < 1) throw InvalidArgument("d must be positive");
  if (d == 1) return {1};
  constexpr std::int64_t kCandidates = 128;
  std::vector<std::int64_t> candidates;
  const std::int64_t half = n / 2;
  if (half <= kCandidates) {
    for (std::int64_t a = 2; a <= std::max<std::int64_t>(2, half); ++a) candidates.push_back(a);
  } else {
    for (std::int64_t c = 0; c < kCandidates; ++c) candidates.push_back(2 + (half - 2) * c / (kCandidates - 1));
  }
  std::vector<std::int64_t> best = korobov_vector(n, 1, d);
  double best_score = INFINITY;
  for (std::int64_t a : candidates) {
    while (std::gcd(a, n) != 1) ++a;
    if (a >= n) continue;
    auto z = korobov_vector(n, a, d);
    const double score = p2_criterion(n, z);
    if (score < best_score) {
      best_score = score;
      best = std::move(z);
    }
  }
  return best;
}

LsNormEstimate ls_norm_estimate(std::int64_t N, int d, double s, const QuadratureScheme& scheme) {
  if (N < 1) throw InvalidArgument("N must be positive");
  if (d < 1) throw InvalidArgument("d must be positive");
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidExponent("moment order s must be positive and finite");
  const std::size_t total = scheme.points != 0 ? scheme.points : (std::size_t{1} << 16) * static_cast<std::size_t>(d);

  LsNormEstimate est;
  std::vector<double> coords(static_cast<std::size_t>(d));
  if (scheme.kind == QuadratureKind::Lattice) {
    const unsigned R = scheme.replicates;
    if (R < 2) throw InvalidArgument("lattice rule needs at least two random shifts");
    const auto n = static_cast<std::int64_t>(total / R);
    if (n < 2) throw InvalidArgument("too few quadrature points for the number of shifts");
    const auto z = korobov_generator(n, d);
    std::vector<double> means(R);
    for (unsigned r = 0; r < R; ++r) {
      Rng rng(derive_seed(scheme.seed, r));
      std::vector<double> shift(static_cast<std::size_t>(d));
      for (auto& c : shift) c = rng.uniform();
      double acc = 0.0;
      for (std::int64_t i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
          const auto q = static_cast<std::int64_t>((static_cast<i128>(i) * z[j]) % n);
          const double x = static_cast<double>(q) / static_cast<double>(n) + shift[j];
          coords[j] = x - std::floor(x);
        }
        acc += abs_pow(weyl_sum(N, TorusPoint(coords)), s);
      }
      means[r] = acc / static_cast<double>(n);
    }
    double mean = 0.0;
    for (const double v : means) mean += v;
    mean /= R;
    double var = 0.0;
    for (const double v : means) var += (v - mean) * (v - mean);
    var /= (R - 1);
    est.moment = mean;
    est.moment_se = std::sqrt(var / R);
    est.points = static_cast<std::size_t>(n) * R;
  } else {
    if (total < 2) throw InvalidArgument("Monte Carlo needs at least two points");
    Rng rng(derive_seed(scheme.seed, 0x4d43));
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      for (auto& c : coords) c = rng.uniform();
      const double v = abs_pow(weyl_sum(N, TorusPoint(coords)), s);
      const double delta = v - mean;
      mean += delta / static_cast<double>(i + 1);
      m2 += delta * (v - mean);
    }
    est.moment = mean;
    est.moment_se = std::sqrt(m2 / static_cast<double>(total - 1) / static_cast<double>(total));
    est.points = total;
  }
  est.norm = std::pow(est.moment, 1.0 / s);
  est.norm_se = est.moment > 0.0 ? est.norm / (s * est.moment) * est.moment_se : 0.0;
  return est;
}

}  // namespace radonlab
