#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "radonlab/checked_int.hpp"
#include "radonlab/fit.hpp"

namespace radonlab {

/// Point of the torus T^d with coordinates reduced to [0, 1).
class TorusPoint {
 public:
  explicit TorusPoint(std::vector<double> coords);
  int dims() const { return static_cast<int>(t_.size()); }
  double operator[](int j) const { return t_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& coords() const { return t_; }

 private:
  std::vector<double> t_;
};

/// S_N(t) = (1/N) sum_{k=1}^N exp(2 pi i (k t_1 + k^2 t_2 + ... + k^d t_d)).
///
/// Each phase k^j t_j mod 1 is formed exactly from the binary expansion of t_j
/// in 128-bit integer arithmetic, so large k^j lose no accuracy.
std::complex<double> weyl_sum(std::int64_t N, const TorusPoint& t);

// ------------------------------------------------------------ mean values

/// Exact 2m-th moment of S_N:
///   J = #{k in [1, N]^{2m} : sum_{i<=m} k_i^j = sum_{i>m} k_i^j, j = 1..d}
/// and norm = ||S_N||_{L^{2m}} = (J / N^{2m})^{1/(2m)}.
struct MeanValueRecord {
  int d = 0;
  int m = 0;
  std::int64_t N = 0;
  i128 J = 0;
  double norm = 0.0;
};

enum class CountingMethod { Automatic, Hash, Sort };

struct MeanValueOptions {
  CountingMethod method = CountingMethod::Automatic;
  unsigned threads = 0;  // 0: worker_count()
  /// Cap on N^m, the number of enumerated m-tuples.
  std::uint64_t tuple_budget = std::uint64_t{1} << 27;
  /// Cap on counting-structure memory in bytes.
  std::uint64_t memory_budget = std::uint64_t{3} << 30;
};

/// Meet-in-the-middle count: every ordered m-tuple is keyed by its power-sum
/// vector (p_1, ..., p_d), multiplicities c(key) are tallied, and J = sum c^2.
///
/// Keys are mixed-radix integers with radix m N^j + 1 in coordinate j, which
/// makes the key of a tuple the plain sum of per-element keys. Counting uses an
/// open-addressing table sized to 1.3x the distinct-key bound, or, when that
/// does not fit the memory budget, sorts all N^m keys and run-length counts.
/// Memory: hash ~ workers * 1.3 * min(N^m, key space) * (key + 8) bytes; sort
/// N^m * key bytes. The m-tuples are split across workers by leading index and
/// merged by key; the result is independent of the worker count.
///
/// With method Automatic and d >= m the count is closed-form: equal power sums
/// of orders 1..m force equal multisets, so J sums squared multinomials. Orders
/// above m are dropped from the key for the same reason.
MeanValueRecord mean_value_exact(std::int64_t N, int d, int m, const MeanValueOptions& options = {});

/// Main-term exponent of J in N: max(m, 2m - d(d+1)/2).
double mean_value_main_exponent(int d, int m);

/// Least-squares slope of log J against log N over at least four records that
/// share (d, m). Reports the fit only.
LineFit exponent_fit(std::span<const MeanValueRecord> records);

// ------------------------------------------------------------ quadrature

enum class QuadratureKind { Lattice, MonteCarlo };

struct QuadratureScheme {
  QuadratureKind kind = QuadratureKind::Lattice;
  std::size_t points = 0;    // total evaluations; 0 means 2^16 * d
  unsigned replicates = 16;  // independent random shifts; lattice only
  std::uint64_t seed = 0x5eed;
};

struct LsNormEstimate {
  double moment = 0.0;     // estimate of the integral of |S_N|^s over T^d
  double moment_se = 0.0;  // its standard error
  double norm = 0.0;       // moment^{1/s}
  double norm_se = 0.0;    // delta-method standard error of norm
  std::size_t points = 0;
};

/// Estimate of ||S_N||_{L^s(T^d)} for any s > 0.
///
/// Lattice: a randomly shifted rank-1 Korobov rule; the standard error comes
/// from the spread of the independent shifts. Monte Carlo: i.i.d. uniform
/// points with the sample standard error.
LsNormEstimate ls_norm_estimate(std::int64_t N, int d, double s, const QuadratureScheme& scheme = {});

/// Korobov generating vector (1, a, a^2, ...) mod n minimising the P_2 criterion
/// over a deterministic candidate set.
std::vector<std::int64_t> korobov_generator(std::int64_t n, int d);

}  // namespace radonlab
