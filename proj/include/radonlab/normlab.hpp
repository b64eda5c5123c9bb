#pragma once

// Operator ratios ||A f||_q / ||f||_p, the closed-form extremizer families,
// a lower-bound search for near-extremal inputs and the Hausdorff-Young chain
// for the moment-curve averages.
//
// Nothing here computes an operator norm. Ratios of concrete inputs are lower
// bounds for the norm; the known estimates supply the upper bounds.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radonlab/fit.hpp"
#include "radonlab/poly.hpp"
#include "radonlab/signal.hpp"
#include "radonlab/weyl.hpp"

namespace radonlab {

struct RatioSample {
  std::int64_t N = 0;
  double p = 1.0;
  double q = 1.0;
  double ratio = 0.0;
  double output_norm = 0.0;  // ||A_N f||_q
  double input_norm = 0.0;   // ||f||_p
  std::string tag;
};

/// ||A_N f||_q / ||f||_p for A_N along P. Throws ZeroInput when ||f||_p = 0.
RatioSample ratio(const IntPolynomial& P, std::int64_t N, const Signal1D& f, double p, double q);
RatioSample ratio(const IntPolynomial& P, std::int64_t N, const SparseSignal& f, double p, double q);
/// Same for the moment-curve average Ã_N in d dimensions.
RatioSample ratio(int d, std::int64_t N, const SignalD& f, double p, double q);
RatioSample ratio(int d, std::int64_t N, const SparseSignal& f, double p, double q);

// ------------------------------------------------------------ families

enum class Family {
  PolynomialValues,  // (a) 1_{P(1), ..., P(N)}
  Delta,             // (b) delta_0 on Z
  Interval,          // (c) 1_{[1, L]}, L = 2 max_k |P(k)|
  MomentCurve,       // (d) 1_{(m, m^2, ..., m^d) : 1 <= m <= N}
  MultiDelta,        // (e) delta_0 on Z^d
  Box,               // (f) 1_{[1, 2N] x ... x [1, 2N^d]}
};

char family_letter(Family f);
Family family_from_letter(char c);
bool is_multidim(Family f);

struct Extremizer {
  Family family;
  std::int64_t N = 0;
  int d = 1;
  /// Families (a), (b), (d), (e): the signal itself.
  SparseSignal points{1};
  /// Families (c), (f): the box [first, last].
  std::vector<std::int64_t> first, last;
  std::int64_t support = 0;
  /// Family (a) only: whether P(1..N) are distinct.
  bool injective = true;
  /// Families (a)-(c): the polynomial; stored as coefficients for copyability.
  std::vector<i128> poly_numerators;
  i128 poly_denominator = 1;

  IntPolynomial polynomial() const { return IntPolynomial(poly_numerators, poly_denominator); }
};

/// Builds a 1D family member. Family (a) throws NonInjective when P repeats a
/// value on [1, N], unless allow_noninjective is set; the closed forms then use
/// the actual support size and multiplicities.
Extremizer extremizer(Family family, const IntPolynomial& P, std::int64_t N, bool allow_noninjective = false);
/// Builds a moment-curve family member in d dimensions.
Extremizer extremizer(Family family, int d, std::int64_t N);

/// Closed form against measurement. `witness` is the measured quantity that the
/// closed form describes:
///   (a) A_N f(0) / ||f||_p = s^{-1/p}                       (s = |supp f|)
///   (b) ||A_N f||_q / ||f||_p = (sum_y mult(y)^q)^{1/q} / N  (= N^{1/q-1} if injective)
///   (c) ||A_N f||_q / ||f||_p >= c^{1/q} / L^{1/p}           (c = L - max P + min P)
///   (d) Ã_N f(0) / ||f||_p = N^{-1/p}
///   (e) ||Ã_N f||_q / ||f||_p = N^{1/q-1}
///   (f) ||Ã_N f||_q / ||f||_p >= prod_j (N^j + 1)^{1/q} / prod_j (2N^j)^{1/p}
/// `exact` distinguishes identities from lower bounds. full_ratio is the whole
/// ratio ||A f||_q / ||f||_p; for (c) and (f) it is computed from the piecewise
/// constant structure of the average of an interval/box indicator, which needs
/// O(N) (resp. O((2N)^d)) work instead of a dense window.
struct FamilyMeasurement {
  Family family;
  std::int64_t N = 0;
  double p = 1.0;
  double q = 1.0;
  double witness = 0.0;
  double predicted = 0.0;
  bool exact = true;
  double full_ratio = 0.0;
  std::int64_t support = 0;
};

FamilyMeasurement measure(const Extremizer& e, double p, double q);

// ------------------------------------------------------------ search

struct SearchOptions {
  unsigned trials = 32;
  std::uint64_t seed = 0;
  /// Length of the 1D window [1, window] for random and ascent inputs;
  /// 0 means min(2 max_k |P(k)|, 4096).
  std::int64_t window = 0;
  /// Extents of the dD window box anchored at (1, ..., 1); empty means
  /// (2N, 2N^2, ..., 2N^d) with the largest extent halved until at most 2^16 cells.
  std::vector<std::int64_t> box;
  int ascent_iterations = 20;
  double ascent_tolerance = 1e-6;
  /// Proven upper bound for this run; combined with proven_upper_bound(p, q).
  std::optional<double> upper_bound;
};

struct SearchResult {
  RatioSample best;
  /// The best input when it is small enough to serialise (else empty).
  std::optional<SparseSignal> witness;
  std::optional<double> bound;
  bool violation = false;  // best.ratio > bound (beyond 1e-12 relative)
};

/// 1 when q >= p (||A f||_q <= ||A f||_p <= ||f||_p); nothing otherwise.
std::optional<double> proven_upper_bound(double p, double q);

/// Largest ratio found over the extremizer families, the window indicator,
/// random inputs (uniform[0,1] and Bernoulli(rho), rho in {1/N, N^{-1/2}, 1/2},
/// cycling by trial) and a fixed-point ascent
///   f <- (A^T (A f)^{q-1})^{1/(p-1)}, cropped to the window,
/// started from the window indicator and from the best random input. A lower
/// bound only. Candidates are tried in a fixed order and the first maximum wins,
/// so the result depends only on the inputs and the seed.
SearchResult search_near_extremal(const IntPolynomial& P, std::int64_t N, double p, double q,
                                  const SearchOptions& options);
SearchResult search_near_extremal(int d, std::int64_t N, double p, double q, const SearchOptions& options);

/// Least-squares slope of log ratio against log N.
LineFit improvement_fit(std::span<const RatioSample> samples);

// ------------------------------------------------------------ HY chain

/// ||Ã_N f||_{p'} <= ||f||_p ||S_N||_{L^{2m}(T^d)} with p = 4m / (2m + 1):
/// Hausdorff-Young on Z^d, Hoelder with 1/(2m) = 2/p - 1, Hausdorff-Young on T^d.
struct HyChainReport {
  double p = 0.0;
  double p_dual = 0.0;
  double lhs = 0.0;          // ||Ã_N f||_{p'}
  double input_norm = 0.0;   // ||f||_p
  double weyl_norm = 0.0;    // ||S_N||_{L^{2m}}, exact
  double rhs = 0.0;
  double slack = 0.0;        // rhs - lhs
  bool holds = false;        // slack >= -1e-9
};

HyChainReport hy_chain_check(int d, std::int64_t N, const SignalD& f, int m);
/// Reuses a mean-value record with matching (d, N).
HyChainReport hy_chain_check(int d, std::int64_t N, const SignalD& f, const MeanValueRecord& weyl);

}  // namespace radonlab
