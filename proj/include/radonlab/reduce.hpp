#pragma once

// Transfer constructions between operators, as checkable statements:
//  - completing the square for P(x) = ax^2 + bx + c, which bounds A_N^P f by
//    the x^2 average of the 4a-dilate g(4am) = f(m);
//  - the lift of g on Z to f on Z^d that turns the moment-curve average into
//    the 1D average along P;
//  - the dyadic comparison between fractional integrals and averages.
//
// All pointwise checks assume f >= 0.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "radonlab/poly.hpp"
#include "radonlab/signal.hpp"

namespace radonlab {

// ------------------------------------------------------------ quadratic

/// P(x) = a x^2 + b x + c with integers a >= 1, b >= 0, c >= 0.
struct QuadraticTriple {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 0;

  QuadraticTriple(std::int64_t a_, std::int64_t b_, std::int64_t c_);
  IntPolynomial polynomial() const;
};

/// g(4am) = f(m), g(n) = 0 when 4a does not divide n. Same multiset of nonzero
/// values, so every l^p norm is preserved exactly.
Signal1D quadratic_dilate(const Signal1D& f, std::int64_t a);

struct TransferOptions {
  /// Check every x of the output window, not only those with A_N^P f(x) > 0
  /// (where the right-hand side is trivially >= 0).
  bool exhaustive = false;
  /// When set, also evaluate the norm chain at this p (q = p').
  std::optional<double> p;
};

struct TransferReport {
  std::int64_t N = 0;
  std::int64_t M = 0;  // 2aN + b
  /// min_x (2a + b/N) A_M^{x^2} g(4a(x+c) - b^2) - A_N^P f(x)
  double min_slack = 0.0;
  std::int64_t argmin = 0;
  std::int64_t points_checked = 0;
  bool holds = false;  // min_slack >= -1e-12

  bool norm_checked = false;
  double p = 0.0;
  double lhs_norm = 0.0;        // ||A_N^P f||_{p'}
  double chain_norm = 0.0;      // (2a + b/N) ||A_M^{x^2} g||_{p'}
  double input_norm = 0.0;      // ||f||_p = ||g||_p
  /// ||A_N^P f||_{p'} / [(2a + b/N) M^{-2(1/p - 1/p')} ||f||_p]
  double normalized_ratio = 0.0;
  /// ||A_M^{x^2} g||_{p'} / [M^{-2(1/p - 1/p')} ||g||_p], the x^2 constant that g attains
  double square_constant = 0.0;
  bool chain_holds = false;  // lhs_norm <= chain_norm (1e-12 relative)
};

TransferReport quadratic_transfer_check(const QuadraticTriple& t, std::int64_t N, const Signal1D& f,
                                        const TransferOptions& options = {});

/// ||A_N^P f||_{p'} / [(2a + b/N) (2aN + b)^{-2(1/p - 1/p')} ||f||_p], without the chain.
double transfer_normalized_ratio(const QuadraticTriple& t, std::int64_t N, const Signal1D& f, double p);

// ------------------------------------------------------------ projection lift

/// f(x) = prod_{j<d} 1[1 <= x_j <= 2N^j] * g(a.x + r) * 1[a.x in Z] on Z^d,
/// where a = (a_1, ..., a_d) are the coefficients of P - a_0.
struct LiftResult {
  SignalD f;
  Decomposition decomposition;
  std::int64_t residue = 0;
  /// max over n in the support window of g of #{x : a.x + r = n, x in the box}
  std::int64_t max_multiplicity = 0;
  /// 2^{d-1} N^{d(d-1)/2}, the number of (x_1, ..., x_{d-1}) in the box
  std::int64_t multiplicity_bound = 0;
};

LiftResult projection_lift(const Signal1D& g, const IntPolynomial& P, std::int64_t N, std::int64_t r);

/// max |Ã_N f(x) - A_N^{P - a_0} g(a.x + r)| over x in
/// {1..N} x {1..N^2} x ... x {1..N^{d-1}} x Z with a.x in Z (x_d over every
/// value where either side can be nonzero), and the number of points checked.
struct LiftIdentityReport {
  double max_error = 0.0;
  std::int64_t points_checked = 0;
};

LiftIdentityReport check_lift_identity(const LiftResult& lift, const Signal1D& g, const IntPolynomial& P,
                                       std::int64_t N);

/// The sublattice estimate: with x = v y,
///   S = sum_{y' in box/v} sum_{y_d} |A_N g(u (b.y) + r)|^q
///     = sum_{n in r + uZ} mult(n) |A_N g(n)|^q
///     >= min_count * sum_{n in r + uZ} |A_N g(n)|^q,
/// where min_count is the smallest number of y' = (y_1..y_{d-1}),
/// 1 <= y_j <= N^j / v, in one residue class of b'.y' mod |b_d|.
/// asymptotic is false while some residue class is still empty (N below the
/// threshold where the estimate starts to bite); the estimate is then reported,
/// not asserted.
struct SublatticeReport {
  std::int64_t min_count = 0;
  std::int64_t max_count = 0;
  double constant = 0.0;  // min_count / N^{d(d-1)/2}
  long double sublattice_sum = 0.0L;  // S, by direct enumeration
  long double class_sum = 0.0L;       // sum_{n in r + uZ} |A_N g(n)|^q
  long double full_sum = 0.0L;        // ||Ã_N f||_q^q
  bool asymptotic = false;
  bool holds = false;  // full_sum >= S >= min_count * class_sum (1e-12 relative)
};

SublatticeReport sublattice_lower_bound(const LiftResult& lift, const Signal1D& g, const IntPolynomial& P,
                                        std::int64_t N, double q);

// ------------------------------------------------------------ dyadic bridge

/// (i)  I_{lambda,K} f(x) <= 4 sum_{j=1}^{J} 2^{(1-lambda)j} A_{2^j} f(x),
///      J = max(1, ceil(log2 K)), pointwise and hence in l^q;
/// (ii) A_N f(x) <= N^{lambda-1} I_{lambda,K} f(x) for N <= K, pointwise.
struct BridgeReport {
  double lambda = 0.0;
  double q = 0.0;
  std::int64_t K = 0;
  int J = 0;
  double fractional_norm = 0.0;  // ||I_{lambda,K} f||_q
  double dyadic_sum = 0.0;       // sum_j 2^{(1-lambda)j} ||A_{2^j} f||_q
  double norm_ratio = 0.0;       // fractional_norm / dyadic_sum (<= 4)
  double dyadic_min_slack = 0.0;
  bool dyadic_holds = false;
  std::vector<std::int64_t> Ns;
  double pointwise_min_slack = 0.0;
  bool pointwise_holds = false;
};

BridgeReport dyadic_bridge(const IntPolynomial& P, double lambda, std::int64_t K, double q, const Signal1D& f,
                           std::span<const std::int64_t> Ns);

}  // namespace radonlab
