#pragma once

// Polynomial averages, fractional integrals and the maximal function on Z and
// along the moment curve in Z^d.
//
// Every operator is a weighted sum of translates, out(x) = sum_k w_k f(x + s_k),
// evaluated by direct summation in increasing k. Point evaluations
// (average_at and friends) use the same summation order as the dense
// operators and therefore agree with them bitwise.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "radonlab/poly.hpp"
#include "radonlab/signal.hpp"

namespace radonlab {

/// P(1), ..., P(N); P must be integer-valued.
std::vector<std::int64_t> polynomial_shifts(const IntPolynomial& P, std::int64_t N);

/// Row k-1 holds (k, k^2, ..., k^d) for k = 1..N.
std::vector<std::vector<std::int64_t>> moment_curve_shifts(int d, std::int64_t N);

/// Weights k^{-lambda} for k = 1..K.
std::vector<double> fractional_weights(double lambda, std::int64_t K);

// ------------------------------------------------------------ 1D kernels

/// out(x) = sum_k w_k f(x + shifts[k]) on the full support window; empty
/// weights mean w_k = 1.
template <typename Scalar>
Signal1<Scalar> shift_sum(std::span<const std::int64_t> shifts, std::span<const double> weights,
                          const Signal1<Scalar>& f) {
  if (f.empty() || shifts.empty()) return Signal1<Scalar>();
  const auto [smin, smax] = std::minmax_element(shifts.begin(), shifts.end());
  const std::int64_t out_lo = f.offset() - *smax;
  const std::int64_t out_size = f.size() + (*smax - *smin);
  require_window(out_size, "operator output");
  typename Signal1<Scalar>::Values out = Signal1<Scalar>::Values::Zero(out_size);
  for (std::size_t k = 0; k < shifts.size(); ++k) {
    auto seg = out.segment(f.offset() - shifts[k] - out_lo, f.size());
    if (weights.empty()) {
      seg += f.values();
    } else {
      seg += Scalar(weights[k]) * f.values();
    }
  }
  return Signal1<Scalar>(out_lo, std::move(out));
}

/// sum_k w_k f(x + shifts[k]) at one point.
template <typename F>
auto shift_sum_at(std::span<const std::int64_t> shifts, std::span<const double> weights, const F& f,
                  std::int64_t x) {
  decltype(f(x)) acc{};
  for (std::size_t k = 0; k < shifts.size(); ++k) {
    if (weights.empty()) {
      acc += f(x + shifts[k]);
    } else {
      acc += decltype(acc)(weights[k]) * f(x + shifts[k]);
    }
  }
  return acc;
}

// ------------------------------------------------------------ averages

/// A_N f(x) = (1/N) sum_{k=1}^N f(x + P(k)).
template <typename Scalar>
Signal1<Scalar> average(const IntPolynomial& P, std::int64_t N, const Signal1<Scalar>& f) {
  if (N < 1) throw InvalidArgument("N must be positive");
  const auto shifts = polynomial_shifts(P, N);
  Signal1<Scalar> s = shift_sum<Scalar>(shifts, {}, f);
  return Signal1<Scalar>(s.offset(), s.values() / Scalar(static_cast<double>(N)));
}

/// A_N f(x) at one point, for any f callable on int64.
template <typename F>
auto average_at(std::span<const std::int64_t> shifts, const F& f, std::int64_t x) {
  auto acc = shift_sum_at(shifts, {}, f, x);
  return acc / decltype(acc)(static_cast<double>(shifts.size()));
}

template <typename F>
auto average_at(const IntPolynomial& P, std::int64_t N, const F& f, std::int64_t x) {
  const auto shifts = polynomial_shifts(P, N);
  return average_at(std::span<const std::int64_t>(shifts), f, x);
}

/// Adjoint of A_N: (1/N) sum_k h(y - P(k)).
template <typename Scalar>
Signal1<Scalar> average_adjoint(const IntPolynomial& P, std::int64_t N, const Signal1<Scalar>& h) {
  auto shifts = polynomial_shifts(P, N);
  for (auto& s : shifts) s = -s;
  Signal1<Scalar> s = shift_sum<Scalar>(shifts, {}, h);
  return Signal1<Scalar>(s.offset(), s.values() / Scalar(static_cast<double>(N)));
}

/// A_N f through FFT convolution; cross-check path for large dense windows.
Signal1D average_fft(const IntPolynomial& P, std::int64_t N, const Signal1D& f);

/// Same window and values as A_N over a sparse 1D signal, by scattering each
/// support point to its N preimages.
SparseSignal average(const IntPolynomial& P, std::int64_t N, const SparseSignal& f);

// ------------------------------------------------------ moment curve (dD)

/// out(x) = sum_k w_k f(x + shifts[k]) for vector shifts.
template <typename Scalar>
SignalN<Scalar> shift_sum(const std::vector<std::vector<std::int64_t>>& shifts,
                          std::span<const double> weights, const SignalN<Scalar>& f) {
  const std::size_t d = static_cast<std::size_t>(f.dims());
  std::vector<std::int64_t> smin(d), smax(d), lo(d), ext(d);
  for (std::size_t j = 0; j < d; ++j) {
    smin[j] = smax[j] = shifts.front()[j];
    for (const auto& s : shifts) {
      smin[j] = std::min(smin[j], s[j]);
      smax[j] = std::max(smax[j], s[j]);
    }
    lo[j] = f.offsets()[j] - smax[j];
    ext[j] = f.extents()[j] + (smax[j] - smin[j]);
  }
  SignalN<Scalar> shape = SignalN<Scalar>::zeros(lo, ext);
  typename SignalN<Scalar>::Values out = shape.values();
  const auto& st = shape.strides();
  const std::int64_t row_len = f.extents()[d - 1];
  for (std::size_t k = 0; k < shifts.size(); ++k) {
    const auto& s = shifts[k];
    for_each_row(f.extents(), [&](const std::vector<std::int64_t>& idx, std::int64_t row_start) {
      std::int64_t base = 0;
      for (std::size_t j = 0; j < d; ++j) base += (idx[j] + f.offsets()[j] - s[j] - lo[j]) * st[j];
      auto seg = out.segment(base, row_len);
      if (weights.empty()) {
        seg += f.values().segment(row_start, row_len);
      } else {
        seg += Scalar(weights[k]) * f.values().segment(row_start, row_len);
      }
    });
  }
  return SignalN<Scalar>(lo, ext, std::move(out));
}

/// Ã_N f(x) = (1/N) sum_{k=1}^N f(x_1 + k, x_2 + k^2, ..., x_d + k^d).
template <typename Scalar>
SignalN<Scalar> multidim_average(int d, std::int64_t N, const SignalN<Scalar>& f) {
  if (N < 1) throw InvalidArgument("N must be positive");
  if (f.dims() != d) throw InvalidArgument("signal dimension does not match d");
  const auto shifts = moment_curve_shifts(d, N);
  SignalN<Scalar> s = shift_sum<Scalar>(shifts, {}, f);
  return SignalN<Scalar>(s.offsets(), s.extents(), s.values() / Scalar(static_cast<double>(N)));
}

template <typename Scalar>
SignalN<Scalar> multidim_average_adjoint(int d, std::int64_t N, const SignalN<Scalar>& h) {
  auto shifts = moment_curve_shifts(d, N);
  for (auto& s : shifts)
    for (auto& c : s) c = -c;
  SignalN<Scalar> s = shift_sum<Scalar>(shifts, {}, h);
  return SignalN<Scalar>(s.offsets(), s.extents(), s.values() / Scalar(static_cast<double>(N)));
}

/// Ã_N f at one point.
template <typename F>
double multidim_average_at(const std::vector<std::vector<std::int64_t>>& shifts, const F& f,
                           std::span<const std::int64_t> x) {
  std::vector<std::int64_t> y(x.begin(), x.end());
  double acc = 0.0;
  for (const auto& s : shifts) {
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = x[j] + s[j];
    acc += f(y);
  }
  return acc / static_cast<double>(shifts.size());
}

SparseSignal multidim_average(int d, std::int64_t N, const SparseSignal& f);

// ------------------------------------------------------ fractional integrals

/// Order lambda in (0, 1) and truncation K >= 1.
struct FractionalOrder {
  double lambda;
  std::int64_t K;

  FractionalOrder(double lambda_, std::int64_t K_);
};

/// Largest k >= 1 with x + P(k) in [f_first, f_last] for some x in
/// [x_first, x_last]; 0 if there is none. Beyond it every term of I_lambda
/// vanishes on that window, so truncating there is exact.
std::int64_t exact_truncation(const IntPolynomial& P, std::int64_t f_first, std::int64_t f_last,
                              std::int64_t x_first, std::int64_t x_last);

/// Box version for the moment curve.
std::int64_t exact_truncation(int d, const std::vector<std::int64_t>& f_first,
                              const std::vector<std::int64_t>& f_last,
                              const std::vector<std::int64_t>& x_first,
                              const std::vector<std::int64_t>& x_last);

template <typename SignalT>
struct FractionalResult {
  SignalT values;
  std::int64_t K_used = 0;
  /// Truncation beyond which all terms vanish on the output window.
  std::int64_t K_exact = 0;
  /// False is the TruncationNotExact warning: K_used < K_exact, so the values
  /// are a truncated (smaller, for f >= 0) version of I_lambda f.
  bool exact = false;
};

/// sum_{k=1}^{K} f(x + P(k)) k^{-lambda} on the support window of the truncated sum.
template <typename Scalar>
FractionalResult<Signal1<Scalar>> fractional(const IntPolynomial& P, const FractionalOrder& order,
                                             const Signal1<Scalar>& f) {
  if (P.degree() < 1) throw DegenerateInput("fractional integral of a constant polynomial diverges");
  const auto shifts = polynomial_shifts(P, order.K);
  const auto weights = fractional_weights(order.lambda, order.K);
  FractionalResult<Signal1<Scalar>> r;
  r.values = shift_sum<Scalar>(shifts, weights, f);
  r.K_used = order.K;
  r.K_exact = f.empty() ? 0 : exact_truncation(P, f.offset(), f.last(), r.values.offset(), r.values.last());
  r.exact = r.K_used >= r.K_exact;
  return r;
}

/// Same sum evaluated on the window [x_first, x_last].
template <typename Scalar>
FractionalResult<Signal1<Scalar>> fractional(const IntPolynomial& P, const FractionalOrder& order,
                                             const Signal1<Scalar>& f, std::int64_t x_first,
                                             std::int64_t x_last) {
  if (P.degree() < 1) throw DegenerateInput("fractional integral of a constant polynomial diverges");
  require_window(x_last - x_first + 1, "fractional output");
  const auto shifts = polynomial_shifts(P, order.K);
  const auto weights = fractional_weights(order.lambda, order.K);
  typename Signal1<Scalar>::Values out(std::max<std::int64_t>(0, x_last - x_first + 1));
  for (std::int64_t x = x_first; x <= x_last; ++x) out[x - x_first] = shift_sum_at(shifts, weights, f, x);
  FractionalResult<Signal1<Scalar>> r;
  r.values = Signal1<Scalar>(x_first, std::move(out));
  r.K_used = order.K;
  r.K_exact = f.empty() ? 0 : exact_truncation(P, f.offset(), f.last(), x_first, x_last);
  r.exact = r.K_used >= r.K_exact;
  return r;
}

/// The untruncated I_lambda f on [x_first, x_last] (K chosen as K_exact).
template <typename Scalar>
Signal1<Scalar> fractional_exact(const IntPolynomial& P, double lambda, const Signal1<Scalar>& f,
                                 std::int64_t x_first, std::int64_t x_last) {
  if (f.empty()) return Signal1<Scalar>::zeros(x_first, x_last);
  const std::int64_t K = std::max<std::int64_t>(1, exact_truncation(P, f.offset(), f.last(), x_first, x_last));
  return fractional(P, FractionalOrder(lambda, K), f, x_first, x_last).values;
}

/// sum_{k=1}^{K} k^{-lambda} f(x_1 + k, ..., x_d + k^d) on the support window.
template <typename Scalar>
FractionalResult<SignalN<Scalar>> multidim_fractional(int d, const FractionalOrder& order,
                                                      const SignalN<Scalar>& f) {
  if (f.dims() != d) throw InvalidArgument("signal dimension does not match d");
  const auto shifts = moment_curve_shifts(d, order.K);
  const auto weights = fractional_weights(order.lambda, order.K);
  FractionalResult<SignalN<Scalar>> r;
  r.values = shift_sum<Scalar>(shifts, weights, f);
  r.K_used = order.K;
  std::vector<std::int64_t> f_last(d), x_last(d);
  for (int j = 0; j < d; ++j) {
    f_last[j] = f.offsets()[j] + f.extents()[j] - 1;
    x_last[j] = r.values.offsets()[j] + r.values.extents()[j] - 1;
  }
  r.K_exact = exact_truncation(d, f.offsets(), f_last, r.values.offsets(), x_last);
  r.exact = r.K_used >= r.K_exact;
  return r;
}

/// Ĩ_{d,lambda} f at one point, untruncated.
double multidim_fractional_exact_at(int d, double lambda, const SignalD& f,
                                    std::span<const std::int64_t> x);

// ------------------------------------------------------------ maximal

/// A_* f = max_{1 <= N <= N_max} A_N f, pointwise, for f >= 0.
Signal1D maximal(const IntPolynomial& P, std::int64_t N_max, const Signal1D& f);

}  // namespace radonlab
