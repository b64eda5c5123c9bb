#include "radonlab/averages.hpp"

#include <unsupported/Eigen/FFT>

#include <complex>

namespace radonlab {

std::vector<std::int64_t> polynomial_shifts(const IntPolynomial& P, std::int64_t N) {
  if (N < 1) throw InvalidArgument("N must be positive");
  require_window(N, "shift table");
  return values_on(P, 1, N);
}

std::vector<std::vector<std::int64_t>> moment_curve_shifts(int d, std::int64_t N) {
  if (d < 1) throw InvalidArgument("d must be positive");
  if (N < 1) throw InvalidArgument("N must be positive");
  require_window(N, "shift table");
  std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(N), std::vector<std::int64_t>(d));
  for (std::int64_t k = 1; k <= N; ++k) {
    i128 power = 1;
    for (int j = 0; j < d; ++j) {
      power = checked_mul(power, k);
      out[k - 1][j] = to_int64(power);
    }
  }
  return out;
}

std::vector<double> fractional_weights(double lambda, std::int64_t K) {
  std::vector<double> w(static_cast<std::size_t>(K));
  for (std::int64_t k = 1; k <= K; ++k) w[k - 1] = std::pow(static_cast<double>(k), -lambda);
  return w;
}

FractionalOrder::FractionalOrder(double lambda_, std::int64_t K_) : lambda(lambda_), K(K_) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidArgument("fractional order must lie in (0, 1)");
  if (K < 1) throw InvalidArgument("truncation K must be at least 1");
}

Signal1D average_fft(const IntPolynomial& P, std::int64_t N, const Signal1D& f) {
  if (f.empty()) return Signal1D();
  const auto shifts = polynomial_shifts(P, N);
  const auto [smin, smax] = std::minmax_element(shifts.begin(), shifts.end());
  const std::int64_t span = *smax - *smin;
  const std::int64_t out_size = f.size() + span;
  require_window(out_size, "operator output");
  // out = f * h with h[t] = #{k : smax - P(k) = t} / N.
  std::int64_t L = 1;
  while (L < out_size) L <<= 1;
  require_window(L, "FFT buffer");
  std::vector<double> a(static_cast<std::size_t>(L), 0.0), h(static_cast<std::size_t>(L), 0.0);
  for (std::int64_t i = 0; i < f.size(); ++i) a[i] = f.values()[i];
  for (const auto s : shifts) h[*smax - s] += 1.0 / static_cast<double>(N);
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> A, H;
  fft.fwd(A, a);
  fft.fwd(H, h);
  for (std::size_t i = 0; i < A.size(); ++i) A[i] *= H[i];
  std::vector<double> c;
  fft.inv(c, A);
  Signal1D::Values out(out_size);
  for (std::int64_t i = 0; i < out_size; ++i) out[i] = c[i];
  return Signal1D(f.offset() - *smax, std::move(out));
}

SparseSignal average(const IntPolynomial& P, std::int64_t N, const SparseSignal& f) {
  if (f.dims() != 1) throw InvalidArgument("1D average needs a 1D signal");
  const auto shifts = polynomial_shifts(P, N);
  // Accumulate sums first so each output value is (sum in k order) / N.
  std::map<std::int64_t, std::vector<std::pair<std::size_t, double>>> terms;
  for (const auto& [y, v] : f.entries())
    for (std::size_t k = 0; k < shifts.size(); ++k) terms[y[0] - shifts[k]].emplace_back(k, v);
  SparseSignal out(1);
  for (auto& [x, t] : terms) {
    std::sort(t.begin(), t.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    double acc = 0.0;
    for (const auto& [k, v] : t) acc += v;
    out.set({x}, acc / static_cast<double>(N));
  }
  return out;
}

SparseSignal multidim_average(int d, std::int64_t N, const SparseSignal& f) {
  if (f.dims() != d) throw InvalidArgument("signal dimension does not match d");
  const auto shifts = moment_curve_shifts(d, N);
  std::map<SparseSignal::Point, std::vector<std::pair<std::size_t, double>>> terms;
  SparseSignal::Point x(static_cast<std::size_t>(d));
  for (const auto& [y, v] : f.entries())
    for (std::size_t k = 0; k < shifts.size(); ++k) {
      for (int j = 0; j < d; ++j) x[j] = y[j] - shifts[k][j];
      terms[x].emplace_back(k, v);
    }
  SparseSignal out(d);
  for (auto& [p, t] : terms) {
    std::sort(t.begin(), t.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    double acc = 0.0;
    for (const auto& [k, v] : t) acc += v;
    out.set(p, acc / static_cast<double>(N));
  }
  return out;
}

std::int64_t exact_truncation(const IntPolynomial& P, std::int64_t f_first, std::int64_t f_last,
                              std::int64_t x_first, std::int64_t x_last) {
  if (P.degree() < 1) throw DegenerateInput("constant polynomial has no exact truncation");
  if (f_first > f_last || x_first > x_last) return 0;
  // Need P(k) in [lo, hi].
  const i128 lo = checked_sub(f_first, x_last);
  const i128 hi = checked_sub(f_last, x_first);
  // Past the Cauchy bound of P' every critical point is behind us and P is
  // strictly monotone, with the sign of the leading coefficient.
  const auto& c = P.numerators();
  const int d = P.degree();
  Rational bound(0);
  if (d >= 2) {
    const Rational lead = Rational(checked_mul(d, c[d]));
    for (int j = 1; j < d; ++j) {
      const Rational ratio = abs(Rational(checked_mul(j, c[j])) / lead);
      if (ratio > bound) bound = ratio;
    }
    bound += Rational(1);
  }
  const bool increasing = c[d] > 0;
  const i128 monotone_from = bound.ceil();
  std::int64_t last_hit = 0;
  for (std::int64_t k = 1;; ++k) {
    const i128 v = eval(P, k);
    if (v >= lo && v <= hi) last_hit = k;
    if (k > monotone_from && ((increasing && v > hi) || (!increasing && v < lo))) break;
  }
  return last_hit;
}

std::int64_t exact_truncation(int d, const std::vector<std::int64_t>& f_first,
                              const std::vector<std::int64_t>& f_last,
                              const std::vector<std::int64_t>& x_first,
                              const std::vector<std::int64_t>& x_last) {
  // k^j is increasing in k, so the admissible k form an interval.
  const i128 k_cap = checked_sub(f_last[0], x_first[0]);
  std::int64_t last_hit = 0;
  for (i128 k = 1; k <= k_cap; ++k) {
    bool hit = true;
    i128 power = 1;
    for (int j = 0; j < d && hit; ++j) {
      power = checked_mul(power, k);
      hit = power >= checked_sub(f_first[j], x_last[j]) && power <= checked_sub(f_last[j], x_first[j]);
    }
    if (hit) last_hit = to_int64(k);
  }
  return last_hit;
}

double multidim_fractional_exact_at(int d, double lambda, const SignalD& f,
                                    std::span<const std::int64_t> x) {
  std::vector<std::int64_t> f_last(d), xv(x.begin(), x.end());
  for (int j = 0; j < d; ++j) f_last[j] = f.offsets()[j] + f.extents()[j] - 1;
  const std::int64_t K = exact_truncation(d, f.offsets(), f_last, xv, xv);
  if (K == 0) return 0.0;
  const auto shifts = moment_curve_shifts(d, K);
  std::vector<std::int64_t> y(static_cast<std::size_t>(d));
  double acc = 0.0;
  for (std::int64_t k = 1; k <= K; ++k) {
    for (int j = 0; j < d; ++j) y[j] = x[j] + shifts[k - 1][j];
    acc += std::pow(static_cast<double>(k), -lambda) * f(y);
  }
  return acc;
}

Signal1D maximal(const IntPolynomial& P, std::int64_t N_max, const Signal1D& f) {
  if (N_max < 1) throw InvalidArgument("N_max must be positive");
  if (!is_nonnegative(f)) throw NegativeInput("maximal function needs f >= 0");
  if (f.empty()) return Signal1D();
  const auto shifts = polynomial_shifts(P, N_max);
  const auto [smin, smax] = std::minmax_element(shifts.begin(), shifts.end());
  const std::int64_t out_lo = f.offset() - *smax;
  const std::int64_t out_size = f.size() + (*smax - *smin);
  require_window(out_size, "maximal output");
  Signal1D::Values running = Signal1D::Values::Zero(out_size);
  Signal1D::Values best = Signal1D::Values::Zero(out_size);
  for (std::int64_t N = 1; N <= N_max; ++N) {
    running.segment(f.offset() - shifts[N - 1] - out_lo, f.size()) += f.values();
    best = best.max(running / static_cast<double>(N));
  }
  return Signal1D(out_lo, std::move(best));
}

}  // namespace radonlab
