#include "radonlab/signal.hpp"

namespace radonlab {

double checked_exponent(double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidExponent("p = " + std::to_string(p) + " is below 1");
  return p;
}

namespace detail {

double norm_of_magnitudes(std::vector<double>& mags, double p) {
  if (mags.empty()) return 0.0;
  const double top = *std::max_element(mags.begin(), mags.end());
  if (std::isinf(p)) return top;
  if (p == 1.0) return pairwise_sum(mags.data(), mags.size());
  // Scale by the maximum so large p neither overflows nor underflows to zero.
  for (auto& m : mags) m = std::pow(m / top, p);
  return top * std::pow(pairwise_sum(mags.data(), mags.size()), 1.0 / p);
}

}  // namespace detail

SparseSignal SparseSignal::indicator(int dims, const std::vector<Point>& points) {
  SparseSignal out(dims);
  for (const auto& x : points) out.set(x, 1.0);
  return out;
}

void SparseSignal::add(const Point& x, double value) {
  if (static_cast<int>(x.size()) != dims_) throw InvalidArgument("point dimension mismatch");
  if (!std::isfinite(value)) throw InvalidArgument("signal value is not finite");
  entries_[x] += value;
}

void SparseSignal::set(const Point& x, double value) {
  if (static_cast<int>(x.size()) != dims_) throw InvalidArgument("point dimension mismatch");
  if (!std::isfinite(value)) throw InvalidArgument("signal value is not finite");
  entries_[x] = value;
}

SparseSignal to_sparse(const Signal1D& f) {
  SparseSignal out(1);
  for (std::int64_t i = 0; i < f.size(); ++i)
    if (f.values()[i] != 0.0) out.set({f.offset() + i}, f.values()[i]);
  return out;
}

SparseSignal to_sparse(const SignalD& f) {
  SparseSignal out(f.dims());
  const std::size_t d = static_cast<std::size_t>(f.dims());
  std::vector<std::int64_t> x(d);
  if (f.cells() == 0) return out;
  for_each_row(f.extents(), [&](const std::vector<std::int64_t>& idx, std::int64_t row_start) {
    for (std::size_t j = 0; j < d; ++j) x[j] = idx[j] + f.offsets()[j];
    for (std::int64_t i = 0; i < f.extents()[d - 1]; ++i) {
      const double v = f.values()[row_start + i];
      if (v == 0.0) continue;
      x[d - 1] = f.offsets()[d - 1] + i;
      out.set(x, v);
    }
  });
  return out;
}

Signal1D to_dense_1d(const SparseSignal& f) {
  if (f.dims() != 1) throw InvalidArgument("expected a 1D signal");
  if (f.support_size() == 0) return Signal1D();
  const std::int64_t lo = f.entries().begin()->first[0];
  const std::int64_t hi = f.entries().rbegin()->first[0];
  require_window(hi - lo + 1, "dense signal");
  Signal1D::Values v = Signal1D::Values::Zero(hi - lo + 1);
  for (const auto& [x, val] : f.entries()) v[x[0] - lo] = val;
  return Signal1D(lo, std::move(v));
}

SignalD to_dense(const SparseSignal& f) {
  if (f.support_size() == 0) throw InvalidArgument("empty sparse signal has no bounding box");
  const std::size_t d = static_cast<std::size_t>(f.dims());
  std::vector<std::int64_t> lo = f.entries().begin()->first, hi = lo;
  for (const auto& [x, v] : f.entries())
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], x[j]);
      hi[j] = std::max(hi[j], x[j]);
    }
  std::vector<std::int64_t> ext(d);
  for (std::size_t j = 0; j < d; ++j) ext[j] = hi[j] - lo[j] + 1;
  const SignalD shape = SignalD::zeros(lo, ext);
  SignalD::Values v = shape.values();
  for (const auto& [x, val] : f.entries()) v[shape.flat(x)] = val;
  return SignalD(lo, ext, std::move(v));
}

double lp_norm(const SparseSignal& f, double p) {
  p = checked_exponent(p);
  std::vector<double> mags;
  mags.reserve(f.support_size());
  for (const auto& [x, v] : f.entries())
    if (v != 0.0) mags.push_back(std::abs(v));
  return detail::norm_of_magnitudes(mags, p);
}

}  // namespace radonlab
