#pragma once

// Finitely supported functions on Z and Z^d.
//
// Signal1 and SignalN store a dense window (Eigen array) that contains the
// support; reads outside the window return zero. SparseSignal is an ordered
// point map used for extremizer families whose dense window would not fit.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "radonlab/errors.hpp"
#include "radonlab/rational.hpp"

namespace radonlab {

/// Largest dense window any operator may allocate.
inline constexpr std::int64_t kMaxWindowCells = std::int64_t{1} << 27;

inline void require_window(std::int64_t cells, const std::string& what) {
  if (cells < 0 || cells > kMaxWindowCells)
    throw BudgetExceeded(what + " needs " + std::to_string(cells) + " cells (cap " +
                         std::to_string(kMaxWindowCells) + ")");
}

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename Scalar>
bool is_finite(const Scalar& v) {
  if constexpr (is_complex<Scalar>::value) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  } else {
    return std::isfinite(v);
  }
}

template <typename Scalar>
double magnitude(const Scalar& v) {
  using std::abs;
  return static_cast<double>(abs(v));
}

/// Fixed-shape pairwise summation; the tree depends only on n.
template <typename T>
T pairwise_sum(const T* data, std::size_t n) {
  constexpr std::size_t kLeaf = 64;
  if (n <= kLeaf) {
    T acc = T(0);
    for (std::size_t i = 0; i < n; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

/// l^p norm of the given magnitudes (all > 0, in index order).
double norm_of_magnitudes(std::vector<double>& mags, double p);

}  // namespace detail

double checked_exponent(double p);

template <typename Scalar>
class Signal1 {
 public:
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  Signal1() = default;
  Signal1(std::int64_t offset, Values values) : offset_(offset), values_(std::move(values)) {
    require_window(static_cast<std::int64_t>(values_.size()), "signal");
    for (Eigen::Index i = 0; i < values_.size(); ++i)
      if (!detail::is_finite(values_[i])) throw InvalidArgument("signal value is not finite");
  }

  static Signal1 zeros(std::int64_t first, std::int64_t last) {
    require_window(last - first + 1, "signal");
    return Signal1(first, Values::Zero(std::max<std::int64_t>(0, last - first + 1)));
  }
  static Signal1 delta(std::int64_t at, Scalar value = Scalar(1)) {
    return Signal1(at, Values::Constant(1, value));
  }
  static Signal1 indicator(std::int64_t first, std::int64_t last) {
    require_window(last - first + 1, "indicator");
    return Signal1(first, Values::Ones(std::max<std::int64_t>(0, last - first + 1)));
  }
  /// Indicator (times value) of a finite point set, materialized densely.
  static Signal1 from_points(std::span<const std::int64_t> points, Scalar value = Scalar(1)) {
    if (points.empty()) return Signal1();
    const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
    Signal1 out = zeros(*lo, *hi);
    for (const auto x : points) out.values_[x - *lo] = value;
    return out;
  }

  std::int64_t offset() const { return offset_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  std::int64_t last() const { return offset_ + size() - 1; }
  bool empty() const { return values_.size() == 0; }

  Scalar operator()(std::int64_t x) const {
    const std::int64_t i = x - offset_;
    return (i >= 0 && i < size()) ? values_[i] : Scalar(0);
  }

  const Values& values() const { return values_; }

 private:
  std::int64_t offset_ = 0;
  Values values_;
};

using Signal1D = Signal1<double>;
using Signal1C = Signal1<std::complex<double>>;

/// Row-major dense window on Z^d (last axis contiguous).
template <typename Scalar>
class SignalN {
 public:
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  using Index = std::vector<std::int64_t>;

  SignalN() = default;
  SignalN(Index offsets, Index extents, Values values)
      : offsets_(std::move(offsets)), extents_(std::move(extents)), values_(std::move(values)) {
    if (offsets_.empty() || offsets_.size() != extents_.size())
      throw InvalidArgument("signal needs d >= 1 matching offsets and extents");
    std::int64_t cells = 1;
    for (const auto e : extents_) {
      if (e < 0) throw InvalidArgument("negative extent");
      if (e > 0 && cells > kMaxWindowCells / e) require_window(kMaxWindowCells + 1, "signal");
      cells *= e;
    }
    require_window(cells, "signal");
    if (cells != static_cast<std::int64_t>(values_.size()))
      throw InvalidArgument("value count does not match the product of extents");
    for (Eigen::Index i = 0; i < values_.size(); ++i)
      if (!detail::is_finite(values_[i])) throw InvalidArgument("signal value is not finite");
    compute_strides();
  }

  static SignalN zeros(Index offsets, Index extents) {
    std::int64_t cells = 1;
    for (const auto e : extents) {
      if (e > 0 && cells > kMaxWindowCells / e) require_window(kMaxWindowCells + 1, "signal");
      cells *= std::max<std::int64_t>(e, 0);
    }
    require_window(cells, "signal");
    return SignalN(std::move(offsets), std::move(extents), Values::Zero(cells));
  }
  static SignalN delta(const Index& at, Scalar value = Scalar(1)) {
    return SignalN(at, Index(at.size(), 1), Values::Constant(1, value));
  }
  /// Indicator of the box first[j] <= x_j <= last[j].
  static SignalN box(const Index& first, const Index& last) {
    Index ext(first.size());
    for (std::size_t j = 0; j < first.size(); ++j) ext[j] = std::max<std::int64_t>(0, last[j] - first[j] + 1);
    SignalN out = zeros(first, ext);
    out.values_.setOnes();
    return out;
  }
  static SignalN from_points(const std::vector<Index>& points, Scalar value = Scalar(1)) {
    if (points.empty()) throw InvalidArgument("empty point set");
    const std::size_t d = points.front().size();
    Index lo = points.front(), hi = points.front();
    for (const auto& x : points)
      for (std::size_t j = 0; j < d; ++j) {
        lo[j] = std::min(lo[j], x[j]);
        hi[j] = std::max(hi[j], x[j]);
      }
    Index ext(d);
    for (std::size_t j = 0; j < d; ++j) ext[j] = hi[j] - lo[j] + 1;
    SignalN out = zeros(lo, ext);
    for (const auto& x : points) out.values_[out.flat(x)] = value;
    return out;
  }

  int dims() const { return static_cast<int>(extents_.size()); }
  const Index& offsets() const { return offsets_; }
  const Index& extents() const { return extents_; }
  const Index& strides() const { return strides_; }
  std::int64_t cells() const { return static_cast<std::int64_t>(values_.size()); }

  bool contains(std::span<const std::int64_t> x) const {
    for (std::size_t j = 0; j < extents_.size(); ++j) {
      const std::int64_t i = x[j] - offsets_[j];
      if (i < 0 || i >= extents_[j]) return false;
    }
    return true;
  }
  /// Flat position of an in-window point.
  std::int64_t flat(std::span<const std::int64_t> x) const {
    std::int64_t pos = 0;
    for (std::size_t j = 0; j < extents_.size(); ++j) pos += (x[j] - offsets_[j]) * strides_[j];
    return pos;
  }
  Scalar operator()(std::span<const std::int64_t> x) const {
    return contains(x) ? values_[flat(x)] : Scalar(0);
  }
  Scalar operator()(const Index& x) const { return (*this)(std::span<const std::int64_t>(x)); }

  const Values& values() const { return values_; }

 private:
  void compute_strides() {
    strides_.assign(extents_.size(), 1);
    for (int j = static_cast<int>(extents_.size()) - 2; j >= 0; --j)
      strides_[j] = strides_[j + 1] * extents_[j + 1];
  }

  Index offsets_;
  Index extents_;
  Index strides_;
  Values values_;
};

using SignalD = SignalN<double>;

/// Calls fn(point, flat_row_start) for every row (all axes but the last) of a
/// row-major block with the given extents; point[d-1] is set to 0.
template <typename Fn>
void for_each_row(const std::vector<std::int64_t>& extents, Fn&& fn) {
  const std::size_t d = extents.size();
  for (const auto e : extents)
    if (e <= 0) return;
  std::vector<std::int64_t> idx(d, 0);
  const std::int64_t row_len = extents[d - 1];
  std::int64_t row = 0;
  while (true) {
    fn(static_cast<const std::vector<std::int64_t>&>(idx), row * row_len);
    ++row;
    int j = static_cast<int>(d) - 2;
    for (; j >= 0; --j) {
      if (++idx[j] < extents[j]) break;
      idx[j] = 0;
    }
    if (j < 0) return;
  }
}

/// Finitely supported real function stored as an ordered point map.
class SparseSignal {
 public:
  using Point = std::vector<std::int64_t>;

  explicit SparseSignal(int dims) : dims_(dims) {
    if (dims < 1) throw InvalidArgument("sparse signal needs d >= 1");
  }
  static SparseSignal indicator(int dims, const std::vector<Point>& points);

  int dims() const { return dims_; }
  void add(const Point& x, double value);
  void set(const Point& x, double value);
  double operator()(const Point& x) const {
    const auto it = entries_.find(x);
    return it == entries_.end() ? 0.0 : it->second;
  }
  const std::map<Point, double>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }

 private:
  int dims_;
  std::map<Point, double> entries_;
};

/// Nonzero entries of a dense signal as a sparse one, and back. to_dense
/// materialises the bounding box of the support (subject to the window cap).
SparseSignal to_sparse(const Signal1D& f);
SparseSignal to_sparse(const SignalD& f);
Signal1D to_dense_1d(const SparseSignal& f);
SignalD to_dense(const SparseSignal& f);

// ---------------------------------------------------------------- norms

/// l^p norm for p in [1, inf]; accumulates the nonzero entries in index order
/// with pairwise summation, so zero padding and translation leave it bitwise
/// unchanged.
template <typename Derived>
double lp_norm_values(const Eigen::DenseBase<Derived>& values, double p) {
  p = checked_exponent(p);
  std::vector<double> mags;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double m = detail::magnitude(values.derived().coeff(i));
    if (m != 0.0) mags.push_back(m);
  }
  return detail::norm_of_magnitudes(mags, p);
}

template <typename Scalar>
double lp_norm(const Signal1<Scalar>& f, double p) {
  return lp_norm_values(f.values(), p);
}
template <typename Scalar>
double lp_norm(const SignalN<Scalar>& f, double p) {
  return lp_norm_values(f.values(), p);
}
double lp_norm(const SparseSignal& f, double p);

template <typename Signal>
double lp_norm(const Signal& f, const Exponent& p) {
  return lp_norm(f, p.value());
}

/// Sum of all values (pairwise, in index order).
template <typename Scalar>
Scalar sum(const Signal1<Scalar>& f) {
  return detail::pairwise_sum(f.values().data(), static_cast<std::size_t>(f.size()));
}
template <typename Scalar>
Scalar sum(const SignalN<Scalar>& f) {
  return detail::pairwise_sum(f.values().data(), static_cast<std::size_t>(f.cells()));
}

template <typename Scalar>
bool is_nonnegative(const Signal1<Scalar>& f) {
  return f.empty() || f.values().minCoeff() >= Scalar(0);
}
template <typename Scalar>
bool is_nonnegative(const SignalN<Scalar>& f) {
  return f.cells() == 0 || f.values().minCoeff() >= Scalar(0);
}

// ------------------------------------------------------- algebra (1D)

/// translate(f, s)(x) = f(x + s).
template <typename Scalar>
Signal1<Scalar> translate(const Signal1<Scalar>& f, std::int64_t shift) {
  return Signal1<Scalar>(f.offset() - shift, f.values());
}

template <typename Scalar>
Signal1<Scalar> operator*(Scalar alpha, const Signal1<Scalar>& f) {
  return Signal1<Scalar>(f.offset(), alpha * f.values());
}

template <typename Scalar>
Signal1<Scalar> operator+(const Signal1<Scalar>& f, const Signal1<Scalar>& g) {
  if (f.empty()) return g;
  if (g.empty()) return f;
  const std::int64_t lo = std::min(f.offset(), g.offset());
  const std::int64_t hi = std::max(f.last(), g.last());
  require_window(hi - lo + 1, "sum");
  typename Signal1<Scalar>::Values v = Signal1<Scalar>::Values::Zero(hi - lo + 1);
  v.segment(f.offset() - lo, f.size()) += f.values();
  v.segment(g.offset() - lo, g.size()) += g.values();
  return Signal1<Scalar>(lo, std::move(v));
}

template <typename Scalar>
Signal1<Scalar> operator-(const Signal1<Scalar>& f, const Signal1<Scalar>& g) {
  return f + Scalar(-1) * g;
}

template <typename Scalar>
Signal1<double> abs(const Signal1<Scalar>& f) {
  return Signal1<double>(f.offset(), f.values().abs().template cast<double>());
}

/// Values of f on the window [first, last] (zero where f has no entry).
template <typename Scalar>
Signal1<Scalar> restrict(const Signal1<Scalar>& f, std::int64_t first, std::int64_t last) {
  Signal1<Scalar> out = Signal1<Scalar>::zeros(first, last);
  typename Signal1<Scalar>::Values v = out.values();
  const std::int64_t lo = std::max(first, f.offset());
  const std::int64_t hi = std::min(last, f.last());
  if (lo <= hi) v.segment(lo - first, hi - lo + 1) = f.values().segment(lo - f.offset(), hi - lo + 1);
  return Signal1<Scalar>(first, std::move(v));
}

// ------------------------------------------------------- algebra (dD)

template <typename Scalar>
SignalN<Scalar> translate(const SignalN<Scalar>& f, const std::vector<std::int64_t>& shift) {
  auto off = f.offsets();
  for (std::size_t j = 0; j < off.size(); ++j) off[j] -= shift[j];
  return SignalN<Scalar>(off, f.extents(), f.values());
}

template <typename Scalar>
SignalN<Scalar> operator*(Scalar alpha, const SignalN<Scalar>& f) {
  return SignalN<Scalar>(f.offsets(), f.extents(), alpha * f.values());
}

template <typename Scalar>
SignalN<Scalar> operator+(const SignalN<Scalar>& f, const SignalN<Scalar>& g) {
  if (f.dims() != g.dims()) throw InvalidArgument("dimension mismatch");
  const std::size_t d = static_cast<std::size_t>(f.dims());
  std::vector<std::int64_t> lo(d), ext(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = std::min(f.offsets()[j], g.offsets()[j]);
    ext[j] = std::max(f.offsets()[j] + f.extents()[j], g.offsets()[j] + g.extents()[j]) - lo[j];
  }
  SignalN<Scalar> shape = SignalN<Scalar>::zeros(lo, ext);
  typename SignalN<Scalar>::Values v = shape.values();
  for (const SignalN<Scalar>* src : {&f, &g}) {
    const auto& sext = src->extents();
    for_each_row(sext, [&](const std::vector<std::int64_t>& idx, std::int64_t row_start) {
      std::int64_t base = 0;
      for (std::size_t j = 0; j < d; ++j) base += (idx[j] + src->offsets()[j] - lo[j]) * shape.strides()[j];
      v.segment(base, sext[d - 1]) += src->values().segment(row_start, sext[d - 1]);
    });
  }
  return SignalN<Scalar>(lo, ext, std::move(v));
}

template <typename Scalar>
SignalN<double> abs(const SignalN<Scalar>& f) {
  return SignalN<double>(f.offsets(), f.extents(), f.values().abs().template cast<double>());
}

/// Values of f on the box with the given offsets and extents.
template <typename Scalar>
SignalN<Scalar> restrict(const SignalN<Scalar>& f, const std::vector<std::int64_t>& offsets,
                         const std::vector<std::int64_t>& extents) {
  SignalN<Scalar> shape = SignalN<Scalar>::zeros(offsets, extents);
  typename SignalN<Scalar>::Values v = shape.values();
  const std::size_t d = offsets.size();
  std::vector<std::int64_t> x(d);
  for_each_row(extents, [&](const std::vector<std::int64_t>& idx, std::int64_t row_start) {
    for (std::size_t j = 0; j < d; ++j) x[j] = idx[j] + offsets[j];
    for (std::int64_t i = 0; i < extents[d - 1]; ++i) {
      x[d - 1] = offsets[d - 1] + i;
      v[row_start + i] = f(x);
    }
  });
  return SignalN<Scalar>(offsets, extents, std::move(v));
}

}  // namespace radonlab
