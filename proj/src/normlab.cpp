#include "radonlab/normlab.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "radonlab/averages.hpp"
#include "radonlab/random.hpp"

namespace radonlab {

namespace {

constexpr std::int64_t kWitnessCap = std::int64_t{1} << 20;

RatioSample make_sample(std::int64_t N, double p, double q, double out_norm, double in_norm, std::string tag) {
  if (in_norm == 0.0) throw ZeroInput("ratio needs ||f||_p > 0");
  return RatioSample{N, p, q, out_norm / in_norm, out_norm, in_norm, std::move(tag)};
}

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

// ||h||_q where h takes the value c / N on weight[c] points.
double norm_from_counts(const std::map<std::int64_t, long double>& weight, std::int64_t N, double q) {
  if (std::isinf(q)) {
    for (auto it = weight.rbegin(); it != weight.rend(); ++it)
      if (it->first > 0 && it->second > 0) return static_cast<double>(it->first) / static_cast<double>(N);
    return 0.0;
  }
  long double acc = 0.0L;
  for (const auto& [c, w] : weight)
    if (c > 0) acc += w * std::pow(static_cast<long double>(c) / N, static_cast<long double>(q));
  return static_cast<double>(std::pow(acc, 1.0L / q));
}

// Values of A_N 1_{[1, L]}: x is covered by k iff 1 - P(k) <= x <= L - P(k).
std::map<std::int64_t, long double> interval_counts(const std::vector<std::int64_t>& shifts, std::int64_t L) {
  std::map<std::int64_t, std::int64_t> delta;
  for (const auto s : shifts) {
    delta[1 - s] += 1;
    delta[L - s + 1] -= 1;
  }
  std::map<std::int64_t, long double> weight;
  std::int64_t count = 0;
  for (auto it = delta.begin(); it != delta.end(); ++it) {
    count += it->second;
    const auto next = std::next(it);
    if (next != delta.end() && count > 0) weight[count] += static_cast<long double>(next->first - it->first);
  }
  return weight;
}

struct Piece {
  long double length;
  std::int64_t klo, khi;
};

// Along axis j, x_j is compatible with k iff 1 - k^j <= x_j <= 2N^j - k^j. The
// compatible k form an interval that only changes at 2N breakpoints.
std::vector<Piece> box_axis_pieces(int j, std::int64_t N) {
  std::vector<std::int64_t> power(N + 1);
  for (std::int64_t k = 1; k <= N; ++k) power[k] = to_int64(checked_pow(k, j));
  const std::int64_t top = 2 * power[N];
  std::set<std::int64_t> cuts;
  for (std::int64_t k = 1; k <= N; ++k) {
    cuts.insert(1 - power[k]);
    cuts.insert(top - power[k] + 1);
  }
  std::vector<Piece> pieces;
  for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
    const std::int64_t x = *it;
    std::int64_t klo = N + 1, khi = 0;
    for (std::int64_t k = 1; k <= N; ++k)
      if (power[k] >= 1 - x && power[k] <= top - x) {
        klo = std::min(klo, k);
        khi = std::max(khi, k);
      }
    if (klo <= khi) pieces.push_back({static_cast<long double>(*std::next(it) - x), klo, khi});
  }
  return pieces;
}

void combine_pieces(const std::vector<std::vector<Piece>>& axes, std::size_t j, long double length,
                    std::int64_t klo, std::int64_t khi, std::map<std::int64_t, long double>& weight) {
  if (j == axes.size()) {
    weight[khi - klo + 1] += length;
    return;
  }
  for (const auto& piece : axes[j]) {
    const std::int64_t lo = std::max(klo, piece.klo), hi = std::min(khi, piece.khi);
    if (lo <= hi) combine_pieces(axes, j + 1, length * piece.length, lo, hi, weight);
  }
}

SparseSignal box_signal(const std::vector<std::int64_t>& first, const std::vector<std::int64_t>& last) {
  return to_sparse(SignalD::box(first, last));
}

}  // namespace

// ------------------------------------------------------------ ratios

RatioSample ratio(const IntPolynomial& P, std::int64_t N, const Signal1D& f, double p, double q) {
  const double in = lp_norm(f, p);
  if (in == 0.0) throw ZeroInput("ratio needs ||f||_p > 0");
  return make_sample(N, p, q, lp_norm(average(P, N, f), q), in, "");
}

RatioSample ratio(const IntPolynomial& P, std::int64_t N, const SparseSignal& f, double p, double q) {
  const double in = lp_norm(f, p);
  if (in == 0.0) throw ZeroInput("ratio needs ||f||_p > 0");
  return make_sample(N, p, q, lp_norm(average(P, N, f), q), in, "");
}

RatioSample ratio(int d, std::int64_t N, const SignalD& f, double p, double q) {
  const double in = lp_norm(f, p);
  if (in == 0.0) throw ZeroInput("ratio needs ||f||_p > 0");
  return make_sample(N, p, q, lp_norm(multidim_average(d, N, f), q), in, "");
}

RatioSample ratio(int d, std::int64_t N, const SparseSignal& f, double p, double q) {
  const double in = lp_norm(f, p);
  if (in == 0.0) throw ZeroInput("ratio needs ||f||_p > 0");
  return make_sample(N, p, q, lp_norm(multidim_average(d, N, f), q), in, "");
}

// ------------------------------------------------------------ families

char family_letter(Family f) { return static_cast<char>('a' + static_cast<int>(f)); }

Family family_from_letter(char c) {
  if (c < 'a' || c > 'f') throw InvalidArgument(std::string("unknown extremizer family '") + c + "'");
  return static_cast<Family>(c - 'a');
}

bool is_multidim(Family f) { return f == Family::MomentCurve || f == Family::MultiDelta || f == Family::Box; }

Extremizer extremizer(Family family, const IntPolynomial& P, std::int64_t N, bool allow_noninjective) {
  if (is_multidim(family)) throw InvalidArgument("family needs the moment-curve constructor");
  if (N < 1) throw InvalidArgument("N must be positive");
  Extremizer e{family, N, 1, SparseSignal(1), {}, {}, 0, true, P.numerators(), P.denominator()};
  const auto shifts = polynomial_shifts(P, N);
  switch (family) {
    case Family::PolynomialValues: {
      for (const auto s : shifts) e.points.set({s}, 1.0);
      e.support = static_cast<std::int64_t>(e.points.support_size());
      e.injective = e.support == N;
      if (!e.injective && !allow_noninjective)
        throw NonInjective(P.to_string() + " takes only " + std::to_string(e.support) + " distinct values on [1, " +
                           std::to_string(N) + "]");
      break;
    }
    case Family::Delta:
      e.points.set({0}, 1.0);
      e.support = 1;
      break;
    case Family::Interval: {
      std::int64_t top = 0;
      for (const auto s : shifts) top = std::max(top, s < 0 ? -s : s);
      const std::int64_t L = std::max<std::int64_t>(1, to_int64(checked_mul(2, top)));
      e.first = {1};
      e.last = {L};
      e.support = L;
      break;
    }
    default:
      break;
  }
  return e;
}

Extremizer extremizer(Family family, int d, std::int64_t N) {
  if (!is_multidim(family)) throw InvalidArgument("family needs the polynomial constructor");
  if (d < 1) throw InvalidArgument("d must be positive");
  if (N < 1) throw InvalidArgument("N must be positive");
  Extremizer e{family, N, d, SparseSignal(d), {}, {}, 0, true, {}, 1};
  switch (family) {
    case Family::MomentCurve: {
      for (const auto& row : moment_curve_shifts(d, N)) e.points.set(row, 1.0);
      e.support = N;
      break;
    }
    case Family::MultiDelta:
      e.points.set(SparseSignal::Point(static_cast<std::size_t>(d), 0), 1.0);
      e.support = 1;
      break;
    case Family::Box: {
      i128 cells = 1;
      for (int j = 1; j <= d; ++j) {
        e.first.push_back(1);
        e.last.push_back(to_int64(checked_mul(2, checked_pow(N, j))));
        cells = checked_mul(cells, e.last.back());
      }
      e.support = to_int64(cells);
      break;
    }
    default:
      break;
  }
  return e;
}

FamilyMeasurement measure(const Extremizer& e, double p, double q) {
  checked_exponent(p);
  checked_exponent(q);
  FamilyMeasurement m{e.family, e.N, p, q, 0.0, 0.0, true, 0.0, e.support};
  const double N = static_cast<double>(e.N);
  switch (e.family) {
    case Family::PolynomialValues: {
      const auto P = e.polynomial();
      const double in = lp_norm(e.points, p);
      const auto at = [&](std::int64_t x) { return e.points({x}); };
      m.witness = average_at(P, e.N, at, 0) / in;
      m.predicted = std::pow(static_cast<double>(e.support), -inv(p));
      m.full_ratio = ratio(P, e.N, e.points, p, q).ratio;
      break;
    }
    case Family::Delta: {
      const auto P = e.polynomial();
      m.full_ratio = ratio(P, e.N, e.points, p, q).ratio;
      m.witness = m.full_ratio;
      std::map<std::int64_t, std::int64_t> mult;
      for (const auto s : polynomial_shifts(P, e.N)) ++mult[s];
      if (static_cast<std::int64_t>(mult.size()) == e.N) {
        m.predicted = std::pow(N, inv(q) - 1.0);
      } else {
        std::map<std::int64_t, long double> weight;
        for (const auto& [s, c] : mult) weight[c] += 1.0L;
        m.predicted = norm_from_counts(weight, e.N, q);
      }
      break;
    }
    case Family::Interval: {
      const auto shifts = polynomial_shifts(e.polynomial(), e.N);
      const std::int64_t L = e.last[0];
      const auto [lo, hi] = std::minmax_element(shifts.begin(), shifts.end());
      const double in = std::pow(static_cast<double>(L), inv(p));
      m.full_ratio = norm_from_counts(interval_counts(shifts, L), e.N, q) / in;
      m.witness = m.full_ratio;
      const std::int64_t c = std::max<std::int64_t>(0, L - *hi + *lo);
      m.predicted = c == 0 ? 0.0 : std::pow(static_cast<double>(c), inv(q)) / in;
      m.exact = false;
      break;
    }
    case Family::MomentCurve: {
      const double in = lp_norm(e.points, p);
      const auto shifts = moment_curve_shifts(e.d, e.N);
      const auto at = [&](const std::vector<std::int64_t>& x) { return e.points(x); };
      const std::vector<std::int64_t> origin(static_cast<std::size_t>(e.d), 0);
      m.witness = multidim_average_at(shifts, at, origin) / in;
      m.predicted = std::pow(N, -inv(p));
      m.full_ratio = ratio(e.d, e.N, e.points, p, q).ratio;
      break;
    }
    case Family::MultiDelta:
      m.full_ratio = ratio(e.d, e.N, e.points, p, q).ratio;
      m.witness = m.full_ratio;
      m.predicted = std::pow(N, inv(q) - 1.0);
      break;
    case Family::Box: {
      std::vector<std::vector<Piece>> axes;
      for (int j = 1; j <= e.d; ++j) axes.push_back(box_axis_pieces(j, e.N));
      std::map<std::int64_t, long double> weight;
      combine_pieces(axes, 0, 1.0L, 1, e.N, weight);
      const double in = std::pow(static_cast<double>(e.support), inv(p));
      m.full_ratio = norm_from_counts(weight, e.N, q) / in;
      m.witness = m.full_ratio;
      long double core = 1.0L;
      for (int j = 1; j <= e.d; ++j) core *= static_cast<long double>(checked_pow(e.N, j) + 1);
      m.predicted = static_cast<double>(std::pow(core, static_cast<long double>(inv(q)))) / in;
      m.exact = false;
      break;
    }
  }
  return m;
}

// ------------------------------------------------------------ search

std::optional<double> proven_upper_bound(double p, double q) {
  if (q >= p) return 1.0;
  return std::nullopt;
}

namespace {

class Best {
 public:
  void offer(const RatioSample& s, const std::function<std::optional<SparseSignal>()>& witness) {
    if (has_ && !(s.ratio > best_.ratio)) return;
    has_ = true;
    best_ = s;
    witness_ = witness();
  }
  const RatioSample& sample() const { return best_; }
  SearchResult finish(double p, double q, const SearchOptions& options) {
    SearchResult r;
    r.best = best_;
    r.witness = std::move(witness_);
    r.bound = proven_upper_bound(p, q);
    if (options.upper_bound) r.bound = r.bound ? std::min(*r.bound, *options.upper_bound) : *options.upper_bound;
    r.violation = r.bound && r.best.ratio > *r.bound * (1.0 + 1e-12);
    return r;
  }

 private:
  bool has_ = false;
  RatioSample best_;
  std::optional<SparseSignal> witness_;
};

const char* kRandomKinds[] = {"uniform", "bernoulli(1/N)", "bernoulli(N^-1/2)", "bernoulli(1/2)"};

double random_entry(Rng& rng, unsigned kind, std::int64_t N) {
  switch (kind) {
    case 0:
      return rng.uniform();
    case 1:
      return rng.bernoulli(1.0 / static_cast<double>(N)) ? 1.0 : 0.0;
    case 2:
      return rng.bernoulli(1.0 / std::sqrt(static_cast<double>(N))) ? 1.0 : 0.0;
    default:
      return rng.bernoulli(0.5) ? 1.0 : 0.0;
  }
}

bool ascent_applies(double p, double q) { return p > 1.0 && !std::isinf(p) && !std::isinf(q); }

template <typename SignalT>
double max_value(const SignalT& f) {
  return f.values().size() == 0 ? 0.0 : f.values().maxCoeff();
}

}  // namespace

SearchResult search_near_extremal(const IntPolynomial& P, std::int64_t N, double p, double q,
                                  const SearchOptions& options) {
  checked_exponent(p);
  checked_exponent(q);
  Best best;
  for (const Family fam : {Family::PolynomialValues, Family::Delta, Family::Interval}) {
    const auto e = extremizer(fam, P, N, true);
    RatioSample s{N, p, q, measure(e, p, q).full_ratio, 0.0, 0.0, std::string("family:") + family_letter(fam)};
    best.offer(s, [&]() -> std::optional<SparseSignal> {
      if (fam != Family::Interval) return e.points;
      if (e.support > kWitnessCap) return std::nullopt;
      return to_sparse(Signal1D::indicator(e.first[0], e.last[0]));
    });
  }

  std::int64_t W = options.window;
  if (W == 0) {
    std::int64_t top = 1;
    for (const auto s : polynomial_shifts(P, N)) top = std::max(top, 2 * (s < 0 ? -s : s));
    W = std::min<std::int64_t>(top, 4096);
  }
  if (W < 1) throw InvalidArgument("search window must be positive");
  const auto try_signal = [&](const Signal1D& f, const std::string& tag) {
    if (lp_norm(f, p) == 0.0) return -1.0;
    auto s = ratio(P, N, f, p, q);
    s.tag = tag;
    best.offer(s, [&] { return std::optional<SparseSignal>(to_sparse(f)); });
    return s.ratio;
  };
  const auto window = Signal1D::indicator(1, W);
  try_signal(window, "window");

  double best_random = -1.0;
  Signal1D best_random_signal;
  std::string best_random_tag;
  for (unsigned t = 0; t < options.trials; ++t) {
    Rng rng(derive_seed(options.seed, t));
    const unsigned kind = t % 4;
    Signal1D::Values v(W);
    for (auto& x : v) x = random_entry(rng, kind, N);
    const Signal1D f(1, std::move(v));
    const std::string tag = std::string("random:") + kRandomKinds[kind] + "#" + std::to_string(t);
    const double r = try_signal(f, tag);
    if (r > best_random) {
      best_random = r;
      best_random_signal = f;
      best_random_tag = tag;
    }
  }

  if (ascent_applies(p, q)) {
    std::vector<std::pair<Signal1D, std::string>> starts{{window, "window"}};
    if (best_random > 0.0) starts.emplace_back(best_random_signal, best_random_tag.substr(7));
    for (const auto& [start, name] : starts) {
      Signal1D f = start;
      double prev = ratio(P, N, f, p, q).ratio;
      for (int it = 0; it < options.ascent_iterations; ++it) {
        const auto g = average(P, N, f);
        const Signal1D h(g.offset(), g.values().pow(q - 1.0));
        const auto back = restrict(average_adjoint(P, N, h), 1, W);
        const double top = max_value(back);
        if (!(top > 0.0)) break;
        f = Signal1D(1, (back.values() / top).pow(1.0 / (p - 1.0)));
        const double cur = try_signal(f, "ascent:" + name);
        if (std::abs(cur - prev) <= options.ascent_tolerance * prev) break;
        prev = cur;
      }
    }
  }
  return best.finish(p, q, options);
}

SearchResult search_near_extremal(int d, std::int64_t N, double p, double q, const SearchOptions& options) {
  checked_exponent(p);
  checked_exponent(q);
  Best best;
  for (const Family fam : {Family::MomentCurve, Family::MultiDelta, Family::Box}) {
    const auto e = extremizer(fam, d, N);
    RatioSample s{N, p, q, measure(e, p, q).full_ratio, 0.0, 0.0, std::string("family:") + family_letter(fam)};
    best.offer(s, [&]() -> std::optional<SparseSignal> {
      if (fam != Family::Box) return e.points;
      if (e.support > kWitnessCap) return std::nullopt;
      return box_signal(e.first, e.last);
    });
  }

  std::vector<std::int64_t> box = options.box;
  if (box.empty()) {
    for (int j = 1; j <= d; ++j) box.push_back(to_int64(checked_mul(2, checked_pow(N, j))));
    const auto cells = [&] {
      i128 c = 1;
      for (const auto e : box) c *= e;
      return c;
    };
    while (cells() > (i128(1) << 16)) {
      auto it = std::max_element(box.begin(), box.end());
      *it = (*it + 1) / 2;
    }
  }
  if (static_cast<int>(box.size()) != d) throw InvalidArgument("search box needs d extents");
  const std::vector<std::int64_t> origin(static_cast<std::size_t>(d), 1);
  const auto try_signal = [&](const SignalD& f, const std::string& tag) {
    if (lp_norm(f, p) == 0.0) return -1.0;
    auto s = ratio(d, N, f, p, q);
    s.tag = tag;
    best.offer(s, [&] { return std::optional<SparseSignal>(to_sparse(f)); });
    return s.ratio;
  };
  std::vector<std::int64_t> last(box.size());
  for (std::size_t j = 0; j < box.size(); ++j) last[j] = box[j];
  const auto window = SignalD::box(origin, last);
  try_signal(window, "window");

  double best_random = -1.0;
  std::optional<SignalD> best_random_signal;
  std::string best_random_tag;
  for (unsigned t = 0; t < options.trials; ++t) {
    Rng rng(derive_seed(options.seed, t));
    const unsigned kind = t % 4;
    SignalD::Values v(window.cells());
    for (auto& x : v) x = random_entry(rng, kind, N);
    const SignalD f(origin, box, std::move(v));
    const std::string tag = std::string("random:") + kRandomKinds[kind] + "#" + std::to_string(t);
    const double r = try_signal(f, tag);
    if (r > best_random) {
      best_random = r;
      best_random_signal = f;
      best_random_tag = tag;
    }
  }

  if (ascent_applies(p, q)) {
    std::vector<std::pair<SignalD, std::string>> starts{{window, "window"}};
    if (best_random_signal) starts.emplace_back(*best_random_signal, best_random_tag.substr(7));
    for (const auto& [start, name] : starts) {
      SignalD f = start;
      double prev = ratio(d, N, f, p, q).ratio;
      for (int it = 0; it < options.ascent_iterations; ++it) {
        const auto g = multidim_average(d, N, f);
        const SignalD h(g.offsets(), g.extents(), g.values().pow(q - 1.0));
        const auto back = restrict(multidim_average_adjoint(d, N, h), origin, box);
        const double top = max_value(back);
        if (!(top > 0.0)) break;
        f = SignalD(origin, box, (back.values() / top).pow(1.0 / (p - 1.0)));
        const double cur = try_signal(f, "ascent:" + name);
        if (std::abs(cur - prev) <= options.ascent_tolerance * prev) break;
        prev = cur;
      }
    }
  }
  return best.finish(p, q, options);
}

LineFit improvement_fit(std::span<const RatioSample> samples) {
  std::vector<double> n, r;
  for (const auto& s : samples) {
    n.push_back(static_cast<double>(s.N));
    r.push_back(s.ratio);
  }
  return fit_loglog(n, r);
}

// ------------------------------------------------------------ HY chain

HyChainReport hy_chain_check(int d, std::int64_t N, const SignalD& f, int m) {
  return hy_chain_check(d, N, f, mean_value_exact(N, d, m));
}

HyChainReport hy_chain_check(int d, std::int64_t N, const SignalD& f, const MeanValueRecord& weyl) {
  if (weyl.d != d || weyl.N != N) throw InvalidArgument("mean-value record does not match (d, N)");
  const int m = weyl.m;
  HyChainReport r;
  r.p = 4.0 * m / (2.0 * m + 1.0);
  r.p_dual = 4.0 * m / (2.0 * m - 1.0);
  r.lhs = lp_norm(multidim_average(d, N, f), r.p_dual);
  r.input_norm = lp_norm(f, r.p);
  r.weyl_norm = weyl.norm;
  r.rhs = r.input_norm * r.weyl_norm;
  r.slack = r.rhs - r.lhs;
  r.holds = r.slack >= -1e-9;
  return r;
}

}  // namespace radonlab
