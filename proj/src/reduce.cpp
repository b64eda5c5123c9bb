#include "radonlab/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radonlab/averages.hpp"
#include "radonlab/checked_int.hpp"
#include "radonlab/rational.hpp"

namespace radonlab {

namespace {

void require_nonnegative(const Signal1D& f) {
  if ((f.values() < 0.0).any()) throw NegativeInput("transfer checks take nonnegative signals");
}

double dual_exponent(double p) {
  if (p <= 1.0 || std::isinf(p)) throw InvalidExponent("need 1 < p < inf for the dual exponent");
  return p / (p - 1.0);
}

// Range of a_d x_d that keeps a.x + r inside [lo, hi] for some x' with
// sum_{j<d} a_j x_j in [s_min, s_max], as an integer range of x_d.
std::pair<std::int64_t, std::int64_t> last_axis_range(const Rational& a_d, i128 lo, i128 hi,
                                                      const Rational& s_min, const Rational& s_max) {
  Rational from = (Rational(lo) - s_max) / a_d;
  Rational to = (Rational(hi) - s_min) / a_d;
  if (a_d < Rational(0)) std::swap(from, to);
  return {to_int64(from.ceil()), to_int64(to.floor())};
}

struct LinearForm {
  std::vector<Rational> a;  // a_1..a_d
  Rational s_min, s_max;    // range of sum_{j<d} a_j x_j over the box
};

LinearForm linear_form(const Decomposition& D, const std::vector<std::int64_t>& box_hi) {
  LinearForm out;
  for (const auto b : D.b) out.a.push_back(Rational(checked_mul(b, D.u), D.v));
  for (std::size_t j = 0; j + 1 < out.a.size(); ++j) {
    const Rational lo = out.a[j];
    const Rational hi = out.a[j] * Rational(box_hi[j]);
    out.s_min += std::min(lo, hi);
    out.s_max += std::max(lo, hi);
  }
  return out;
}

std::int64_t ipow(std::int64_t N, int j) {
  i128 out = 1;
  for (int i = 0; i < j; ++i) out = checked_mul(out, N);
  return to_int64(out);
}

}  // namespace

// ------------------------------------------------------------ quadratic

QuadraticTriple::QuadraticTriple(std::int64_t a_, std::int64_t b_, std::int64_t c_) : a(a_), b(b_), c(c_) {
  if (a < 1) throw InvalidArgument("quadratic needs a >= 1");
  if (b < 0 || c < 0) throw InvalidArgument("quadratic needs nonnegative b and c");
}

IntPolynomial QuadraticTriple::polynomial() const { return IntPolynomial::from_integers({c, b, a}); }

Signal1D quadratic_dilate(const Signal1D& f, std::int64_t a) {
  if (a < 1) throw InvalidArgument("dilation needs a >= 1");
  if (f.empty()) return Signal1D();
  const std::int64_t step = to_int64(checked_mul(4, a));
  const i128 width = checked_add(checked_mul(step, f.size() - 1), 1);
  if (width > kMaxWindowCells) require_window(kMaxWindowCells + 1, "dilated signal");
  Signal1D::Values g = Signal1D::Values::Zero(static_cast<Eigen::Index>(width));
  for (std::int64_t i = 0; i < f.size(); ++i) g[i * step] = f.values()[i];
  return Signal1D(to_int64(checked_mul(step, f.offset())), std::move(g));
}

TransferReport quadratic_transfer_check(const QuadraticTriple& t, std::int64_t N, const Signal1D& f,
                                        const TransferOptions& options) {
  if (N < 1) throw InvalidArgument("N must be positive");
  require_nonnegative(f);
  TransferReport r;
  r.N = N;
  r.M = to_int64(checked_add(checked_mul(checked_mul(2, t.a), N), t.b));
  const double factor = 2.0 * static_cast<double>(t.a) + static_cast<double>(t.b) / static_cast<double>(N);

  const IntPolynomial P = t.polynomial();
  const Signal1D lhs = average(P, N, f);

  // g(4a(x+c) - b^2 + k^2) is nonzero only when 4a | k^2 - b^2, and then it is
  // f(x + c + (k^2 - b^2) / 4a). Skipping the other k only drops exact zeros.
  const i128 four_a = checked_mul(4, t.a);
  std::vector<std::int64_t> shifts;
  for (std::int64_t k = 1; k <= r.M; ++k) {
    const i128 num = checked_sub(checked_mul(k, k), checked_mul(t.b, t.b));
    if (num % four_a == 0) shifts.push_back(to_int64(checked_add(t.c, num / four_a)));
  }
  const Signal1D inner = shift_sum<double>(shifts, {}, f);
  const double M = static_cast<double>(r.M);
  auto rhs_at = [&](std::int64_t x) { return factor * (inner(x) / M); };

  r.min_slack = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < lhs.size(); ++i) {
    const double left = lhs.values()[i];
    if (!options.exhaustive && left <= 0.0) continue;
    const std::int64_t x = lhs.offset() + i;
    const double slack = rhs_at(x) - left;
    ++r.points_checked;
    if (slack < r.min_slack) {
      r.min_slack = slack;
      r.argmin = x;
    }
  }
  if (r.points_checked == 0) r.min_slack = 0.0;
  r.holds = r.min_slack >= -1e-12;

  if (options.p) {
    const double p = *options.p;
    const double q = dual_exponent(p);
    r.norm_checked = true;
    r.p = p;
    r.input_norm = lp_norm(f, p);
    if (r.input_norm == 0.0) throw ZeroInput("||f||_p = 0");
    r.lhs_norm = lp_norm(lhs, q);
    const Signal1D g = quadratic_dilate(f, t.a);
    const double square_norm = lp_norm(average(IntPolynomial::monomial(2), r.M, g), q);
    r.chain_norm = factor * square_norm;
    const double scale = std::pow(M, -2.0 * (1.0 / p - 1.0 / q));
    r.normalized_ratio = r.lhs_norm / (factor * scale * r.input_norm);
    r.square_constant = square_norm / (scale * lp_norm(g, p));
    r.chain_holds = r.lhs_norm <= r.chain_norm * (1.0 + 1e-12);
  }
  return r;
}

double transfer_normalized_ratio(const QuadraticTriple& t, std::int64_t N, const Signal1D& f, double p) {
  if (N < 1) throw InvalidArgument("N must be positive");
  const double q = dual_exponent(p);
  const double in = lp_norm(f, p);
  if (in == 0.0) throw ZeroInput("||f||_p = 0");
  const double M = static_cast<double>(2 * t.a * N + t.b);
  const double factor = 2.0 * static_cast<double>(t.a) + static_cast<double>(t.b) / static_cast<double>(N);
  const double scale = std::pow(M, -2.0 * (1.0 / p - 1.0 / q));
  return lp_norm(average(t.polynomial(), N, f), q) / (factor * scale * in);
}

// ------------------------------------------------------------ projection lift

LiftResult projection_lift(const Signal1D& g, const IntPolynomial& P, std::int64_t N, std::int64_t r) {
  if (N < 1) throw InvalidArgument("N must be positive");
  if (P.degree() < 1) throw DegenerateInput("the lift needs a non-constant polynomial");
  if (g.empty()) throw ZeroInput("the lift of an empty signal is empty");
  require_integer_valued(P);
  LiftResult out;
  out.decomposition = decompose(P);
  const Decomposition& D = out.decomposition;
  if (r < 0 || r >= D.u) throw InvalidArgument("residue r must lie in [0, u)");
  out.residue = r;
  const int d = P.degree();
  const std::size_t dd = static_cast<std::size_t>(d);

  std::vector<std::int64_t> offsets(dd, 1), extents(dd);
  i128 bound = 1;
  for (int j = 1; j < d; ++j) {
    extents[j - 1] = to_int64(checked_mul(2, ipow(N, j)));
    bound = checked_mul(bound, extents[j - 1]);
  }
  out.multiplicity_bound = to_int64(bound);
  const LinearForm L = linear_form(D, extents);
  const auto [xd_lo, xd_hi] = last_axis_range(L.a[dd - 1], checked_sub(g.offset(), r),
                                              checked_sub(g.last(), r), L.s_min, L.s_max);
  offsets[dd - 1] = xd_lo;
  extents[dd - 1] = std::max<std::int64_t>(0, xd_hi - xd_lo + 1);
  const SignalD shape = SignalD::zeros(offsets, extents);
  SignalD::Values values = shape.values();

  std::vector<std::int64_t> mult(static_cast<std::size_t>(g.size()), 0);
  const i128 bd = D.b[dd - 1];
  if (shape.cells() > 0) {
    for_each_row(extents, [&](const std::vector<std::int64_t>& idx, std::int64_t row_start) {
      i128 t = 0;  // b.x for x_d = xd_lo
      for (std::size_t j = 0; j + 1 < dd; ++j) t = checked_add(t, checked_mul(D.b[j], idx[j] + 1));
      t = checked_add(t, checked_mul(bd, xd_lo));
      for (std::int64_t i = 0; i < extents[dd - 1]; ++i, t += bd) {
        if (t % D.v != 0) continue;
        const std::int64_t n = to_int64(checked_add(checked_mul(D.u, t / D.v), r));
        if (n < g.offset() || n > g.last()) continue;
        ++mult[static_cast<std::size_t>(n - g.offset())];
        values[row_start + i] = g(n);
      }
    });
  }
  out.max_multiplicity = mult.empty() ? 0 : *std::max_element(mult.begin(), mult.end());
  out.f = SignalD(offsets, extents, std::move(values));
  return out;
}

LiftIdentityReport check_lift_identity(const LiftResult& lift, const Signal1D& g, const IntPolynomial& P,
                                       std::int64_t N) {
  if (N < 1) throw InvalidArgument("N must be positive");
  const int d = P.degree();
  const std::size_t dd = static_cast<std::size_t>(d);
  if (lift.f.dims() != d) throw InvalidArgument("lift dimension does not match the polynomial");
  const Decomposition& D = lift.decomposition;
  const IntPolynomial Q = P.without_constant();
  const auto curve = moment_curve_shifts(d, N);
  const auto pshift = polynomial_shifts(Q, N);
  const auto [pmin, pmax] = std::minmax_element(pshift.begin(), pshift.end());

  std::vector<std::int64_t> dom(dd);
  for (int j = 1; j < d; ++j) dom[j - 1] = ipow(N, j);
  const LinearForm L = linear_form(D, dom);
  const Rational& a_d = L.a[dd - 1];
  auto [lo, hi] = last_axis_range(a_d, checked_sub(checked_sub(g.offset(), lift.residue), *pmax),
                                  checked_sub(checked_sub(g.last(), lift.residue), *pmin), L.s_min, L.s_max);
  const std::int64_t f_lo = lift.f.offsets()[dd - 1];
  const std::int64_t f_hi = f_lo + lift.f.extents()[dd - 1] - 1;
  if (lift.f.extents()[dd - 1] > 0) {
    lo = std::min(lo, f_lo - ipow(N, d));
    hi = std::max(hi, f_hi - 1);
  }
  dom[dd - 1] = std::max<std::int64_t>(0, hi - lo + 1);

  LiftIdentityReport rep;
  if (dom[dd - 1] == 0) return rep;
  std::vector<std::int64_t> x(dd), y(dd);
  const double Nd = static_cast<double>(N);
  for_each_row(dom, [&](const std::vector<std::int64_t>& idx, std::int64_t) {
    for (std::size_t j = 0; j + 1 < dd; ++j) x[j] = idx[j] + 1;
    for (std::int64_t xd = lo; xd <= hi; ++xd) {
      x[dd - 1] = xd;
      i128 t = 0;
      for (std::size_t j = 0; j < dd; ++j) t = checked_add(t, checked_mul(D.b[j], x[j]));
      if (t % D.v != 0) continue;
      const std::int64_t n = to_int64(checked_add(checked_mul(D.u, t / D.v), lift.residue));
      double left = 0.0, right = 0.0;
      for (std::size_t k = 0; k < curve.size(); ++k) {
        for (std::size_t j = 0; j < dd; ++j) y[j] = x[j] + curve[k][j];
        left += lift.f(y);
        right += g(n + pshift[k]);
      }
      rep.max_error = std::max(rep.max_error, std::abs(left / Nd - right / Nd));
      ++rep.points_checked;
    }
  });
  return rep;
}

SublatticeReport sublattice_lower_bound(const LiftResult& lift, const Signal1D& g, const IntPolynomial& P,
                                        std::int64_t N, double q) {
  if (N < 1) throw InvalidArgument("N must be positive");
  q = checked_exponent(q);
  if (std::isinf(q)) throw InvalidExponent("the sublattice sum needs finite q");
  const int d = P.degree();
  const std::size_t dd = static_cast<std::size_t>(d);
  const Decomposition& D = lift.decomposition;
  const std::int64_t v = to_int64(D.v);
  const std::int64_t u = to_int64(D.u);
  const std::int64_t r = lift.residue;
  const Signal1D h = average(P.without_constant(), N, g);
  auto power = [q](double a) { return static_cast<long double>(std::pow(std::abs(a), q)); };

  SublatticeReport rep;
  for (std::int64_t i = 0; i < h.size(); ++i) {
    const std::int64_t n = h.offset() + i;
    if (((n - r) % u + u) % u == 0) rep.class_sum += power(h.values()[i]);
  }

  // y' ranges over 1 <= y_j <= N^j / v; count residues of b'.y' mod |b_d|.
  const std::int64_t bd = to_int64(D.b[dd - 1]);
  const std::int64_t mod = std::abs(bd);
  std::vector<std::int64_t> ybox(dd - 1);
  bool empty_box = false;
  for (int j = 1; j < d; ++j) {
    ybox[j - 1] = ipow(N, j) / v;
    empty_box = empty_box || ybox[j - 1] == 0;
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(mod), 0);
  auto visit = [&](auto&& body) {
    if (empty_box) return;
    if (dd == 1) {
      body(std::vector<std::int64_t>{});
      return;
    }
    std::vector<std::int64_t> y(dd - 1, 1);
    while (true) {
      body(y);
      std::size_t j = dd - 1;
      while (j > 0) {
        --j;
        if (++y[j] <= ybox[j]) break;
        y[j] = 1;
        if (j == 0) return;
      }
    }
  };
  visit([&](const std::vector<std::int64_t>& y) {
    i128 t = 0;
    for (std::size_t j = 0; j + 1 < dd; ++j) t = checked_add(t, checked_mul(D.b[j], y[j]));
    const std::int64_t res = to_int64(((t % mod) + mod) % mod);
    ++counts[static_cast<std::size_t>(res)];
    if (h.empty()) return;
    // n = u (t + b_d y_d) + r in [h.offset, h.last]
    const Rational ud(checked_mul(D.u, bd));
    const Rational base = Rational(checked_add(checked_mul(D.u, t), r));
    Rational from = (Rational(h.offset()) - base) / ud;
    Rational to = (Rational(h.last()) - base) / ud;
    if (to < from) std::swap(from, to);
    for (i128 yd = from.ceil(); yd <= to.floor(); ++yd) {
      const i128 n = checked_add(checked_mul(D.u, checked_add(t, checked_mul(bd, yd))), r);
      rep.sublattice_sum += power(h(to_int64(n)));
    }
  });
  rep.min_count = *std::min_element(counts.begin(), counts.end());
  rep.max_count = *std::max_element(counts.begin(), counts.end());
  rep.constant = static_cast<double>(rep.min_count) / std::pow(static_cast<double>(N), d * (d - 1) / 2.0);
  rep.asymptotic = rep.min_count > 0;

  const SignalD out = multidim_average(d, N, lift.f);
  for (Eigen::Index i = 0; i < out.values().size(); ++i) rep.full_sum += power(out.values()[i]);
  const long double tol = 1.0L - 1e-12L;
  rep.holds = rep.full_sum >= rep.sublattice_sum * tol &&
              rep.sublattice_sum >= static_cast<long double>(rep.min_count) * rep.class_sum * tol;
  return rep;
}

// ------------------------------------------------------------ dyadic bridge

BridgeReport dyadic_bridge(const IntPolynomial& P, double lambda, std::int64_t K, double q, const Signal1D& f,
                           std::span<const std::int64_t> Ns) {
  const FractionalOrder order(lambda, K);
  q = checked_exponent(q);
  require_nonnegative(f);
  if (f.empty()) throw ZeroInput("the bridge needs a nonempty signal");
  BridgeReport rep;
  rep.lambda = lambda;
  rep.q = q;
  rep.K = K;
  while ((std::int64_t{1} << rep.J) < K) ++rep.J;
  rep.J = std::max(rep.J, 1);

  const Signal1D frac = fractional(P, order, f).values;
  rep.fractional_norm = lp_norm(frac, q);

  Signal1D::Values dyadic = Signal1D::Values::Zero(frac.size());
  for (int j = 1; j <= rep.J; ++j) {
    const Signal1D avg = average(P, std::int64_t{1} << j, f);
    const double w = std::pow(2.0, (1.0 - lambda) * j);
    rep.dyadic_sum += w * lp_norm(avg, q);
    for (std::int64_t i = 0; i < frac.size(); ++i) dyadic[i] += w * avg(frac.offset() + i);
  }
  rep.norm_ratio = rep.dyadic_sum > 0.0 ? rep.fractional_norm / rep.dyadic_sum : 0.0;

  rep.dyadic_min_slack = std::numeric_limits<double>::infinity();
  rep.dyadic_holds = true;
  for (std::int64_t i = 0; i < frac.size(); ++i) {
    const double left = frac.values()[i];
    const double slack = 4.0 * dyadic[i] - left;
    rep.dyadic_min_slack = std::min(rep.dyadic_min_slack, slack);
    if (slack < -1e-12 * left) rep.dyadic_holds = false;
  }

  rep.pointwise_min_slack = std::numeric_limits<double>::infinity();
  rep.pointwise_holds = true;
  for (const std::int64_t N : Ns) {
    if (N < 1 || N > K) throw InvalidArgument("bridge (ii) needs 1 <= N <= K");
    rep.Ns.push_back(N);
    const Signal1D avg = average(P, N, f);
    const double scale = std::pow(static_cast<double>(N), lambda - 1.0);
    for (std::int64_t i = 0; i < avg.size(); ++i) {
      const double left = avg.values()[i];
      const double slack = scale * frac(avg.offset() + i) - left;
      rep.pointwise_min_slack = std::min(rep.pointwise_min_slack, slack);
      if (slack < -1e-12 * left) rep.pointwise_holds = false;
    }
  }
  if (Ns.empty()) rep.pointwise_min_slack = 0.0;
  return rep;
}

}  // namespace radonlab
