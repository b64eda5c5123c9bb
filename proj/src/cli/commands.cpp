#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "cli.hpp"
#include "radonlab/averages.hpp"
#include "radonlab/errors.hpp"
#include "radonlab/normlab.hpp"
#include "radonlab/random.hpp"
#include "radonlab/reduce.hpp"
#include "radonlab/regions.hpp"
#include "radonlab/signal_io.hpp"
#include "radonlab/sparse.hpp"
#include "radonlab/weyl.hpp"

namespace radonlab::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Report start(const ExperimentConfig& c, std::vector<std::string> columns) {
  Report r;
  r.command = c.command;
  r.config = c.echo();
  r.columns = std::move(columns);
  return r;
}

void fail(Report& r, const std::string& what, nlohmann::json witness) {
  r.exit_code = kAssertionFailed;
  r.failures.push_back(what);
  witness["failure"] = what;
  r.witnesses.push_back(std::move(witness));
}

Exponent q_of(const ExperimentConfig& c) {
  const Exponent p = Exponent::parse(*c.p);
  return c.dual ? p.dual() : Exponent::parse(*c.q);
}

std::int64_t max_abs_value(const IntPolynomial& P, std::int64_t N) {
  i128 m = 0;
  for (std::int64_t k = 1; k <= N; ++k) {
    const i128 v = eval(P, k);
    m = std::max(m, v < 0 ? -v : v);
  }
  return to_int64(m);
}

Signal1D random_nonneg(Rng& rng, std::int64_t first, std::int64_t last, double density) {
  Signal1D::Values v(last - first + 1);
  for (auto& x : v) x = rng.bernoulli(density) ? rng.uniform() : 0.0;
  if ((v == 0.0).all()) v[rng.uniform_int(0, v.size() - 1)] = 1.0;
  return Signal1D(first, std::move(v));
}

LineFit fit_or_nan(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2) return {std::nan(""), std::nan(""), {}};
  return fit_loglog(x, y);
}

// ------------------------------------------------------------ region

Report region(const ExperimentConfig& c) {
  Report r = start(c, {"region", "constraint", "value", "strict", "satisfied"});
  const int d = c.d.value_or(2);
  const Region reg = Region::from_name(*c.which, d);
  const ExponentPair e{Exponent::parse(*c.p), q_of(c)};
  std::optional<Rational> lambda;
  if (c.lambda) lambda = Rational::parse(*c.lambda);
  const auto t0 = Clock::now();
  RegionVerdict v;
  try {
    v = member(reg, e, lambda);
  } catch (const InvalidArgument& err) {
    throw UsageError(err.what());
  }
  nlohmann::json doc;
  doc["region"] = v.region;
  doc["d"] = d;
  doc["p"] = e.p.to_string();
  doc["q"] = e.q.to_string();
  if (lambda) doc["lambda"] = lambda->to_string();
  doc["member"] = v.member;
  doc["constraints"] = nlohmann::json::array();
  for (const auto& cv : v.constraints) {
    doc["constraints"].push_back(
        {{"text", cv.text}, {"value", cv.value.to_string()}, {"strict", cv.strict}, {"satisfied", cv.satisfied}});
    r.rows.push_back({v.region, cv.text, cv.value.to_string(), cv.strict, cv.satisfied});
    r.wall_ms.push_back(0.0);
  }
  r.rows.push_back({v.region, std::string("member"), std::monostate{}, std::monostate{}, v.member});
  r.wall_ms.push_back(ms_since(t0));
  r.document = doc;
  return r;
}

// ------------------------------------------------------------ improving

Report improving(const ExperimentConfig& c) {
  Report r = start(c, {"N", "p", "q", "best_ratio", "family", "slope_so_far"});
  const IntPolynomial P = IntPolynomial::parse(*c.poly);
  const Exponent pe = Exponent::parse(*c.p), qe = q_of(c);
  const double p = pe.value(), q = qe.value();
  std::vector<RatioSample> samples;
  for (const auto N : c.n) {
    const auto t0 = Clock::now();
    SearchOptions opts;
    opts.trials = static_cast<unsigned>(*c.trials);
    opts.seed = derive_seed(*c.seed, static_cast<std::uint64_t>(N));
    const SearchResult s = search_near_extremal(P, N, p, q, opts);
    samples.push_back(s.best);
    Cell slope = std::monostate{};
    if (samples.size() >= 2) slope = improvement_fit(samples).slope;
    r.rows.push_back({N, pe.to_string(), qe.to_string(), s.best.ratio, s.best.tag, slope});
    r.wall_ms.push_back(ms_since(t0));
    if (s.violation) {
      nlohmann::json w{{"N", N}, {"ratio", s.best.ratio}, {"bound", s.bound.value_or(0.0)}, {"family", s.best.tag}};
      if (s.witness) w["signal"] = to_json(*s.witness);
      fail(r, "ratio above the proven bound at N=" + std::to_string(N), w);
    }
  }
  if (samples.size() >= 2) r.fits["improvement_slope"] = improvement_fit(samples).slope;
  return r;
}

// ------------------------------------------------------------ mean-value

void brute_level(int level, int m, int d, std::int64_t N, std::vector<i128>& diff, std::int64_t& count) {
  if (level == 2 * m) {
    for (const auto v : diff)
      if (v != 0) return;
    ++count;
    return;
  }
  const int sign = level < m ? 1 : -1;
  for (std::int64_t x = 1; x <= N; ++x) {
    i128 pw = 1;
    for (int j = 0; j < d; ++j) {
      pw *= x;
      diff[static_cast<std::size_t>(j)] += sign * pw;
    }
    brute_level(level + 1, m, d, N, diff, count);
    pw = 1;
    for (int j = 0; j < d; ++j) {
      pw *= x;
      diff[static_cast<std::size_t>(j)] -= sign * pw;
    }
  }
}

// #{x, y in [1, N]^m : sum_i x_i^j = sum_i y_i^j for j = 1..d}, by enumerating every 2m-tuple.
std::int64_t brute_J(std::int64_t N, int d, int m) {
  std::vector<i128> diff(static_cast<std::size_t>(d), 0);
  std::int64_t count = 0;
  brute_level(0, m, d, N, diff, count);
  return count;
}

Report mean_value(const ExperimentConfig& c) {
  std::vector<std::string> cols = {"d", "m", "N", "J", "norm", "wall_ms"};
  if (c.brute_check) cols.insert(cols.end() - 1, "J_brute");
  Report r = start(c, cols);
  const int d = *c.d, m = *c.m;
  if (c.brute_check) {
    const double tuples = std::pow(static_cast<double>(c.n.back()), 2.0 * m);
    if (tuples > static_cast<double>(c.tuple_budget))
      throw UsageError("--brute-check would enumerate " + format_double(tuples) + " tuples (budget " +
                       std::to_string(c.tuple_budget) + ")");
  }
  MeanValueOptions opts;
  opts.tuple_budget = c.tuple_budget;
  std::vector<MeanValueRecord> records;
  for (const auto N : c.n) {
    const auto t0 = Clock::now();
    const MeanValueRecord rec = mean_value_exact(N, d, m, opts);
    records.push_back(rec);
    std::vector<Cell> row = {static_cast<std::int64_t>(d), static_cast<std::int64_t>(m), N, to_string(rec.J),
                             rec.norm};
    if (c.brute_check) {
      const std::int64_t b = brute_J(N, d, m);
      row.push_back(b);
      if (i128(b) != rec.J)
        fail(r, "meet-in-the-middle count differs from brute force at N=" + std::to_string(N),
             {{"d", d}, {"m", m}, {"N", N}, {"J", to_string(rec.J)}, {"J_brute", b}});
    }
    const double ms = ms_since(t0);
    row.push_back(ms);
    r.rows.push_back(std::move(row));
    r.wall_ms.push_back(ms);
  }
  if (records.size() >= 4) {
    const LineFit fit = exponent_fit(records);
    r.fits["slope"] = fit.slope;
    r.fits["intercept"] = fit.intercept;
    r.fits["main_term_exponent"] = mean_value_main_exponent(d, m);
  }
  return r;
}

// ------------------------------------------------------------ sharpness

Report sharpness(const ExperimentConfig& c) {
  Report r = start(c, {"N", "family", "witness", "predicted", "exact", "full_ratio", "support"});
  const Exponent pe = Exponent::parse(*c.p), qe = q_of(c);
  const double p = pe.value(), q = qe.value();
  std::string letters = c.which.value_or(c.poly ? "a,b,c" : "d,e,f");
  letters.erase(std::remove(letters.begin(), letters.end(), ','), letters.end());
  std::optional<IntPolynomial> P;
  if (c.poly) P = IntPolynomial::parse(*c.poly);

  std::map<char, std::pair<std::vector<double>, std::vector<double>>> series;
  for (const auto N : c.n)
    for (const char letter : letters) {
      const auto t0 = Clock::now();
      const Family fam = family_from_letter(letter);
      const Extremizer e = P ? extremizer(fam, *P, N, true) : extremizer(fam, *c.d, N);
      const FamilyMeasurement fm = measure(e, p, q);
      r.rows.push_back({N, std::string(1, letter), fm.witness, fm.predicted, fm.exact, fm.full_ratio, fm.support});
      r.wall_ms.push_back(ms_since(t0));
      series[letter].first.push_back(static_cast<double>(N));
      series[letter].second.push_back(fm.witness);
      const double tol = 1e-9 * std::max(1.0, std::abs(fm.predicted));
      const bool ok = fm.exact ? std::abs(fm.witness - fm.predicted) <= tol : fm.witness >= fm.predicted - tol;
      if (!ok)
        fail(r, std::string("family (") + letter + ") misses its closed form at N=" + std::to_string(N),
             {{"N", N}, {"family", std::string(1, letter)}, {"witness", fm.witness}, {"predicted", fm.predicted}});
    }
  for (const auto& [letter, xy] : series) {
    const LineFit fit = fit_or_nan(xy.first, xy.second);
    if (!std::isnan(fit.slope)) r.fits[std::string(1, letter)] = fit.slope;
  }
  return r;
}

// ------------------------------------------------------------ transfer

Report transfer(const ExperimentConfig& c) {
  Report r = start(c, {"N", "input", "M", "min_slack", "points_checked", "normalized_ratio", "holds"});
  std::vector<std::int64_t> abc;
  {
    std::stringstream in(*c.quad);
    std::string item;
    while (std::getline(in, item, ',')) abc.push_back(std::stoll(item));
  }
  const QuadraticTriple t(abc[0], abc[1], abc[2]);
  const IntPolynomial P = t.polynomial();
  TransferOptions opts;
  if (c.p) opts.p = Exponent::parse(*c.p).value();
  const std::int64_t trials = c.trials.value_or(0);

  std::map<std::string, std::vector<double>> ratios;
  for (const auto N : c.n) {
    // Deterministic inputs: the values of P (the near extremizer), a delta and
    // an interval; then optional random ones.
    const std::int64_t top = max_abs_value(P, N);
    const std::int64_t M = 2 * t.a * N + t.b;
    if (4 * t.a * (top + 1) + M * M > c.window_budget)
      throw UsageError("transfer at N=" + std::to_string(N) + " exceeds --window-budget");
    std::vector<std::pair<std::string, Signal1D>> inputs;
    std::vector<std::int64_t> values;
    for (std::int64_t k = 1; k <= N; ++k) values.push_back(to_int64(eval(P, k)));
    inputs.emplace_back("values", Signal1D::from_points(values));
    inputs.emplace_back("delta", Signal1D::delta(0));
    inputs.emplace_back("interval", Signal1D::indicator(1, N));
    Rng rng(derive_seed(c.seed.value_or(0), static_cast<std::uint64_t>(N)));
    for (std::int64_t i = 0; i < trials; ++i)
      inputs.emplace_back("random" + std::to_string(i), random_nonneg(rng, 0, std::min<std::int64_t>(top, 4096), 0.25));

    for (const auto& [name, f] : inputs) {
      const auto t0 = Clock::now();
      const TransferReport tr = quadratic_transfer_check(t, N, f, opts);
      Cell ratio = std::monostate{};
      if (tr.norm_checked) {
        ratio = tr.normalized_ratio;
        ratios[name].push_back(tr.normalized_ratio);
      }
      r.rows.push_back({N, name, tr.M, tr.min_slack, tr.points_checked, ratio, tr.holds && (!tr.norm_checked || tr.chain_holds)});
      r.wall_ms.push_back(ms_since(t0));
      if (!tr.holds || (tr.norm_checked && !tr.chain_holds)) {
        // A negative slack would falsify the completed-square comparison: keep the input.
        const NegativeSlack why("transfer slack " + format_double(tr.min_slack) + " at x=" +
                                std::to_string(tr.argmin) + ", N=" + std::to_string(N));
        fail(r, why.what(),
             {{"N", N}, {"input", name}, {"min_slack", tr.min_slack}, {"argmin", tr.argmin}, {"signal", to_json(f)}});
      }
    }
  }
  for (const auto& [name, v] : ratios)
    if (v.size() >= 2) {
      const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      r.fits["ratio_spread_" + name] = *lo > 0 ? *hi / *lo : std::numeric_limits<double>::infinity();
    }
  return r;
}

// ------------------------------------------------------------ lift

Report lift(const ExperimentConfig& c) {
  Report r = start(c, {"N", "trial", "max_error", "points_checked", "max_multiplicity", "multiplicity_bound", "holds"});
  const IntPolynomial P = IntPolynomial::parse(*c.poly);
  const std::int64_t trials = c.trials.value_or(10), residue = c.r.value_or(0);
  for (const auto N : c.n) {
    const std::int64_t W = std::min<std::int64_t>(2 * (max_abs_value(P, N) + 1), 1 << 14);
    if (W > c.window_budget) throw UsageError("lift window exceeds --window-budget");
    for (std::int64_t trial = 0; trial < trials; ++trial) {
      const auto t0 = Clock::now();
      Rng rng(derive_seed(*c.seed, static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(trial)));
      const Signal1D g = random_nonneg(rng, -W, W, 0.5);
      const LiftResult L = projection_lift(g, P, N, residue);
      const LiftIdentityReport id = check_lift_identity(L, g, P, N);
      const bool ok = id.max_error <= 1e-12 && L.max_multiplicity <= L.multiplicity_bound;
      r.rows.push_back({N, trial, id.max_error, id.points_checked, L.max_multiplicity, L.multiplicity_bound, ok});
      r.wall_ms.push_back(ms_since(t0));
      if (!ok)
        fail(r, "lift identity fails at N=" + std::to_string(N) + ", trial " + std::to_string(trial),
             {{"N", N}, {"trial", trial}, {"max_error", id.max_error}, {"signal", to_json(g)}});
    }
  }
  return r;
}

// ------------------------------------------------------------ fractional

Report fractional_bridge(const ExperimentConfig& c) {
  Report r = start(c, {"trial", "fractional_norm", "dyadic_sum", "norm_ratio", "dyadic_min_slack",
                       "pointwise_min_slack", "holds"});
  const IntPolynomial P = IntPolynomial::parse(*c.poly);
  const double lambda = Rational::parse(*c.lambda).to_double();
  const double q = Exponent::parse(*c.q).value();
  const std::int64_t K = *c.k, trials = c.trials.value_or(10);
  std::vector<std::int64_t> Ns = c.n;
  if (Ns.empty())
    for (std::int64_t N = 1; N <= K; N *= 2) Ns.push_back(N);
  const std::int64_t W = std::max<std::int64_t>(8, std::min<std::int64_t>(2 * max_abs_value(P, K), 4096));
  double worst = 0.0;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const auto t0 = Clock::now();
    Rng rng(derive_seed(*c.seed, static_cast<std::uint64_t>(trial)));
    const double density = trial % 3 == 0 ? 1.0 : trial % 3 == 1 ? 0.1 : 0.01;
    const Signal1D f = random_nonneg(rng, 1, W, density);
    const BridgeReport b = dyadic_bridge(P, lambda, K, q, f, Ns);
    const bool ok = b.dyadic_holds && b.pointwise_holds;
    r.rows.push_back({trial, b.fractional_norm, b.dyadic_sum, b.norm_ratio, b.dyadic_min_slack,
                      b.pointwise_min_slack, ok});
    r.wall_ms.push_back(ms_since(t0));
    worst = std::max(worst, b.norm_ratio);
    if (!ok)
      fail(r, "fractional/average comparison fails on trial " + std::to_string(trial),
           {{"trial", trial}, {"dyadic_min_slack", b.dyadic_min_slack},
            {"pointwise_min_slack", b.pointwise_min_slack}, {"signal", to_json(f)}});
  }
  r.fits["max_norm_ratio"] = worst;
  return r;
}

// ------------------------------------------------------------ sparse

Report sparse(const ExperimentConfig& c) {
  Report r = start(c, {"trial", "pairing", "Lambda", "ratio"});
  const IntPolynomial P = IntPolynomial::parse(*c.poly);
  const double p = Exponent::parse(*c.p).value();
  const double q_dual = Exponent::parse(*c.q).dual().value();
  const std::int64_t nmax = *c.nmax;
  const int depth = static_cast<int>(c.depth.value_or(12));

  i128 lo = std::numeric_limits<i128>::max(), hi = std::numeric_limits<i128>::min();
  for (std::int64_t k = 1; k <= nmax; ++k) {
    const i128 v = eval(P, k);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const std::int64_t pmin = to_int64(lo), pmax = to_int64(hi);
  const std::int64_t W = std::clamp<std::int64_t>(pmax - pmin + 1, 16, 4096);
  // A_* f lives on x with x + P(k) in [1, W] for some k <= nmax.
  const std::int64_t g_first = 1 - pmax, g_last = W - pmin;
  if (g_last - g_first + 1 > std::min<std::int64_t>(c.window_budget, std::int64_t{1} << 22))
    throw UsageError("sparse window of " + std::to_string(g_last - g_first + 1) + " cells exceeds the budget");

  std::vector<double> ratios;
  for (std::int64_t trial = 0; trial < *c.corpus; ++trial) {
    const auto t0 = Clock::now();
    Rng rng(derive_seed(*c.seed, static_cast<std::uint64_t>(trial)));
    Signal1D f, g;
    switch (trial % 3) {
      case 0: {
        const std::int64_t a = rng.uniform_int(1, W), b = rng.uniform_int(a, W);
        const std::int64_t s = rng.uniform_int(g_first, g_last), t = rng.uniform_int(s, g_last);
        f = Signal1D::indicator(a, b);
        g = Signal1D::indicator(s, t);
        break;
      }
      case 1:
        f = random_nonneg(rng, 1, W, 0.125);
        g = random_nonneg(rng, g_first, g_last, 0.5);
        break;
      default:
        f = Signal1D::delta(rng.uniform_int(1, W));
        g = random_nonneg(rng, g_first, g_last, 1.0);
        break;
    }
    const double pair = pairing(P, nmax, f, g);
    const GreedyResult best = greedy_collection(f, g, p, q_dual, depth, 0.0);
    Cell ratio = std::monostate{};
    if (best.value > 0) {
      ratio = pair / best.value;
      ratios.push_back(pair / best.value);
    }
    r.rows.push_back({trial, pair, best.value, ratio});
    r.wall_ms.push_back(ms_since(t0));
  }
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    r.fits["max_ratio"] = ratios.back();
    r.fits["median_ratio"] = ratios[ratios.size() / 2];
  }
  return r;
}

}  // namespace

Report run_command(const ExperimentConfig& c) {
  validate(c);
  if (c.command == "region") return region(c);
  if (c.command == "improving") return improving(c);
  if (c.command == "mean-value") return mean_value(c);
  if (c.command == "sharpness") return sharpness(c);
  if (c.command == "transfer") return transfer(c);
  if (c.command == "lift") return lift(c);
  if (c.command == "fractional") return fractional_bridge(c);
  return sparse(c);
}

}  // namespace radonlab::cli
