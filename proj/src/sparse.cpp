#include "radonlab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_set>

#include "radonlab/averages.hpp"
#include "radonlab/errors.hpp"

namespace radonlab {

namespace {

void require_exponent(double r, const char* name) {
  if (!(r >= 1.0)) throw InvalidExponent(std::string(name) + " must be in [1, inf]");
}

// Prefix sums of |phi|^r over [lo, lo + len) so that dyadic averages are O(1).
class PowerSums {
 public:
  PowerSums(const Signal1D& phi, std::int64_t lo, std::int64_t len, double r) : phi_(phi), lo_(lo), r_(r) {
    if (std::isinf(r)) return;
    sums_.assign(static_cast<std::size_t>(len) + 1, 0.0L);
    for (std::int64_t i = 0; i < len; ++i)
      sums_[i + 1] = sums_[i] + std::pow(std::abs(phi(lo + i)), r);
  }

  double average(const Interval& I) const {
    if (std::isinf(r_)) return local_average(phi_, I, r_);
    const long double s = sums_[I.hi - lo_ + 1] - sums_[I.lo - lo_];
    return std::pow(static_cast<double>(std::max(0.0L, s) / I.length()), 1.0 / r_);
  }

 private:
  const Signal1D& phi_;
  std::int64_t lo_;
  double r_;
  std::vector<long double> sums_;
};

enum class Rule { FG, F, G };

struct Candidate {
  Interval J;
  double q;
};

SparseCollection build_tree(const PowerSums& F, const PowerSums& G, Rule rule, Interval top, int depth) {
  auto quantity = [&](const Interval& J) {
    switch (rule) {
      case Rule::F: return F.average(J);
      case Rule::G: return G.average(J);
      default: return F.average(J) * G.average(J);
    }
  };

  SparseCollection S;
  std::deque<std::pair<Interval, int>> queue{{top, 1}};
  while (!queue.empty()) {
    const auto [I, level] = queue.front();
    queue.pop_front();

    std::vector<Interval> children;
    if (level < depth && I.length() > 1) {
      const double threshold = 2.0 * quantity(I);
      std::vector<Candidate> found;
      std::vector<Interval> stack{I};
      while (!stack.empty()) {
        const Interval J = stack.back();
        stack.pop_back();
        if (J.length() < I.length()) {
          const double qJ = quantity(J);
          if (qJ > threshold) {
            found.push_back({J, qJ});
            continue;
          }
        }
        if (J.length() > 1) {
          const std::int64_t half = J.length() / 2;
          stack.push_back({J.lo + half, J.hi});
          stack.push_back({J.lo, J.lo + half - 1});
        }
      }
      std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
        return a.q != b.q ? a.q > b.q : a.J.lo < b.J.lo;
      });
      std::int64_t mass = 0;
      for (const auto& c : found)
        if (4 * (mass + c.J.length()) < 3 * I.length()) {
          children.push_back(c.J);
          mass += c.J.length();
        }
      std::sort(children.begin(), children.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    }

    SparseEntry e{I, {}};
    e.witness.reserve(static_cast<std::size_t>(I.length()));
    std::size_t next = 0;
    for (std::int64_t n = I.lo; n <= I.hi; ++n) {
      if (next < children.size() && n == children[next].lo) {
        n = children[next].hi;
        ++next;
        continue;
      }
      e.witness.push_back(n);
    }
    S.entries.push_back(std::move(e));
    for (const auto& J : children) queue.push_back({J, level + 1});
  }
  return S;
}

}  // namespace

std::optional<std::string> sparsity_violation(const SparseCollection& S) {
  std::unordered_set<std::int64_t> used;
  for (std::size_t k = 0; k < S.entries.size(); ++k) {
    const auto& [I, E] = S.entries[k];
    const std::string tag = "interval " + std::to_string(k) + " [" + std::to_string(I.lo) + ", " + std::to_string(I.hi) + "]";
    if (I.length() <= 0) return tag + " is empty";
    if (4 * static_cast<std::int64_t>(E.size()) <= I.length()) return tag + ": |E_I| <= |I|/4";
    for (const auto n : E) {
      if (!I.contains(n)) return tag + ": witness point " + std::to_string(n) + " outside I";
      if (!used.insert(n).second) return tag + ": witness point " + std::to_string(n) + " shared";
    }
  }
  return std::nullopt;
}

bool validate(const SparseCollection& S) { return !sparsity_violation(S).has_value(); }

double local_average(const Signal1D& phi, const Interval& I, double r) {
  require_exponent(r, "r");
  if (I.length() <= 0) throw InvalidArgument("empty interval");
  if (std::isinf(r)) {
    double m = 0.0;
    for (std::int64_t n = std::max(I.lo, phi.offset()); n <= std::min(I.hi, phi.last()); ++n)
      m = std::max(m, std::abs(phi(n)));
    return m;
  }
  long double s = 0.0L;
  for (std::int64_t n = std::max(I.lo, phi.offset()); n <= std::min(I.hi, phi.last()); ++n)
    s += std::pow(std::abs(phi(n)), r);
  return std::pow(static_cast<double>(s / I.length()), 1.0 / r);
}

double lambda_form(const SparseCollection& S, const Signal1D& f, const Signal1D& g, double p, double q,
                   double lambda) {
  require_exponent(p, "p");
  require_exponent(q, "q");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("lambda must be in [0, 1]");
  if (auto why = sparsity_violation(S)) throw InvalidCollection(*why);
  long double total = 0.0L;
  for (const auto& e : S.entries) {
    const double len = static_cast<double>(e.interval.length());
    total += static_cast<long double>(local_average(f, e.interval, p)) * local_average(g, e.interval, q) *
             std::pow(len, 1.0 - lambda);
  }
  return static_cast<double>(total);
}

double pairing(const IntPolynomial& P, std::int64_t N_max, const Signal1D& f, const Signal1D& g) {
  for (Eigen::Index i = 0; i < g.values().size(); ++i)
    if (g.values()[i] < 0) throw NegativeInput("pairing needs g >= 0");
  const Signal1D M = maximal(P, N_max, f);
  long double total = 0.0L;
  for (std::int64_t x = std::max(M.offset(), g.offset()); x <= std::min(M.last(), g.last()); ++x)
    total += static_cast<long double>(M(x)) * g(x);
  return static_cast<double>(total);
}

GreedyResult greedy_collection(const Signal1D& f, const Signal1D& g, double p, double q, int depth, double lambda) {
  require_exponent(p, "p");
  require_exponent(q, "q");
  if (depth < 1) throw InvalidArgument("depth must be >= 1");
  if (f.empty() && g.empty()) throw DegenerateInput("f and g are both empty");

  std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
  for (const Signal1D* s : {&f, &g})
    if (!s->empty()) {
      lo = std::min(lo, s->offset());
      hi = std::max(hi, s->last());
    }
  std::int64_t len = 1;
  while (len < hi - lo + 1) len *= 2;
  require_window(len, "sparse collection");
  const Interval top{lo, lo + len - 1};

  const PowerSums F(f, lo, len, p), G(g, lo, len, q);
  GreedyResult best;
  bool first = true;
  for (const auto& [rule, name] : {std::pair{Rule::FG, "fg"}, std::pair{Rule::F, "f"}, std::pair{Rule::G, "g"}}) {
    SparseCollection S = build_tree(F, G, rule, top, depth);
    const double value = lambda_form(S, f, g, p, q, lambda);
    if (first || value > best.value) {
      best = {std::move(S), value, name};
      first = false;
    }
  }
  return best;
}

}  // namespace radonlab
