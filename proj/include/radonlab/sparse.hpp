#pragma once

// Sparse forms over interval collections and the pairing <A_* f, g>. This is
// evidence gathering: nothing here asserts a sparse bound.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radonlab/poly.hpp"
#include "radonlab/signal.hpp"

namespace radonlab {

/// The integer interval [lo, hi], both ends included.
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  std::int64_t length() const { return hi - lo + 1; }
  bool contains(std::int64_t n) const { return n >= lo && n <= hi; }
  bool contains(const Interval& J) const { return J.lo >= lo && J.hi <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct SparseEntry {
  Interval interval;
  std::vector<std::int64_t> witness;  // E_I, sorted
};

struct SparseCollection {
  std::vector<SparseEntry> entries;
};

/// Empty when S is sparse: every E_I is a subset of I with 4|E_I| > |I| and the
/// E_I are pairwise disjoint. Otherwise the first violated condition.
std::optional<std::string> sparsity_violation(const SparseCollection& S);
bool validate(const SparseCollection& S);

/// <phi>_{I,r} = (|I|^{-1} sum_{n in I} |phi(n)|^r)^{1/r}; r = inf gives the max.
double local_average(const Signal1D& phi, const Interval& I, double r);

/// sum_{I in S} <f>_{I,p} <g>_{I,q} |I|^{1 - lambda}, 0 <= lambda <= 1.
/// Throws InvalidCollection when S is not sparse.
double lambda_form(const SparseCollection& S, const Signal1D& f, const Signal1D& g, double p, double q,
                   double lambda);

/// <A_* f, g> = sum_x A_* f(x) g(x) with A_* over 1 <= N <= N_max; f, g >= 0.
double pairing(const IntPolynomial& P, std::int64_t N_max, const Signal1D& f, const Signal1D& g);

struct GreedyResult {
  SparseCollection collection;
  double value = 0.0;  // Lambda_{p,q,lambda}(f, g) on the collection
  /// Which stopping quantity produced the best tree: "fg", "f" or "g".
  std::string rule;
};

/// Stopping-time builder on the dyadic grid anchored at the left end of the
/// joint window of f and g. From a selected interval I it selects the maximal
/// dyadic descendants J whose local quantity exceeds twice that of I, largest
/// first while their total length stays below 3|I|/4, sets E_I = I minus the
/// selected children and recurses, up to `depth` generations. The stopping
/// quantity is <f>_{J,p}<g>_{J,q}, <f>_{J,p} or <g>_{J,q}; the largest form
/// value among the three trees wins (first on ties). Deterministic.
GreedyResult greedy_collection(const Signal1D& f, const Signal1D& g, double p, double q, int depth,
                               double lambda = 0.0);

}  // namespace radonlab
