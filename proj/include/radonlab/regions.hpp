#pragma once

// Exponent regions as finite lists of rational linear constraints in
// (X, Y, L) = (1/p, 1/q, lambda). Everything here is exact rational arithmetic.

#include <optional>
#include <string>
#include <vector>

#include "radonlab/rational.hpp"

namespace radonlab {

struct ExponentPair {
  Exponent p;
  Exponent q;

  Rational x() const { return p.reciprocal(); }
  Rational y() const { return q.reciprocal(); }
};

/// cx X + cy Y + cl L + c0 > 0 (strict) or >= 0.
struct Constraint {
  Rational cx, cy, cl, c0;
  bool strict = false;
  std::string text;  // as printed, e.g. "2/q > 1/p"

  Rational evaluate(const Rational& X, const Rational& Y, const Rational& L = Rational(0)) const;
  bool satisfied(const Rational& X, const Rational& Y, const Rational& L = Rational(0)) const;
};

enum class RegionKind {
  T2,             // proven quadratic range
  PolyRange,      // triangular range, degree d >= 3
  Necessary,      // necessary conditions for the 1D averages
  HighNecessary,  // necessary conditions for the moment-curve averages
  ConjI,          // conjectured range for the fractional integrals (uses lambda)
};

class Region {
 public:
  static Region t2();
  static Region polyrange(int d);
  static Region necessary(int d);
  static Region high_necessary(int d);
  static Region conj_i(int d);
  /// "t2", "polyrange", "necessary", "high-necessary", "conj-i".
  static Region from_name(const std::string& name, int d);

  RegionKind kind() const { return kind_; }
  int d() const { return d_; }
  std::string name() const;
  bool uses_lambda() const { return kind_ == RegionKind::ConjI; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

 private:
  Region(RegionKind kind, int d, std::vector<Constraint> constraints)
      : kind_(kind), d_(d), constraints_(std::move(constraints)) {}
  RegionKind kind_;
  int d_;
  std::vector<Constraint> constraints_;
};

struct ConstraintVerdict {
  std::string text;
  Rational value;  // the linear form cx X + cy Y + cl L + c0
  bool strict = false;
  bool satisfied = false;
};

struct RegionVerdict {
  std::string region;
  bool member = false;
  std::vector<ConstraintVerdict> constraints;
};

/// Exact membership. ConjI needs lambda in (0, 1) (InvalidArgument otherwise);
/// the other regions ignore it.
RegionVerdict member(const Region& region, const ExponentPair& e, std::optional<Rational> lambda = std::nullopt);

Exponent dual(const Exponent& p);

enum class SpecialRange {
  PolyRangeSpecial,  // q = p' inside the triangular range
  PolyRangeConj,     // q = p' inside the necessary region
  HighSpecial,       // q = p' inside the moment-curve necessary region
};

struct RationalInterval {
  Rational lo, hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(const Rational& t) const;
  std::string to_string() const;
};

/// Range of p for q = p'.
RationalInterval special_range(int d, SpecialRange which);

enum class BridgeDirection {
  AveragesToFractional,  // (p, q) averaging bound gives the fractional bound for these lambda
  FractionalToAverages,  // the fractional bound at lambda = 1 - d(1/p - 1/q) gives the averaging bound
};

/// First direction: the open lambda-interval from 0 < 1 - lambda < min{1, d(1/p - 1/q)}
/// (empty when 1/p <= 1/q). Second direction: the single lambda = 1 - d(1/p - 1/q),
/// valid only when it lies in (0, 1).
struct IaBridge {
  BridgeDirection direction;
  Rational lo, hi;  // (lo, hi) open, or lo == hi for the second direction
  bool valid = false;
};

IaBridge ia_bridge(const ExponentPair& e, int d, BridgeDirection direction);

/// The two gates for fractional averages: (p, q) in the triangular range
/// and 0 < 1 - lambda < c (1/p - 1/q), with c = d (part 1) or d(d+1)/2 (part 2).
RegionVerdict fractional_gate(int part, int d, const ExponentPair& e, const Rational& lambda);

// ------------------------------------------------------------ polygon geometry

struct Vertex {
  Rational x, y;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Vertices of the closure of a (lambda-free) region intersected with the unit
/// square [0, 1]^2, in counter-clockwise order starting from the lowest-leftmost.
std::vector<Vertex> vertices(const Region& region);

struct Containment {
  bool contained = false;
  /// Constraints of the outer region with the same normal and offset as one of the inner region's.
  std::vector<std::string> shared_faces;
  /// A point of the inner region violating the (strict) test, if any.
  std::optional<Vertex> witness;
};

/// Whether inner is a subset of outer, with every constraint of outer that is
/// not a shared face holding strictly on inner (interior relative to the
/// faces the two regions do not share). A shared face that is strict in outer
/// must also exclude the inner points on it. Decided on vertices and edge midpoints
/// of the inner closure, so the answer is exact.
Containment contained_in_interior(const Region& inner, const Region& outer);

}  // namespace radonlab
