#include "radonlab/regions.hpp"

#include <algorithm>

#include "radonlab/errors.hpp"

namespace radonlab {

namespace {

Constraint make(Rational cx, Rational cy, Rational cl, Rational c0, bool strict, std::string text) {
  return Constraint{cx, cy, cl, c0, strict, std::move(text)};
}

// "1/q <= 1/p", common to every (p, q) region.
Constraint diagonal() { return make(1, -1, 0, 0, false, "1/q <= 1/p"); }

void require_degree(int d, int min_d) {
  if (d < min_d || d > 64) throw InvalidArgument("region needs " + std::to_string(min_d) + " <= d <= 64");
}

bool satisfies_all(const Region& r, const Rational& X, const Rational& Y) {
  for (const auto& c : r.constraints())
    if (!c.satisfied(X, Y)) return false;
  return true;
}

bool closure_contains(const Region& r, const Rational& X, const Rational& Y) {
  for (const auto& c : r.constraints())
    if (c.evaluate(X, Y) < Rational(0)) return false;
  return X >= Rational(0) && X <= Rational(1) && Y >= Rational(0) && Y <= Rational(1);
}

// Same half-plane: (cx, cy, c0) proportional with a positive factor.
bool same_face(const Constraint& a, const Constraint& b) {
  const std::vector<Rational> u = {a.cx, a.cy, a.c0}, v = {b.cx, b.cy, b.c0};
  std::optional<Rational> ratio;
  for (std::size_t i = 0; i < 3; ++i) {
    if ((u[i] == Rational(0)) != (v[i] == Rational(0))) return false;
    if (u[i] == Rational(0)) continue;
    const Rational r = u[i] / v[i];
    if (r <= Rational(0) || (ratio && *ratio != r)) return false;
    ratio = r;
  }
  return ratio.has_value() && a.cl == Rational(0) && b.cl == Rational(0);
}

Rational cross(const Vertex& o, const Vertex& a, const Vertex& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

Rational Constraint::evaluate(const Rational& X, const Rational& Y, const Rational& L) const {
  return cx * X + cy * Y + cl * L + c0;
}

bool Constraint::satisfied(const Rational& X, const Rational& Y, const Rational& L) const {
  const Rational v = evaluate(X, Y, L);
  return strict ? v > Rational(0) : v >= Rational(0);
}

Region Region::t2() {
  return Region(RegionKind::T2, 2,
                {diagonal(), make(-1, 2, 0, 0, true, "2/q > 1/p"), make(-2, 1, 0, 1, true, "1/q > 2/p - 1")});
}

Region Region::polyrange(int d) {
  require_degree(d, 1);
  const i128 D = static_cast<i128>(d) * d + d;
  const std::string hi = std::to_string(static_cast<long long>(D + 1));
  const std::string lo = std::to_string(static_cast<long long>(D - 1));
  return Region(RegionKind::PolyRange, d,
                {diagonal(), make(-(D - 1), D + 1, 0, 0, true, hi + "/q > " + lo + "/p"),
                 make(-(D + 1), D - 1, 0, 2, true, lo + "/q > " + hi + "/p - 2")});
}

Region Region::necessary(int d) {
  require_degree(d, 1);
  const std::string ds = std::to_string(d), dm = std::to_string(d - 1);
  return Region(RegionKind::Necessary, d,
                {diagonal(), make(-(d - 1), d, 0, 0, false, ds + "/q >= " + dm + "/p"),
                 make(-d, d - 1, 0, 1, false, dm + "/q >= " + ds + "/p - 1")});
}

Region Region::high_necessary(int d) {
  require_degree(d, 1);
  const i128 D = static_cast<i128>(d) * d + d;
  const std::string hi = std::to_string(static_cast<long long>(D));
  const std::string lo = std::to_string(static_cast<long long>(D - 2));
  return Region(RegionKind::HighNecessary, d,
                {diagonal(), make(-(D - 2), D, 0, 0, false, hi + "/q >= " + lo + "/p"),
                 make(-D, D - 2, 0, 2, false, lo + "/q >= " + hi + "/p - 2")});
}

Region Region::conj_i(int d) {
  require_degree(d, 1);
  const std::string ds = std::to_string(d);
  return Region(RegionKind::ConjI, d,
                {make(d, -d, 1, -1, false, "1 - lambda <= " + ds + "(1/p - 1/q)"),
                 make(0, -1, 1, 0, true, "1/q < lambda"), make(1, 0, 1, -1, true, "1 - lambda < 1/p")});
}

Region Region::from_name(const std::string& name, int d) {
  if (name == "t2") return t2();
  if (name == "polyrange") return polyrange(d);
  if (name == "necessary") return necessary(d);
  if (name == "high-necessary") return high_necessary(d);
  if (name == "conj-i") return conj_i(d);
  throw InvalidArgument("unknown region '" + name + "'");
}

std::string Region::name() const {
  switch (kind_) {
    case RegionKind::T2: return "t2";
    case RegionKind::PolyRange: return "polyrange";
    case RegionKind::Necessary: return "necessary";
    case RegionKind::HighNecessary: return "high-necessary";
    case RegionKind::ConjI: return "conj-i";
  }
  return "";
}

RegionVerdict member(const Region& region, const ExponentPair& e, std::optional<Rational> lambda) {
  Rational L(0);
  if (region.uses_lambda()) {
    if (!lambda) throw InvalidArgument("region " + region.name() + " needs lambda");
    if (*lambda <= Rational(0) || *lambda >= Rational(1)) throw InvalidArgument("lambda must lie in (0, 1)");
    L = *lambda;
  }
  RegionVerdict out;
  out.region = region.name();
  out.member = true;
  for (const auto& c : region.constraints()) {
    ConstraintVerdict v{c.text, c.evaluate(e.x(), e.y(), L), c.strict, c.satisfied(e.x(), e.y(), L)};
    out.member = out.member && v.satisfied;
    out.constraints.push_back(std::move(v));
  }
  return out;
}

Exponent dual(const Exponent& p) { return p.dual(); }

bool RationalInterval::contains(const Rational& t) const {
  const bool above = lo_closed ? t >= lo : t > lo;
  const bool below = hi_closed ? t <= hi : t < hi;
  return above && below;
}

std::string RationalInterval::to_string() const {
  return std::string(lo_closed ? "[" : "(") + lo.to_string() + ", " + hi.to_string() + (hi_closed ? "]" : ")");
}

RationalInterval special_range(int d, SpecialRange which) {
  require_degree(d, 1);
  const i128 D = static_cast<i128>(d) * d + d;
  switch (which) {
    case SpecialRange::PolyRangeSpecial: return {Rational(2) - Rational(2, D + 1), Rational(2), false, true};
    case SpecialRange::PolyRangeConj: return {Rational(2) - Rational(1, d), Rational(2), true, true};
    case SpecialRange::HighSpecial: return {Rational(2) - Rational(2, D), Rational(2), true, true};
  }
  throw InvalidArgument("unknown special range");
}

IaBridge ia_bridge(const ExponentPair& e, int d, BridgeDirection direction) {
  require_degree(d, 1);
  const Rational gap = Rational(d) * (e.x() - e.y());
  IaBridge out{direction, Rational(0), Rational(0), false};
  if (direction == BridgeDirection::AveragesToFractional) {
    // 0 < 1 - lambda < min{1, gap}  <=>  max{0, 1 - gap} < lambda < 1
    out.lo = std::max(Rational(0), Rational(1) - gap);
    out.hi = Rational(1);
    out.valid = gap > Rational(0);
  } else {
    out.lo = out.hi = Rational(1) - gap;
    out.valid = out.lo > Rational(0) && out.lo < Rational(1);
  }
  return out;
}

RegionVerdict fractional_gate(int part, int d, const ExponentPair& e, const Rational& lambda) {
  if (part != 1 && part != 2) throw InvalidArgument("the fractional gate has parts 1 and 2");
  require_degree(d, 3);
  RegionVerdict out = member(Region::polyrange(d), e);
  out.region = "fractional-" + std::to_string(part);
  const Rational c = part == 1 ? Rational(d) : Rational(static_cast<i128>(d) * (d + 1), 2);
  const std::string cs = c.to_string();
  const Constraint lower = make(0, 0, -1, 1, true, "0 < 1 - lambda");
  const Constraint upper = make(c, -c, 1, -1, true, "1 - lambda < " + cs + "(1/p - 1/q)");
  for (const auto& k : {lower, upper}) {
    ConstraintVerdict v{k.text, k.evaluate(e.x(), e.y(), lambda), k.strict, k.satisfied(e.x(), e.y(), lambda)};
    out.member = out.member && v.satisfied;
    out.constraints.push_back(std::move(v));
  }
  return out;
}

std::vector<Vertex> vertices(const Region& region) {
  if (region.uses_lambda()) throw InvalidArgument("vertex enumeration needs a region in (1/p, 1/q) only");
  std::vector<Constraint> lines = region.constraints();
  lines.push_back(make(1, 0, 0, 0, false, "X >= 0"));
  lines.push_back(make(-1, 0, 0, 1, false, "X <= 1"));
  lines.push_back(make(0, 1, 0, 0, false, "Y >= 0"));
  lines.push_back(make(0, -1, 0, 1, false, "Y <= 1"));

  std::vector<Vertex> pts;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& a = lines[i];
      const auto& b = lines[j];
      const Rational det = a.cx * b.cy - a.cy * b.cx;
      if (det == Rational(0)) continue;
      const Vertex v{(a.cy * b.c0 - b.cy * a.c0) / det, (b.cx * a.c0 - a.cx * b.c0) / det};
      if (!closure_contains(region, v.x, v.y)) continue;
      if (std::find(pts.begin(), pts.end(), v) == pts.end()) pts.push_back(v);
    }
  if (pts.size() < 3) return pts;

  // Counter-clockwise order around the lowest-leftmost point.
  const auto start = *std::min_element(pts.begin(), pts.end(), [](const Vertex& a, const Vertex& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  std::sort(pts.begin(), pts.end(), [&](const Vertex& a, const Vertex& b) {
    if (a == start) return !(b == start);
    if (b == start) return false;
    const Rational c = cross(start, a, b);
    if (c != Rational(0)) return c > Rational(0);
    const Rational da = (a.x - start.x) * (a.x - start.x) + (a.y - start.y) * (a.y - start.y);
    const Rational db = (b.x - start.x) * (b.x - start.x) + (b.y - start.y) * (b.y - start.y);
    return da < db;
  });
  // Drop points in the middle of an edge.
  std::vector<Vertex> hull;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vertex& prev = pts[(i + pts.size() - 1) % pts.size()];
    const Vertex& next = pts[(i + 1) % pts.size()];
    if (cross(prev, pts[i], next) != Rational(0)) hull.push_back(pts[i]);
  }
  return hull;
}

Containment contained_in_interior(const Region& inner, const Region& outer) {
  const auto poly = vertices(inner);
  Containment out;
  out.contained = true;
  for (const auto& c : outer.constraints()) {
    const bool shared = std::any_of(inner.constraints().begin(), inner.constraints().end(),
                                    [&](const Constraint& k) { return same_face(k, c); });
    if (shared) out.shared_faces.push_back(c.text);
    std::vector<std::size_t> zeros;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Rational v = c.evaluate(poly[i].x, poly[i].y);
      if (v < Rational(0)) {
        out.contained = false;
        out.witness = poly[i];
        return out;
      }
      if (v == Rational(0)) zeros.push_back(i);
    }
    if (shared && !c.strict) continue;
    // Points of the inner closure on this face must all be excluded from inner.
    std::vector<Vertex> probes;
    for (const auto i : zeros) probes.push_back(poly[i]);
    for (std::size_t a = 0; a < zeros.size(); ++a)
      for (std::size_t b = a + 1; b < zeros.size(); ++b)
        probes.push_back({(poly[zeros[a]].x + poly[zeros[b]].x) / Rational(2),
                          (poly[zeros[a]].y + poly[zeros[b]].y) / Rational(2)});
    for (const auto& v : probes)
      if (satisfies_all(inner, v.x, v.y)) {
        out.contained = false;
        out.witness = v;
        return out;
      }
  }
  return out;
}

}  // namespace radonlab
