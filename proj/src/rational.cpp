#include "radonlab/rational.hpp"

#include <limits>

namespace radonlab {

Rational::Rational(i128 numerator, i128 denominator) {
  if (denominator == 0) throw InvalidArgument("rational with zero denominator");
  if (denominator < 0) {
    numerator = checked_sub(0, numerator);
    denominator = checked_sub(0, denominator);
  }
  const i128 g = gcd128(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const i128 den = parse_i128(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_i128(text.substr(0, slash)), den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos)
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    std::string_view whole = text.substr(0, dot);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    const i128 int_part = whole.empty() ? 0 : parse_i128(whole);
    const i128 scale = checked_pow(10, static_cast<unsigned>(frac.size()));
    i128 numer = checked_add(checked_mul(int_part, scale), parse_i128(frac));
    if (negative) numer = -numer;
    return Rational(numer, scale);
  }
  return Rational(parse_i128(text));
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::to_string() const {
  if (den_ == 1) return radonlab::to_string(num_);
  return radonlab::to_string(num_) + "/" + radonlab::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const i128 g = gcd128(a.den_, b.den_);
  const i128 da = a.den_ / g;
  const i128 db = b.den_ / g;
  return Rational(checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)),
                  checked_mul(a.den_, db));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const i128 g1 = gcd128(a.num_, b.den_);
  const i128 g2 = gcd128(b.num_, a.den_);
  // denominators are positive, so both gcds are nonzero
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw InvalidArgument("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const i128 lhs = checked_mul(a.num_, b.den_);
  const i128 rhs = checked_mul(b.num_, a.den_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational abs(const Rational& r) { return r.num() < 0 ? -r : r; }

Exponent Exponent::from_p(const Rational& p) {
  if (p < Rational(1)) throw InvalidExponent("p = " + p.to_string() + " is below 1");
  return Exponent(Rational(1) / p);
}

Exponent Exponent::from_reciprocal(const Rational& recip) {
  if (recip < Rational(0) || recip > Rational(1))
    throw InvalidExponent("reciprocal 1/p = " + recip.to_string() + " outside [0, 1]");
  return Exponent(recip);
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "\xE2\x88\x9E") return infinity();
  return from_p(Rational::parse(text));
}

Rational Exponent::p() const {
  if (is_infinite()) throw InvalidExponent("p is infinite");
  return Rational(1) / recip_;
}

double Exponent::value() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return p().to_double();
}

std::string Exponent::to_string() const { return is_infinite() ? "inf" : p().to_string(); }

}  // namespace radonlab
