#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "radonlab/checked_int.hpp"

namespace radonlab {

/// Exact rational number in lowest terms with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(i128 numerator, i128 denominator = 1);  // NOLINT(google-explicit-constructor)

  /// Accepts "a", "a/b" and finite decimals such as "1.6" (read exactly as 8/5).
  static Rational parse(std::string_view text);

  i128 num() const { return num_; }
  i128 den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const;
  std::string to_string() const;

  i128 floor() const { return floor_div(num_, den_); }
  i128 ceil() const { return ceil_div(num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(checked_sub(0, a.num_), a.den_); }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  i128 num_ = 0;
  i128 den_ = 1;
};

Rational abs(const Rational& r);

/// A Lebesgue exponent p in [1, inf], stored through its reciprocal 1/p in [0, 1]
/// so that p = inf is the exact value 0.
class Exponent {
 public:
  Exponent() : recip_(1) {}
  static Exponent from_p(const Rational& p);
  static Exponent from_reciprocal(const Rational& recip);
  static Exponent infinity() { return from_reciprocal(Rational(0)); }
  /// "inf", "∞" or anything Rational::parse accepts.
  static Exponent parse(std::string_view text);

  const Rational& reciprocal() const { return recip_; }
  bool is_infinite() const { return recip_.num() == 0; }
  Rational p() const;
  /// p as a double; +inf for p = inf.
  double value() const;
  /// Conjugate exponent: 1/p + 1/p' = 1.
  Exponent dual() const { return from_reciprocal(Rational(1) - recip_); }
  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) = default;

 private:
  explicit Exponent(Rational recip) : recip_(recip) {}
  Rational recip_;
};

}  // namespace radonlab
