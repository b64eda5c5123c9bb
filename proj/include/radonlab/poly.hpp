#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "radonlab/checked_int.hpp"
#include "radonlab/rational.hpp"

namespace radonlab {

/// Polynomial P(x) = a_0 + a_1 x + ... + a_d x^d with rational coefficients,
/// stored as integer numerators over one common (reduced) denominator.
///
/// Trailing zero coefficients are trimmed on construction, so the leading
/// coefficient is always nonzero. Integer-valuedness is not a construction
/// invariant; operators that need it call require_integer_valued().
class IntPolynomial {
 public:
  IntPolynomial(std::vector<i128> numerators, i128 denominator);

  static IntPolynomial from_integers(const std::vector<i128>& coefficients);
  static IntPolynomial from_rationals(const std::vector<Rational>& coefficients);
  /// "c0,c1,...,cd" with each entry an integer, "a/b" fraction or decimal.
  static IntPolynomial parse(std::string_view text);
  static IntPolynomial monomial(int degree);

  int degree() const { return static_cast<int>(numerators_.size()) - 1; }
  const std::vector<i128>& numerators() const { return numerators_; }
  i128 denominator() const { return denominator_; }
  Rational coefficient(int j) const;

  /// P - a_0. Translations do not affect any norm quantity.
  IntPolynomial without_constant() const;

  std::string to_string() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<i128> numerators_;
  i128 denominator_;
};

/// Exact rational value P(k).
Rational eval_rational(const IntPolynomial& P, i128 k);

/// Exact integer value P(k); throws NonIntegerValued if P(k) is not an integer
/// and IntegerOverflow if any intermediate exceeds 128 bits.
i128 eval(const IntPolynomial& P, i128 k);

/// True iff P maps Z to Z.
///
/// Finite-difference criterion: P = sum_j (Delta^j P)(0) * binom(x, j) and the
/// binomial polynomials are integer-valued, so P is integer-valued iff every
/// (Delta^j P)(0) is an integer, iff P(0), ..., P(d) are integers.
bool check_integer_valued(const IntPolynomial& P);

void require_integer_valued(const IntPolynomial& P);

/// prod_{0 <= i < j <= d} (j - i), the bound on the coefficient denominator of an
/// integer-valued polynomial of degree d.
i128 vandermonde_product(int degree);

/// a_j = b_j * u / v for j = 1..d with gcd(b) = 1, gcd(u, v) = 1 and v the least
/// common denominator of a_1..a_d.
struct Decomposition {
  i128 u = 1;
  i128 v = 1;
  std::vector<i128> b;  // b[0] is b_1
};

Decomposition decompose(const IntPolynomial& P);

/// P(first), ..., P(last) narrowed to int64.
std::vector<std::int64_t> values_on(const IntPolynomial& P, std::int64_t first, std::int64_t last);

}  // namespace radonlab
