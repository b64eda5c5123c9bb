#include "radonlab/poly.hpp"

#include <sstream>

namespace radonlab {

IntPolynomial::IntPolynomial(std::vector<i128> numerators, i128 denominator)
    : numerators_(std::move(numerators)), denominator_(denominator) {
  if (denominator_ == 0) throw InvalidArgument("polynomial denominator is zero");
  while (!numerators_.empty() && numerators_.back() == 0) numerators_.pop_back();
  if (numerators_.empty()) throw DegenerateInput("zero polynomial");
  if (denominator_ < 0) {
    denominator_ = checked_sub(0, denominator_);
    for (auto& n : numerators_) n = checked_sub(0, n);
  }
  i128 g = denominator_;
  for (const auto n : numerators_) g = gcd128(g, n);
  denominator_ /= g;
  for (auto& n : numerators_) n /= g;
}

IntPolynomial IntPolynomial::from_integers(const std::vector<i128>& coefficients) {
  return IntPolynomial(coefficients, 1);
}

IntPolynomial IntPolynomial::from_rationals(const std::vector<Rational>& coefficients) {
  i128 common = 1;
  for (const auto& c : coefficients) common = checked_mul(common / gcd128(common, c.den()), c.den());
  std::vector<i128> numer;
  numer.reserve(coefficients.size());
  for (const auto& c : coefficients) numer.push_back(checked_mul(c.num(), common / c.den()));
  return IntPolynomial(std::move(numer), common);
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::vector<Rational> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    coeffs.push_back(Rational::parse(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return from_rationals(coeffs);
}

IntPolynomial IntPolynomial::monomial(int degree) {
  std::vector<i128> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = 1;
  return from_integers(c);
}

Rational IntPolynomial::coefficient(int j) const {
  if (j < 0 || j > degree()) return Rational(0);
  return Rational(numerators_[static_cast<std::size_t>(j)], denominator_);
}

IntPolynomial IntPolynomial::without_constant() const {
  auto numer = numerators_;
  numer[0] = 0;
  return IntPolynomial(std::move(numer), denominator_);
}

std::string IntPolynomial::to_string() const {
  std::ostringstream out;
  for (int j = 0; j <= degree(); ++j) {
    if (j) out << ',';
    out << coefficient(j).to_string();
  }
  return out.str();
}

namespace {

i128 horner_numerator(const IntPolynomial& P, i128 k) {
  const auto& c = P.numerators();
  i128 acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = checked_add(checked_mul(acc, k), *it);
  return acc;
}

}  // namespace

Rational eval_rational(const IntPolynomial& P, i128 k) {
  return Rational(horner_numerator(P, k), P.denominator());
}

i128 eval(const IntPolynomial& P, i128 k) {
  const i128 numer = horner_numerator(P, k);
  if (numer % P.denominator() != 0)
    throw NonIntegerValued("P(" + to_string(k) + ") is not an integer for P = " + P.to_string());
  return numer / P.denominator();
}

bool check_integer_valued(const IntPolynomial& P) {
  for (int j = 0; j <= P.degree(); ++j) {
    if (horner_numerator(P, j) % P.denominator() != 0) return false;
  }
  return true;
}

void require_integer_valued(const IntPolynomial& P) {
  if (!check_integer_valued(P))
    throw NonIntegerValued("polynomial " + P.to_string() + " does not map Z to Z");
}

i128 vandermonde_product(int degree) {
  i128 prod = 1;
  for (int j = 1; j <= degree; ++j)
    for (int i = 0; i < j; ++i) prod = checked_mul(prod, j - i);
  return prod;
}

Decomposition decompose(const IntPolynomial& P) {
  const auto& c = P.numerators();
  i128 g = 0;
  for (std::size_t j = 1; j < c.size(); ++j) g = gcd128(g, c[j]);
  if (g == 0) throw DegenerateInput("all non-constant coefficients are zero");
  // a_j = c_j / D = (c_j / g) * (g / D); reduce g / D to u / v.
  const Rational scale(g, P.denominator());
  Decomposition out;
  out.u = scale.num();
  out.v = scale.den();
  for (std::size_t j = 1; j < c.size(); ++j) out.b.push_back(c[j] / g);
  return out;
}

std::vector<std::int64_t> values_on(const IntPolynomial& P, std::int64_t first, std::int64_t last) {
  std::vector<std::int64_t> out;
  if (last < first) return out;
  out.reserve(static_cast<std::size_t>(last - first + 1));
  for (std::int64_t k = first; k <= last; ++k) out.push_back(to_int64(eval(P, k)));
  return out;
}

}  // namespace radonlab
