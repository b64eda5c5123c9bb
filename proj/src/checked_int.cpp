#include "radonlab/checked_int.hpp"

#include <algorithm>
#include <limits>

namespace radonlab {

i128 checked_pow(i128 base, unsigned exponent) {
  i128 result = 1;
  for (unsigned i = 0; i < exponent; ++i) result = checked_mul(result, base);
  return result;
}

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t to_int64(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw IntegerOverflow("value " + to_string(v) + " does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

i128 floor_div(i128 num, i128 den) {
  if (den == 0) throw InvalidArgument("division by zero");
  i128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) q -= 1;
  return q;
}

i128 ceil_div(i128 num, i128 den) {
  if (den == 0) throw InvalidArgument("division by zero");
  i128 q = num / den;
  if ((num % den != 0) && ((num < 0) == (den < 0))) q += 1;
  return q;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  u128 mag = negative ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
  std::string digits;
  while (mag != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

i128 parse_i128(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw ParseError("malformed integer '" + std::string(text) + "'");
  i128 value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') throw ParseError("malformed integer '" + std::string(text) + "'");
    value = checked_add(checked_mul(value, 10), negative ? -(c - '0') : (c - '0'));
  }
  return value;
}

}  // namespace radonlab
