#pragma once

// Exact 128-bit integer arithmetic with overflow detection. Every routine
// throws IntegerOverflow instead of wrapping.

#include <cstdint>
#include <string>
#include <string_view>

#include "radonlab/errors.hpp"

namespace radonlab {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw IntegerOverflow("addition exceeds 128 bits");
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw IntegerOverflow("subtraction exceeds 128 bits");
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw IntegerOverflow("product exceeds 128 bits");
  return r;
}

i128 checked_pow(i128 base, unsigned exponent);

inline i128 abs128(i128 a) {
  if (a < 0) return checked_sub(0, a);
  return a;
}

i128 gcd128(i128 a, i128 b);

/// Narrow to int64, throwing if the value does not fit.
std::int64_t to_int64(i128 v);

/// Floor and ceiling of num/den for den != 0.
i128 floor_div(i128 num, i128 den);
i128 ceil_div(i128 num, i128 den);

std::string to_string(i128 v);
i128 parse_i128(std::string_view text);

}  // namespace radonlab
