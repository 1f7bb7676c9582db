#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ldt {

using Value = std::int64_t;

// 128-bit intermediate for every coefficient * element product.
using WideInt = __int128;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

std::string to_string(WideInt v);

// Narrowing back to the instance element type; never wraps.
Value narrow(WideInt v, const char* what = "value");

inline WideInt wide_mul(WideInt a, WideInt b) {
  WideInt out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("128-bit multiplication overflow");
  return out;
}

inline WideInt wide_add(WideInt a, WideInt b) {
  WideInt out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("128-bit addition overflow");
  return out;
}

inline Value checked_mul(Value a, Value b) {
  Value out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("int64 multiplication overflow");
  return out;
}

inline Value checked_add(Value a, Value b) {
  Value out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("int64 addition overflow");
  return out;
}

inline Value checked_sub(Value a, Value b) {
  Value out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("int64 subtraction overflow");
  return out;
}

inline Value checked_abs(Value a) {
  if (a == INT64_MIN) throw OverflowError("int64 abs overflow");
  return a < 0 ? -a : a;
}

// Rounds toward negative infinity.
inline Value floor_div(Value a, Value b) {
  Value q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// gcd on absolute values; gcd(0, 0) = 0.
Value gcd(Value a, Value b);
Value gcd3(Value a, Value b, Value c);
// Positive lcm of |a|, |b|; both must be nonzero.
Value lcm(Value a, Value b);

struct Bezout {
  Value g;  // gcd(|a|, |b|) > 0
  Value u;  // a*u + b*v == g
  Value v;
};

// Canonical Bezout pair: among all solutions, |v| is minimal, i.e. v lies in
// (-|a|/2g, |a|/2g]. Requires (a, b) != (0, 0).
Bezout bezout(Value a, Value b);

}  // namespace ldt
