#include "ldt/arith.hpp"

#include <algorithm>

namespace ldt {

std::string to_string(WideInt v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                   : static_cast<unsigned __int128>(v);
  std::string out;
  while (mag > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Value narrow(WideInt v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw OverflowError(std::string(what) + " does not fit in int64: " + to_string(v));
  }
  return static_cast<Value>(v);
}

Value gcd(Value a, Value b) {
  a = checked_abs(a);
  b = checked_abs(b);
  while (b != 0) {
    Value r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Value gcd3(Value a, Value b, Value c) { return gcd(gcd(a, b), c); }

Value lcm(Value a, Value b) {
  if (a == 0 || b == 0) throw std::invalid_argument("lcm of zero");
  a = checked_abs(a);
  b = checked_abs(b);
  return checked_mul(a / gcd(a, b), b);
}

Bezout bezout(Value a, Value b) {
  if (a == 0 && b == 0) throw std::invalid_argument("bezout(0, 0) undefined");
  if (a == 0) return {checked_abs(b), 0, b > 0 ? 1 : -1};

  // Iterative extended Euclid on magnitudes.
  Value r0 = checked_abs(a), r1 = checked_abs(b);
  Value s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const Value q = r0 / r1;
    Value tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  const Value g = r0;
  Value u = a < 0 ? -s0 : s0;
  Value v = b < 0 ? -t0 : t0;

  // Move v into (-step/2, step/2]; (u, v) -> (u - k*b/g, v + k*a/g).
  const Value a_g = a / g;
  const Value b_g = b / g;
  const Value step = checked_abs(a_g);
  Value target = ((v % step) + step) % step;
  if (2 * target > step) target -= step;
  const Value k = (target - v) / a_g;
  u = checked_sub(u, checked_mul(k, b_g));
  v = target;
  return {g, u, v};
}

}  // namespace ldt
