#pragma once

#include <cstdint>
#include <string>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgcl {

using BigInt = boost::multiprecision::cpp_int;

// Thrown by the checked 64-bit arithmetic; callers rerun with BigInt.
struct Int64Overflow {};

// Arithmetic used by the elimination kernels, specialized for checked
// int64 and for BigInt.
template <class T>
struct IntOps;

template <>
struct IntOps<std::int64_t> {
  using T = std::int64_t;
  static T add(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
  }
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
  }
  static T neg(T a) { return sub(0, a); }
  static T abs(T a) { return a < 0 ? neg(a) : a; }
  // Truncating division; a and b are never INT64_MIN/-1 after abs() checks.
  static T div(T a, T b) { return a / b; }
  static T mod(T a, T b) { return a % b; }
  static BigInt to_big(T a) { return BigInt(a); }
};

template <>
struct IntOps<BigInt> {
  using T = BigInt;
  static T add(const T& a, const T& b) { return a + b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T mul(const T& a, const T& b) { return a * b; }
  static T neg(const T& a) { return -a; }
  static T abs(const T& a) { return a < 0 ? T(-a) : a; }
  static T div(const T& a, const T& b) { return a / b; }
  static T mod(const T& a, const T& b) { return a % b; }
  static BigInt to_big(const T& a) { return a; }
};

// Returns (g, x, y) with g = gcd(a, b) > 0 and x*a + y*b = g. Requires
// (a, b) != (0, 0).
template <class T>
std::tuple<T, T, T> extended_gcd(T a, T b) {
  using Ops = IntOps<T>;
  T old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    T q = Ops::div(old_r, r);
    T tmp = Ops::sub(old_r, Ops::mul(q, r));
    old_r = r;
    r = tmp;
    tmp = Ops::sub(old_s, Ops::mul(q, s));
    old_s = s;
    s = tmp;
    tmp = Ops::sub(old_t, Ops::mul(q, t));
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {Ops::neg(old_r), Ops::neg(old_s), Ops::neg(old_t)};
  return {old_r, old_s, old_t};
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace pgcl
