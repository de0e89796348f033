#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace spinq {

// Exact rational on 64-bit integers with overflow-checked arithmetic.
// Overflow throws instead of wrapping; coefficients in this project stay
// small, so a failure here indicates a genuine modelling bug.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { reduce(); }

  static Rational checked(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("rational: overflow");
    Rational r;
    r.num = static_cast<long long>(n);
    r.den = static_cast<long long>(d);
    return r;
  }

  void reduce() {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  bool is_zero() const { return num == 0; }
  bool is_one() const { return num == 1 && den == 1; }
  bool is_integer() const { return den == 1; }
  bool is_negative() const { return num < 0; }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return checked((__int128)a.num * b.den + (__int128)b.num * a.den,
                   (__int128)a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return checked((__int128)a.num * b.den - (__int128)b.num * a.den,
                   (__int128)a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return checked((__int128)a.num * b.num, (__int128)a.den * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("rational: division by zero");
    return checked((__int128)a.num * b.den, (__int128)a.den * b.num);
  }
  Rational operator-() const {
    Rational r;
    r.num = -num;
    r.den = den;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational abs() const { return num < 0 ? -*this : *this; }

  // Integer power, negative exponents allowed for nonzero base.
  Rational pow_int(long long e) const {
    if (e == 0) return Rational(1);
    Rational base = *this;
    if (e < 0) {
      if (num == 0) throw std::domain_error("rational: 0 to negative power");
      base = Rational(den, num);
      e = -e;
    }
    Rational acc(1);
    while (e > 0) {
      if (e & 1) acc *= base;
      base = (e > 1) ? base * base : base;
      e >>= 1;
    }
    return acc;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }
};

// gcd of two non-negative rationals: gcd of numerators over lcm of denominators.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  long long n = std::gcd(a.num < 0 ? -a.num : a.num, b.num < 0 ? -b.num : b.num);
  long long l = a.den / std::gcd(a.den, b.den) * b.den;
  return Rational(n, l);
}

// Exact q-th root of a positive integer if it exists.
inline bool perfect_root(long long v, long long q, long long& root) {
  if (v <= 0) return false;
  if (v == 1) { root = 1; return true; }
  long long lo = 1, hi = v;
  // binary search on r^q = v with overflow guard
  auto powq = [&](long long r) -> __int128 {
    __int128 acc = 1;
    for (long long i = 0; i < q; ++i) {
      acc *= r;
      if (acc > (__int128)4 * v) return acc;
    }
    return acc;
  };
  while (lo <= hi) {
    long long mid = lo + (hi - lo) / 2;
    __int128 p = powq(mid);
    if (p == v) { root = mid; return true; }
    if (p < v) lo = mid + 1; else hi = mid - 1;
  }
  return false;
}

}  // namespace spinq
