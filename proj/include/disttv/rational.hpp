#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "disttv/errors.hpp"

namespace disttv {

using Int128 = __int128;

inline Int128 checked_add(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_add_overflow(a, b, &out))
    throw LimitError("exact integer overflow (add): instance too large for 128-bit arithmetic");
  return out;
}

inline Int128 checked_sub(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_sub_overflow(a, b, &out))
    throw LimitError("exact integer overflow (sub): instance too large for 128-bit arithmetic");
  return out;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_mul_overflow(a, b, &out))
    throw LimitError("exact integer overflow (mul): instance too large for 128-bit arithmetic");
  return out;
}

inline Int128 int128_abs(Int128 v) { return v < 0 ? -v : v; }

inline Int128 int128_gcd(Int128 a, Int128 b) {
  a = int128_abs(a);
  b = int128_abs(b);
  if (a == 1 || b == 1) return 1;
  while (b != 0) {
    const Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string int128_to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  return std::string(digits.rbegin(), digits.rend());
}

/// Exact rational number over checked 128-bit integers. Always stored
/// reduced, with a positive denominator. Arithmetic that would overflow the
/// 128-bit range throws LimitError instead of silently wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)

  static Rational from_parts(Int128 num, Int128 den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    Rational r;
    r.num_ = num;
    r.den_ = den;
    r.reduce();
    return r;
  }

  static Rational fraction(long long num, long long den) {
    return from_parts(num, den);
  }

  Int128 num() const noexcept { return num_; }
  Int128 den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const {
    if (den_ == 1) return int128_to_string(num_);
    return int128_to_string(num_) + "/" + int128_to_string(den_);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.num_ == 0) return b;
    if (b.num_ == 0) return a;
    if (a.den_ == b.den_) return from_parts(checked_add(a.num_, b.num_), a.den_);
    const Int128 g = int128_gcd(a.den_, b.den_);
    const Int128 bd = b.den_ / g;
    const Int128 num = checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, a.den_ / g));
    return from_parts(num, checked_mul(a.den_, bd));
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational(0);
    // Cross-reduce before multiplying to keep intermediates small.
    const Int128 g1 = int128_gcd(a.num_, b.den_);
    const Int128 g2 = int128_gcd(b.num_, a.den_);
    Rational r;
    r.num_ = checked_mul(a.num_ / g1, b.num_ / g2);
    r.den_ = checked_mul(a.den_ / g2, b.den_ / g1);
    return r;
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("Rational: division by zero");
    Rational inv;
    inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    inv.den_ = int128_abs(b.num_);
    return a * inv;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (a.sign() != b.sign()) return a.sign() < b.sign();
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  void reduce() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    const Int128 g = int128_gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  Int128 num_ = 0;
  Int128 den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Nearest point on the dyadic grid 2^-40 (finer than the 1e-12 granularity
/// the exact solvers assume).
inline Rational rationalize_dyadic(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: value not finite");
  constexpr long double kScale = 1099511627776.0L;  // 2^40
  const long double scaled = roundl(static_cast<long double>(x) * kScale);
  if (scaled > 1.7e38L || scaled < -1.7e38L)
    throw LimitError("rationalize: magnitude too large for exact arithmetic");
  return Rational::from_parts(static_cast<Int128>(scaled), static_cast<Int128>(1) << 40);
}

/// Best small-denominator rational within `tol` of x (continued fractions,
/// denominators up to 1e6); falls back to the dyadic grid 2^-40, which is
/// finer than the 1e-12 granularity the exact solvers assume.
inline Rational rationalize(double x, double tol = 1e-12) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: value not finite");
  if (x == 0.0) return Rational(0);
  const bool neg = x < 0;
  const double ax = neg ? -x : x;
  constexpr long long kMaxSmallDen = 1'000'000;
  long long h_prev = 0, h_cur = 1;  // convergent numerators p_{-2}, p_{-1}
  long long k_prev = 1, k_cur = 0;  // convergent denominators q_{-2}, q_{-1}
  double v = ax;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(v);
    if (!(fl >= 0.0) || fl > 9.0e17) break;
    const long long a = static_cast<long long>(fl);
    long long h, k, t;
    if (__builtin_mul_overflow(a, h_cur, &t) || __builtin_add_overflow(t, h_prev, &h)) break;
    if (__builtin_mul_overflow(a, k_cur, &t) || __builtin_add_overflow(t, k_prev, &k)) break;
    if (k > kMaxSmallDen) break;
    if (k > 0 && std::abs(ax - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
      return Rational::from_parts(neg ? -static_cast<Int128>(h) : static_cast<Int128>(h), k);
    }
    h_prev = h_cur;
    h_cur = h;
    k_prev = k_cur;
    k_cur = k;
    const double rem = v - fl;
    if (rem < 1e-15) break;
    v = 1.0 / rem;
  }
  return rationalize_dyadic(x);
}

/// Rationalizes a batch whose values will mix inside one exact computation.
/// Continued-fraction results are kept only while the combined denominator
/// lcm stays small; otherwise every value is redone on the shared dyadic
/// grid, so denominators never compound across the batch.
inline std::vector<Rational> rationalize_batch(const std::vector<double>& values) {
  std::vector<Rational> out;
  out.reserve(values.size());
  Int128 lcm = 1;
  bool fallback = false;
  constexpr Int128 kMaxLcm = static_cast<Int128>(1) << 31;
  for (const double v : values) {
    const Rational r = rationalize(v);
    try {
      lcm = checked_mul(lcm / int128_gcd(lcm, r.den()), r.den());
    } catch (const LimitError&) {
      fallback = true;
    }
    if (lcm > kMaxLcm) fallback = true;
    if (fallback) break;
    out.push_back(r);
  }
  if (!fallback) return out;
  out.clear();
  for (const double v : values) out.push_back(rationalize_dyadic(v));
  return out;
}

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

}  // namespace disttv

namespace Eigen {

template <>
struct NumTraits<disttv::Rational> : GenericNumTraits<disttv::Rational> {
  typedef disttv::Rational Real;
  typedef disttv::Rational NonInteger;
  typedef disttv::Rational Nested;

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 32,
    MulCost = 32
  };
};

}  // namespace Eigen
