#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "echkatok/errors.hpp"

namespace ech {

using int128 = __int128;

// Exact rational number on 64-bit numerator/denominator with 128-bit
// intermediates.  Results that do not fit back into 64 bits after reduction
// raise OverflowError.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n, std::int64_t d = 1) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  // Largest integer <= value.
  std::int64_t floor() const {
    if (num_ >= 0) return num_ / den_;
    return -((-num_ + den_ - 1) / den_);
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(int128(a.num_) * b.den_ + int128(b.num_) * a.den_,
                   int128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(int128(a.num_) * b.den_ - int128(b.num_) * a.den_,
                   int128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(int128(a.num_) * b.num_, int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InvalidArgument("rational division by zero");
    return from128(int128(a.num_) * b.den_, int128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  // Three-way comparison, exact.
  friend int cmp(const Rational& a, const Rational& b) {
    int128 lhs = int128(a.num_) * b.den_;
    int128 rhs = int128(b.num_) * a.den_;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return cmp(a, b) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return cmp(a, b) <= 0;
  }

 private:
  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw InvalidArgument("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = n;
    den_ = d;
  }

  static Rational from128(int128 n, int128 d) {
    if (d == 0) throw InvalidArgument("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr int128 lo = -int128(UINT64_C(1) << 63);
    constexpr int128 hi = int128((UINT64_C(1) << 63) - 1);
    if (n < lo || n > hi || d > hi)
      throw OverflowError("rational out of 64-bit range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static int128 gcd128(int128 a, int128 b) {
    while (b != 0) {
      int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace ech
