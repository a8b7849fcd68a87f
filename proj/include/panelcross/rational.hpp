// Exact rational arithmetic for closed-form expectation values.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace panelcross {

// Reduced fraction with a positive denominator. Arithmetic runs through
// 128-bit intermediates and refuses results that do not fit 64 bits.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    num = g ? n / g : n;
    den = g ? d / g : d;
  }

  static Rational reduce128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a) {
      n /= a;
      d /= a;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw std::overflow_error("rational overflow");
    Rational r;
    r.num = static_cast<std::int64_t>(n);
    r.den = static_cast<std::int64_t>(d);
    return r;
  }

  Rational operator+(const Rational& o) const {
    return reduce128(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den, static_cast<__int128>(den) * o.den);
  }
  Rational operator-(const Rational& o) const {
    return reduce128(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den, static_cast<__int128>(den) * o.den);
  }
  Rational operator*(const Rational& o) const {
    return reduce128(static_cast<__int128>(num) * o.num, static_cast<__int128>(den) * o.den);
  }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw std::domain_error("rational division by zero");
    return reduce128(static_cast<__int128>(num) * o.den, static_cast<__int128>(den) * o.num);
  }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den; }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  static Rational pow(const Rational& base, int exp) {
    Rational r(1);
    for (int i = 0; i < exp; ++i) r = r * base;
    return r;
  }
};

}  // namespace panelcross
