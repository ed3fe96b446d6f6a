#pragma once

#include <cstdint>
#include <string>

#include "predt/errors.hpp"

namespace predt {

/// Exact arithmetic over int64 fractions, always kept normalized (gcd 1,
/// positive denominator). Intermediate products are checked in __int128 so an
/// overflow throws instead of wrapping. Big enough for homogeneity-weight
/// recursions; not a general bignum.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : n_(num), d_(den) { normalize(); }
  Rational(std::int64_t num) : n_(num), d_(1) {}  // NOLINT: implicit integer promotion intended

  [[nodiscard]] std::int64_t num() const noexcept { return n_; }
  [[nodiscard]] std::int64_t den() const noexcept { return d_; }
  [[nodiscard]] double to_double() const noexcept { return static_cast<double>(n_) / static_cast<double>(d_); }
  [[nodiscard]] std::string str() const {
    return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(checked(a.n_, b.d_) + checked(b.n_, a.d_), checked(a.d_, b.d_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(checked(a.n_, b.d_) - checked(b.n_, a.d_), checked(a.d_, b.d_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(checked(a.n_, b.n_), checked(a.d_, b.d_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.n_ == 0) throw domain_error("Rational: division by zero");
    return make(checked(a.n_, b.d_), checked(a.d_, b.n_));
  }
  friend bool operator==(const Rational& a, const Rational& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

 private:
  static __int128 checked(std::int64_t a, std::int64_t b) { return static_cast<__int128>(a) * b; }

  static Rational make(__int128 num, __int128 den) {
    if (den == 0) throw domain_error("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    __int128 a = num < 0 ? -num : num, b = den;
    while (b != 0) { const __int128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    num /= a; den /= a;
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw domain_error("Rational: int64 overflow");
    Rational r;
    r.n_ = static_cast<std::int64_t>(num);
    r.d_ = static_cast<std::int64_t>(den);
    return r;
  }

  void normalize() {
    Rational r = make(n_, d_);
    n_ = r.n_;
    d_ = r.d_;
  }

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
};

}  // namespace predt
