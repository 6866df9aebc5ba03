#pragma once

// Exact rational arithmetic for probability masses.
//
// int64 numerator/denominator, always reduced, denominator positive.
// Intermediates run through __int128 and overflow raises evaluation_error
// instead of silently wrapping; for probability tables with denominators in
// the millions this is far from the limit.

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "infodec/errors.hpp"

namespace infodec {

class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (den_ == 0) throw argument_error("rational with zero denominator");
    reduce();
  }

  /// Accepts "3", "-3", "2/6", "0.25", ".5" — decimals become exact
  /// rationals (d fractional digits -> denominator 10^d).
  static Rational parse(std::string_view text) {
    std::size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
      std::int64_t n = parse_int(text.substr(0, slash));
      std::int64_t d = parse_int(text.substr(slash + 1));
      if (d == 0) throw argument_error("zero denominator in '" + std::string(text) + "'");
      return Rational(n, d);
    }
    bool neg = false;
    std::string_view rest = text;
    if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
      neg = rest.front() == '-';
      rest.remove_prefix(1);
    }
    std::size_t dot = rest.find('.');
    std::string_view ipart = dot == std::string_view::npos ? rest : rest.substr(0, dot);
    std::string_view fpart = dot == std::string_view::npos ? std::string_view{} : rest.substr(dot + 1);
    if (ipart.empty() && fpart.empty())
      throw argument_error("not a number: '" + std::string(text) + "'");
    if (fpart.size() > 18)
      throw argument_error("too many fractional digits in '" + std::string(text) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < fpart.size(); ++i) den *= 10;
    __int128 num = ipart.empty() ? 0 : parse_digits(ipart);
    num = num * den + (fpart.empty() ? 0 : parse_digits(fpart));
    if (neg) num = -num;
    return Rational(narrow(num), den);
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool negative() const noexcept { return num_ < 0; }
  double value() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "a/b", or just "a" when the denominator is 1.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw argument_error("rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
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
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  using i128 = __int128;

  static std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw evaluation_error("rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
  }

  static Rational make(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    Rational r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  static std::int64_t parse_int(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    i128 v = parse_digits(s);
    return narrow(neg ? -v : v);
  }

  static i128 parse_digits(std::string_view s) {
    if (s.empty()) throw argument_error("empty number");
    i128 v = 0;
    for (char c : s) {
      if (c < '0' || c > '9')
        throw argument_error("bad digit in '" + std::string(s) + "'");
      v = v * 10 + (c - '0');
      if (v > i128(INT64_MAX) * 1000) throw evaluation_error("number literal overflow");
    }
    return v;
  }

  void reduce() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace infodec
