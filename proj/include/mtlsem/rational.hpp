#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "mtlsem/error.hpp"

namespace mtlsem {

/// Exact rational number, always stored reduced with a positive denominator.
///
/// Timestamps and interval bounds are nonnegative, but intermediate values
/// (a timestamp minus an interval bound) may dip below zero before being
/// clipped, so the sign is carried. Arithmetic is overflow-checked and throws
/// `Error(Overflow)` instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT implicit
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_negative() const noexcept { return num_ < 0; }
  bool is_integer() const noexcept { return den_ == 1; }

  /// Parses "p/q", an integer, or a terminating decimal ("3.3" -> 33/10).
  static Rational parse(std::string_view text);

  /// "p/q" or "p" when integral.
  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Terminating decimal when the denominator is of the form 2^a 5^b, else "p/q".
  std::string decimal_str() const;

  friend Rational operator+(const Rational& a, const Rational& b) {
    std::int64_t g = std::gcd(a.den_, b.den_);
    std::int64_t lhs = mul(a.num_, b.den_ / g);
    std::int64_t rhs = mul(b.num_, a.den_ / g);
    return Rational(add(lhs, rhs), mul(a.den_ / g, b.den_));
  }
  friend Rational operator-(const Rational& a) { return Rational(neg(a.num_), a.den_, raw_tag{}); }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    std::int64_t g1 = std::gcd(a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(mul(a.num_ / g1, b.num_ / g2), mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error(ErrorKind::Overflow, "division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // Compare a.num/a.den with b.num/b.den through 128-bit cross products.
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  struct raw_tag {};
  Rational(std::int64_t n, std::int64_t d, raw_tag) : num_(n), den_(d) {}

  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "rational multiplication");
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "rational addition");
    return r;
  }
  static std::int64_t neg(std::int64_t a) {
    if (a == INT64_MIN) throw Error(ErrorKind::Overflow, "rational negation");
    return -a;
  }

  void normalize() {
    if (den_ == 0) throw Error(ErrorKind::Syntax, "zero denominator");
    if (den_ < 0) {
      num_ = neg(num_);
      den_ = neg(den_);
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw Error(ErrorKind::Syntax, "not a rational: '" + std::string(text) + "'");
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.empty()) return fail();
  bool negative = false;
  if (s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  auto digits = [&](std::string_view d, std::int64_t& out) {
    if (d.empty()) return false;
    out = 0;
    for (char c : d) {
      if (c < '0' || c > '9') return false;
      out = add(mul(out, 10), c - '0');
    }
    return true;
  };
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t p, q;
    if (!digits(s.substr(0, slash), p) || !digits(s.substr(slash + 1), q) || q == 0) return fail();
    r = Rational(p, q);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    std::int64_t w = 0, f = 0;
    if (!whole.empty() && !digits(whole, w)) return fail();
    if (!frac.empty() && !digits(frac, f)) return fail();
    if (whole.empty() && frac.empty()) return fail();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale = mul(scale, 10);
    r = Rational(add(mul(w, scale), f), scale);
  } else {
    std::int64_t p;
    if (!digits(s, p)) return fail();
    r = Rational(p);
  }
  return negative ? -r : r;
}

inline std::string Rational::decimal_str() const {
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) d /= 2, ++twos;
  while (d % 5 == 0) d /= 5, ++fives;
  if (d != 1 || den_ == 1) return str();
  int digits = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale = mul(scale, 10);
  std::int64_t scaled = mul(num_ < 0 ? -num_ : num_, scale / den_);
  std::string frac = std::to_string(scaled % scale);
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  return std::string(num_ < 0 ? "-" : "") + std::to_string(scaled / scale) + "." + frac;
}

}  // namespace mtlsem

template <>
struct std::hash<mtlsem::Rational> {
  std::size_t operator()(const mtlsem::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};
