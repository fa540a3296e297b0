#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sumprod {

using Integer = mpz_class;

/// Exact rational number in canonical form: gcd(|num|, den) = 1, den >= 1,
/// and zero is 0/1. Immutable from the outside; every arithmetic operation
/// returns a fresh canonical value.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(const Integer& value) : value_(value) {}

  /// Reduces n/d to lowest terms with a positive denominator.
  /// Throws InvalidArgument when d == 0.
  static Rational canonicalize(const Integer& n, const Integer& d);
  static Rational canonicalize(long n, long d) { return canonicalize(Integer(n), Integer(d)); }

  /// Parses `n` or `n/d` (surrounding whitespace allowed, d may be negative
  /// or share factors with n). Throws InvalidArgument on malformed input.
  static Rational parse(std::string_view text);

  Integer num() const { return value_.get_num(); }
  Integer den() const { return value_.get_den(); }
  const mpq_class& raw() const noexcept { return value_; }

  int sign() const noexcept { return sgn(value_); }
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational abs() const;
  Rational inverse() const;
  /// Integer power; negative exponents require a nonzero base.
  Rational pow(long exponent) const;

  double to_double() const { return value_.get_d(); }
  /// `n` when the denominator is 1, otherwise `n/d`.
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const noexcept;

 private:
  explicit Rational(mpq_class value) : value_(std::move(value)) {}

  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

std::size_t hash_integer(const Integer& z) noexcept;

struct RationalHash {
  std::size_t operator()(const Rational& r) const noexcept { return r.hash(); }
};

inline std::size_t hash_combine(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace sumprod

template <>
struct std::hash<sumprod::Rational> {
  std::size_t operator()(const sumprod::Rational& r) const noexcept { return r.hash(); }
};
