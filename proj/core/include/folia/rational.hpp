#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace folia {

using BigInt = mpz_class;

// Reduced fraction backed by GMP. Every constructor canonicalizes, so two
// equal values always share the same numerator and denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int n) : q_(n) {}
  Rational(long n) : q_(n) {}
  Rational(long long n) : q_(static_cast<long>(n)) {}
  Rational(const BigInt& n) : q_(n) {}
  Rational(long n, long d);
  Rational(const BigInt& n, const BigInt& d);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Accepts "p/q", "p" and a leading minus sign. Throws Error(Parse).
  static Rational parse(std::string_view text);
  // Exact binary value of a finite double.
  static Rational from_double(double v);
  // Simplest rational (smallest denominator) inside the closed interval [lo, hi].
  static Rational simplest_between(const Rational& lo, const Rational& hi);

  const mpq_class& raw() const { return q_; }
  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }

  std::string str() const { return q_.get_str(); }
  double to_double() const { return q_.get_d(); }
  // Fixed-point decimal with `digits` fractional digits, rounded half away from zero.
  std::string decimal(int digits) const;

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  Rational abs() const { return Rational(::abs(q_)); }
  Rational inverse() const;
  BigInt floor() const;
  std::size_t bit_size() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class q_;
};

Rational pow(const Rational& base, long exponent);
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace folia

template <>
struct std::hash<folia::Rational> {
  std::size_t operator()(const folia::Rational& r) const noexcept { return r.hash(); }
};
