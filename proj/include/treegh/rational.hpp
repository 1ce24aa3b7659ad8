#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace treegh {

/// Exact rational number in canonical form (reduced, positive denominator).
///
/// Thin value wrapper over GMP's mpq_class so that the rest of the library
/// never sees expression templates or un-canonicalized temporaries.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : v_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Accepts "p/q", "-p/q", integers and finite decimals ("2.75", "-.5").
  /// Throws std::invalid_argument on anything else or a zero denominator.
  static Rational parse(std::string_view text);

  /// "p/q" with q >= 1, e.g. "0/1", "-7/2".
  std::string str() const;
  /// Rounded decimal rendering with `digits` fractional digits.
  std::string decimal(int digits) const;

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  const mpq_class& raw() const { return v_; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class v_;
};

Rational abs(const Rational& x);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Smallest integer k >= 0 with k*k >= x, for x >= 0.
mpz_class ceil_sqrt(const Rational& x);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace treegh

template <>
struct std::hash<treegh::Rational> {
  std::size_t operator()(const treegh::Rational& r) const noexcept { return r.hash(); }
};
