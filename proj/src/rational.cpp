#include "treegh/rational.hpp"

#include <cctype>
#include <ostream>

#include "treegh/errors.hpp"

namespace treegh {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw ValidationError("rational with zero denominator");
  v_ = mpq_class(numerator, denominator);
  v_.canonicalize();
}

Rational::Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Rational { throw ValidationError("not a rational number: '" + original + "'"); };

  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail();

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  mpq_class value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    mpz_class d(std::string(den), 10);
    if (d == 0) return fail();
    value = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (frac.empty()) return fail();
    if (!whole.empty() && !all_digits(whole)) return fail();
    if (!frac.empty() && !all_digits(frac)) return fail();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    value = mpq_class(digits, scale);
  } else {
    if (!all_digits(text)) return fail();
    value = mpq_class(mpz_class(std::string(text), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(value);
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round half away from zero
  mpq_class scaled = (sgn(v_) < 0 ? mpq_class(-v_) : v_) * scale;
  mpz_class q = scaled.get_num() * 2 + scaled.get_den();
  mpz_class d = scaled.get_den() * 2;
  mpz_class rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
  std::string s = rounded.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  if (sgn(v_) < 0 && rounded != 0) s.insert(0, "-");
  return s;
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (sgn(o.v_) == 0) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

std::size_t Rational::hash() const {
  const std::size_t h1 = std::hash<std::string>{}(v_.get_num().get_str(16));
  const std::size_t h2 = std::hash<std::string>{}(v_.get_den().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

mpz_class ceil_sqrt(const Rational& x) {
  if (x.sign() < 0) throw std::domain_error("ceil_sqrt of a negative number");
  // ceil(sqrt(p/q)) = ceil(sqrt(p*q) / q); search upward from the integer root of ceil(p/q).
  const mpz_class p = x.numerator();
  const mpz_class q = x.denominator();
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  mpz_class k;
  mpz_sqrt(k.get_mpz_t(), c.get_mpz_t());
  // k*k <= ceil(p/q); the answer is k or k+1 (or smaller when p/q is not an integer).
  while (k > 0 && (k - 1) * (k - 1) * q >= p) --k;
  while (k * k * q < p) ++k;
  return k;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace treegh
