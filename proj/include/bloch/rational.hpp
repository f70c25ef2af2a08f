#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bloch {

/// Exact rational number, kept canonical: gcd(|num|, den) = 1 and den > 0.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit for integer literals
  Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class q) : v_(std::move(q)) {
    if (v_.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpz_class& n) : v_(n) {}

  // Parses "p" or "p/q" with an optional leading sign. Floating literals
  // ("0.5", "1e-3") are rejected so that inputs stay exact.
  static Rational parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty literal");
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("Rational: cannot parse \"" + std::string(text) + "\": " + why);
    };
    size_t i = 0;
    if (text[i] == '+' || text[i] == '-') ++i;
    bool seen_digit = false, seen_slash = false;
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c >= '0' && c <= '9') {
        seen_digit = true;
      } else if (c == '/') {
        if (seen_slash || !seen_digit) fail("malformed fraction");
        seen_slash = true;
        seen_digit = false;
      } else if (c == '.' || c == 'e' || c == 'E') {
        fail("floating literal is not accepted; write an exact rational like \"1/2\"");
      } else {
        fail("unexpected character");
      }
    }
    if (!seen_digit) fail("missing digits");
    std::string body(text);
    if (body[0] == '+') body.erase(0, 1);  // gmp rejects an explicit plus
    mpq_class q;
    if (q.set_str(body, 10) != 0) fail("invalid rational");
    if (q.get_den() == 0) fail("zero denominator");
    q.canonicalize();
    return Rational(std::move(q));
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  const mpz_class& numerator() const { return v_.get_num(); }
  const mpz_class& denominator() const { return v_.get_den(); }

  Rational reciprocal() const {
    if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
    return Rational(1 / v_);
  }

  // Fractional part in [0, 1).
  Rational mod_one() const {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return Rational(mpq_class(v_ - fl));
  }

  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }
  const mpq_class& raw() const { return v_; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace bloch
