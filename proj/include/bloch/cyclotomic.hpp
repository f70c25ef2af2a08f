#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "bloch/rational.hpp"

namespace bloch {

inline unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// N-th cyclotomic polynomial with integer coefficients, low-to-high degree.
// Computed as (x^N - 1) / prod_{d | N, d < N} Phi_d via exact monic division.
inline const std::vector<mpz_class>& cyclotomic_polynomial(unsigned N) {
  if (N == 0) throw std::invalid_argument("cyclotomic_polynomial: N must be positive");
  static std::mutex mu;
  static std::map<unsigned, std::vector<mpz_class>> cache;
  std::scoped_lock lock(mu);
  if (auto it = cache.find(N); it != cache.end()) return it->second;

  // Dense exact division by a monic divisor.
  auto divide_monic = [](std::vector<mpz_class> num, const std::vector<mpz_class>& div) {
    std::vector<mpz_class> quot(num.size() - div.size() + 1, mpz_class(0));
    for (size_t k = quot.size(); k-- > 0;) {
      quot[k] = num[k + div.size() - 1];
      if (quot[k] == 0) continue;
      for (size_t i = 0; i < div.size(); ++i) num[k + i] -= quot[k] * div[i];
    }
    return quot;
  };

  for (unsigned n = 1; n <= N; ++n) {
    if (N % n != 0 || cache.count(n)) continue;
    std::vector<mpz_class> poly(n + 1, mpz_class(0));
    poly[0] = -1;
    poly[n] = 1;  // x^n - 1
    for (unsigned d = 1; d < n; ++d)
      if (n % d == 0) poly = divide_monic(std::move(poly), cache.at(d));
    cache.emplace(n, std::move(poly));
  }
  return cache.at(N);
}

inline unsigned lcm_order(unsigned a, unsigned b) { return std::lcm(a, b); }

namespace detail {

struct CycTable {
  unsigned phi;
  // pow[k] = coordinates of x^k modulo Phi_N in the basis 1, x, ..., x^{phi-1}
  std::vector<std::vector<Rational>> pow;
};

inline const CycTable& cyc_table(unsigned N) {
  static std::mutex mu;
  static std::map<unsigned, CycTable> cache;
  std::scoped_lock lock(mu);
  if (auto it = cache.find(N); it != cache.end()) return it->second;

  const auto& phi_poly = cyclotomic_polynomial(N);
  const unsigned phi = static_cast<unsigned>(phi_poly.size() - 1);
  CycTable table;
  table.phi = phi;
  table.pow.resize(N);
  std::vector<Rational> cur(phi, Rational(0));
  cur[0] = Rational(1);
  for (unsigned k = 0; k < N; ++k) {
    table.pow[k] = cur;
    // multiply by x, reduce using x^phi = -(Phi_N - x^phi)
    std::vector<Rational> next(phi, Rational(0));
    Rational top = cur[phi - 1];
    for (unsigned i = phi - 1; i > 0; --i) next[i] = cur[i - 1];
    if (!top.is_zero())
      for (unsigned i = 0; i < phi; ++i) next[i] -= top * Rational(mpq_class(phi_poly[i]));
    cur = std::move(next);
  }
  return cache.emplace(N, std::move(table)).first->second;
}

// Plain dense univariate polynomials over Q, used only for inversion mod Phi_N.
using QPoly = std::vector<Rational>;

inline void qpoly_trim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline QPoly qpoly_rem(QPoly a, const QPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    qpoly_trim(a);
  }
  return a;
}

}  // namespace detail

/// Element of the cyclotomic field Q(zeta_N), reduced modulo Phi_N. Coordinates
/// are in the power basis 1, zeta, ..., zeta^{phi(N)-1}; N = 1 embeds Q itself.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), c_(1, Rational(0)) {}
  Cyclotomic(const Rational& r, unsigned order = 1)  // NOLINT: implicit from rationals
      : order_(order), c_(detail::cyc_table(order).phi, Rational(0)) {
    c_[0] = r;
  }
  Cyclotomic(long n) : Cyclotomic(Rational(n)) {}  // NOLINT: implicit from integers

  static Cyclotomic zero(unsigned order = 1) { return Cyclotomic(Rational(0), order); }

  // zeta_N^k for any integer k.
  static Cyclotomic root_of_unity(unsigned order, long k) {
    long r = k % static_cast<long>(order);
    if (r < 0) r += order;
    Cyclotomic out = zero(order);
    out.c_ = detail::cyc_table(order).pow[static_cast<size_t>(r)];
    return out;
  }

  unsigned order() const { return order_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("Cyclotomic: value is not rational");
    return c_[0];
  }

  // Image under the embedding Q(zeta_N) -> Q(zeta_M), requires N | M.
  Cyclotomic lifted(unsigned target) const {
    if (target == order_) return *this;
    if (target % order_ != 0)
      throw std::invalid_argument("Cyclotomic: order does not divide lift target");
    const auto& table = detail::cyc_table(target);
    unsigned step = target / order_;
    Cyclotomic out = zero(target);
    for (size_t j = 0; j < c_.size(); ++j) {
      if (c_[j].is_zero()) continue;
      const auto& row = table.pow[(j * step) % target];
      for (unsigned i = 0; i < table.phi; ++i) out.c_[i] += c_[j] * row[i];
    }
    return out;
  }

  // Complex conjugation: zeta -> zeta^{-1}.
  Cyclotomic conj() const {
    const auto& table = detail::cyc_table(order_);
    Cyclotomic out = zero(order_);
    for (size_t j = 0; j < c_.size(); ++j) {
      if (c_[j].is_zero()) continue;
      const auto& row = table.pow[(order_ - j) % order_];
      for (unsigned i = 0; i < table.phi; ++i) out.c_[i] += c_[j] * row[i];
    }
    return out;
  }

  // Multiplicative inverse via the extended Euclidean algorithm with Phi_N.
  Cyclotomic inverse() const {
    if (is_zero()) throw std::domain_error("Cyclotomic: inverse of zero");
    using detail::QPoly;
    const auto& phi_poly = cyclotomic_polynomial(order_);
    QPoly modulus(phi_poly.size());
    for (size_t i = 0; i < phi_poly.size(); ++i) modulus[i] = Rational(mpq_class(phi_poly[i]));
    QPoly a(c_.begin(), c_.end());
    detail::qpoly_trim(a);

    // Extended gcd of (a, modulus): track s with s*a = r (mod modulus).
    QPoly r0 = modulus, r1 = a;
    QPoly s0 = {}, s1 = {Rational(1)};
    while (!r1.empty()) {
      // r0 = q*r1 + r2
      QPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rational(0));
      QPoly rem = r0;
      while (rem.size() >= r1.size() && !rem.empty()) {
        Rational f = rem.back() / r1.back();
        size_t off = rem.size() - r1.size();
        q[off] += f;
        for (size_t i = 0; i < r1.size(); ++i) rem[off + i] -= f * r1[i];
        detail::qpoly_trim(rem);
      }
      // s2 = s0 - q*s1
      QPoly s2 = s0;
      if (!q.empty() && !s1.empty()) {
        s2.resize(std::max(s2.size(), q.size() + s1.size() - 1), Rational(0));
        for (size_t i = 0; i < q.size(); ++i) {
          if (q[i].is_zero()) continue;
          for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        detail::qpoly_trim(s2);
      }
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 is a nonzero constant gcd (Phi_N is irreducible over Q).
    if (r0.size() != 1)
      throw std::logic_error("Cyclotomic: inverse failed, non-constant gcd");
    Rational scale = r0[0].reciprocal();
    QPoly inv = detail::qpoly_rem(std::move(s0), modulus);
    Cyclotomic out = zero(order_);
    for (size_t i = 0; i < inv.size() && i < out.c_.size(); ++i) out.c_[i] = inv[i] * scale;
    return out;
  }

  std::complex<double> to_complex() const {
    std::complex<double> acc(0.0, 0.0);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(order_);
    for (size_t j = 0; j < c_.size(); ++j) {
      if (c_[j].is_zero()) continue;
      acc += c_[j].to_double() * std::polar(1.0, step * static_cast<double>(j));
    }
    return acc;
  }

  std::string str() const {
    if (is_rational()) return c_[0].str();
    std::ostringstream os;
    os << "cyc(" << order_ << ")[";
    for (size_t i = 0; i < c_.size(); ++i) {
      if (i) os << ",";
      os << c_[i].str();
    }
    os << "]";
    return os.str();
  }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned L = lcm_order(a.order_, b.order_);
    Cyclotomic x = a.lifted(L), y = b.lifted(L);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned L = lcm_order(a.order_, b.order_);
    Cyclotomic x = a.lifted(L), y = b.lifted(L);
    const auto& table = detail::cyc_table(L);
    Cyclotomic out = zero(L);
    for (size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i].is_zero()) continue;
      for (size_t j = 0; j < y.c_.size(); ++j) {
        if (y.c_[j].is_zero()) continue;
        Rational f = x.c_[i] * y.c_[j];
        const auto& row = table.pow[(i + j) % L];
        for (unsigned k = 0; k < table.phi; ++k) out.c_[k] += f * row[k];
      }
    }
    return out;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Rational& s) {
    Cyclotomic out = a;
    for (auto& x : out.c_) x *= s;
    return out;
  }
  friend Cyclotomic operator*(const Rational& s, const Cyclotomic& a) { return a * s; }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    unsigned L = lcm_order(a.order_, b.order_);
    return a.lifted(L).c_ == b.lifted(L).c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

 private:
  unsigned order_;
  std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.str(); }

inline Cyclotomic pow(const Cyclotomic& base, unsigned e) {
  Cyclotomic acc(Rational(1), base.order());
  Cyclotomic b = base;
  while (e) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

}  // namespace bloch
