#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <span>
#include <sstream>
#include <vector>

#include "bloch/cyclotomic.hpp"

namespace bloch {

/// Monomial exponent: integer z-exponents (possibly negative) plus a
/// non-negative lambda degree. Ordered lexicographically, lambda last.
struct ExponentVec {
  std::vector<int> z;
  int lam = 0;

  friend bool operator==(const ExponentVec& a, const ExponentVec& b) {
    return a.lam == b.lam && a.z == b.z;
  }
  friend bool operator<(const ExponentVec& a, const ExponentVec& b) {
    if (a.z != b.z) return a.z < b.z;
    return a.lam < b.lam;
  }
};

/// Multivariate Laurent polynomial in z_1..z_d, ordinary polynomial in lambda,
/// with coefficients in a cyclotomic field. Immutable in spirit: every
/// operation returns a new value; stored terms never have zero coefficients.
class LaurentPoly {
 public:
  explicit LaurentPoly(int dim) : dim_(dim) {
    if (dim < 0) throw std::invalid_argument("LaurentPoly: negative dimension");
  }

  static LaurentPoly zero(int dim) { return LaurentPoly(dim); }

  static LaurentPoly constant(int dim, const Cyclotomic& c) {
    LaurentPoly p(dim);
    p.add_term(ExponentVec{std::vector<int>(dim, 0), 0}, c);
    return p;
  }

  static LaurentPoly monomial(int dim, std::vector<int> zexp, int lam, const Cyclotomic& c) {
    if (static_cast<int>(zexp.size()) != dim)
      throw std::invalid_argument("LaurentPoly: exponent dimension mismatch");
    if (lam < 0) throw std::invalid_argument("LaurentPoly: negative lambda degree");
    LaurentPoly p(dim);
    p.add_term(ExponentVec{std::move(zexp), lam}, c);
    return p;
  }

  // z_j^power (0-based axis index)
  static LaurentPoly variable(int dim, int axis, int power = 1) {
    std::vector<int> e(dim, 0);
    e.at(axis) = power;
    return monomial(dim, std::move(e), 0, Cyclotomic(1));
  }

  static LaurentPoly lambda(int dim, int power = 1) {
    return monomial(dim, std::vector<int>(dim, 0), power, Cyclotomic(1));
  }

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<ExponentVec, Cyclotomic>& terms() const { return terms_; }

  unsigned coefficient_order() const {
    unsigned L = 1;
    for (const auto& [e, c] : terms_) L = lcm_order(L, c.order());
    return L;
  }

  // -1 for the zero polynomial.
  int lambda_degree() const {
    int deg = -1;
    for (const auto& [e, c] : terms_) deg = std::max(deg, e.lam);
    return deg;
  }

  Cyclotomic coefficient(const ExponentVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Cyclotomic() : it->second;
  }

  void add_term(const ExponentVec& e, const Cyclotomic& c) {
    if (static_cast<int>(e.z.size()) != dim_)
      throw std::invalid_argument("LaurentPoly: exponent dimension mismatch");
    if (e.lam < 0) throw std::invalid_argument("LaurentPoly: negative lambda degree");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentPoly operator-() const {
    LaurentPoly out(dim_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_dim(b);
    LaurentPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_dim(b);
    LaurentPoly out(a.dim_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        ExponentVec e;
        e.z.resize(a.dim_);
        for (int j = 0; j < a.dim_; ++j) e.z[j] = ea.z[j] + eb.z[j];
        e.lam = ea.lam + eb.lam;
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const Cyclotomic& s) {
    LaurentPoly out(a.dim_);
    if (s.is_zero()) return out;
    for (const auto& [e, c] : a.terms_) out.add_term(e, c * s);
    return out;
  }
  friend LaurentPoly operator*(const Cyclotomic& s, const LaurentPoly& a) { return a * s; }

  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.dim_ != b.dim_ || a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
      if (!(ia->first == ib->first) || ia->second != ib->second) return false;
    }
    return true;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // P(zeta(m,N) (.) z, lambda): each coefficient picks up zeta_N^{<m,n>} where
  // n is the term's z-exponent vector. The support is unchanged.
  LaurentPoly substitute_shift(const std::vector<long>& m, unsigned N) const {
    if (static_cast<int>(m.size()) != dim_)
      throw std::invalid_argument("substitute_shift: shift dimension mismatch");
    if (N == 0) throw std::invalid_argument("substitute_shift: N must be positive");
    LaurentPoly out(dim_);
    for (const auto& [e, c] : terms_) {
      long dot = 0;
      for (int j = 0; j < dim_; ++j)
        dot = (dot + (m[j] % static_cast<long>(N)) * (e.z[j] % static_cast<long>(N))) %
              static_cast<long>(N);
      out.terms_.emplace(e, c * Cyclotomic::root_of_unity(N, dot));
    }
    return out;
  }

  // z_j -> z_j^{q_j}
  LaurentPoly substitute_zpower(const std::vector<int>& q) const {
    if (static_cast<int>(q.size()) != dim_)
      throw std::invalid_argument("substitute_zpower: dimension mismatch");
    LaurentPoly out(dim_);
    for (const auto& [e, c] : terms_) {
      ExponentVec ne = e;
      for (int j = 0; j < dim_; ++j) ne.z[j] = e.z[j] * q[j];
      out.add_term(ne, c);
    }
    return out;
  }

  LaurentPoly lambda_derivative() const {
    LaurentPoly out(dim_);
    for (const auto& [e, c] : terms_) {
      if (e.lam == 0) continue;
      ExponentVec ne = e;
      ne.lam = e.lam - 1;
      out.add_term(ne, c * Rational(e.lam));
    }
    return out;
  }

  // P(z, lambda + a), expanded with exact binomial coefficients.
  LaurentPoly lambda_shift(const Rational& a) const {
    LaurentPoly out(dim_);
    for (const auto& [e, c] : terms_) {
      Rational apow(1);
      mpz_class binom;
      for (int t = e.lam; t >= 0; --t) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(e.lam),
                     static_cast<unsigned long>(t));
        ExponentVec ne = e;
        ne.lam = t;
        out.add_term(ne, c * (Rational(binom) * apow));
        apow *= a;
      }
    }
    return out;
  }

  // Coefficient of lambda^j as a lambda-free polynomial.
  LaurentPoly lambda_coefficient(int j) const {
    LaurentPoly out(dim_);
    for (const auto& [e, c] : terms_) {
      if (e.lam != j) continue;
      ExponentVec ne = e;
      ne.lam = 0;
      out.add_term(ne, c);
    }
    return out;
  }

  std::vector<LaurentPoly> lambda_coefficients() const {
    int deg = lambda_degree();
    std::vector<LaurentPoly> out(static_cast<size_t>(deg + 1), LaurentPoly(dim_));
    for (const auto& [e, c] : terms_) {
      ExponentVec ne = e;
      ne.lam = 0;
      out[static_cast<size_t>(e.lam)].add_term(ne, c);
    }
    return out;
  }

  static LaurentPoly from_lambda_coefficients(int dim, const std::vector<LaurentPoly>& coeffs) {
    LaurentPoly out(dim);
    for (size_t j = 0; j < coeffs.size(); ++j) {
      for (const auto& [e, c] : coeffs[j].terms()) {
        ExponentVec ne = e;
        ne.lam = static_cast<int>(j);
        out.add_term(ne, c);
      }
    }
    return out;
  }

  // Componentwise minimum of the z-exponents over the support.
  std::vector<int> content_monomial() const {
    if (terms_.empty()) throw std::domain_error("content_monomial: zero polynomial");
    std::vector<int> c = terms_.begin()->first.z;
    for (const auto& [e, coef] : terms_)
      for (int j = 0; j < dim_; ++j) c[j] = std::min(c[j], e.z[j]);
    return c;
  }

  // Multiply by the monomial z^shift.
  LaurentPoly shifted_by_monomial(const std::vector<int>& shift) const {
    if (static_cast<int>(shift.size()) != dim_)
      throw std::invalid_argument("shifted_by_monomial: dimension mismatch");
    LaurentPoly out(dim_);
    for (const auto& [e, c] : terms_) {
      ExponentVec ne = e;
      for (int j = 0; j < dim_; ++j) ne.z[j] += shift[j];
      out.terms_.emplace(ne, c);
    }
    return out;
  }

  std::vector<std::vector<int>> support_zexponents() const {
    std::vector<std::vector<int>> out;
    for (const auto& [e, c] : terms_)
      if (out.empty() || out.back() != e.z) out.push_back(e.z);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::complex<double> eval(std::span<const std::complex<double>> z,
                            std::complex<double> lam) const {
    if (static_cast<int>(z.size()) != dim_)
      throw std::invalid_argument("eval: point dimension mismatch");
    for (const auto& zj : z)
      if (zj == std::complex<double>(0.0, 0.0))
        throw std::domain_error("eval: zero component of z");
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [e, c] : terms_) {
      std::complex<double> term = c.to_complex();
      for (int j = 0; j < dim_; ++j) term *= cpow_int(z[j], e.z[j]);
      term *= cpow_int(lam, e.lam);
      acc += term;
    }
    return acc;
  }

  // Exact evaluation at a rational point (all z components nonzero).
  Cyclotomic eval_exact(std::span<const Rational> z, const Rational& lam) const {
    if (static_cast<int>(z.size()) != dim_)
      throw std::invalid_argument("eval_exact: point dimension mismatch");
    for (const auto& zj : z)
      if (zj.is_zero()) throw std::domain_error("eval_exact: zero component of z");
    Cyclotomic acc;
    for (const auto& [e, c] : terms_) {
      Rational f(1);
      for (int j = 0; j < dim_; ++j) f *= rpow_int(z[j], e.z[j]);
      for (int t = 0; t < e.lam; ++t) f *= lam;
      acc += c * f;
    }
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Cyclotomic coef = c;
      bool negated = false;
      if (coef.is_rational() && coef.rational_value().sign() < 0) {
        coef = -coef;
        negated = true;
      }
      if (first) {
        if (negated) os << "-";
        first = false;
      } else {
        os << (negated ? " - " : " + ");
      }
      std::string mono = mono_str(e);
      std::string cs = coef.str();
      if (mono.empty()) {
        os << cs;
      } else if (cs == "1") {
        os << mono;
      } else {
        os << cs << "*" << mono;
      }
    }
    return os.str();
  }

 private:
  void check_dim(const LaurentPoly& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("LaurentPoly: dimension mismatch");
  }

  static std::complex<double> cpow_int(std::complex<double> base, int e) {
    if (e == 0) return {1.0, 0.0};
    bool neg = e < 0;
    unsigned k = static_cast<unsigned>(neg ? -static_cast<long>(e) : e);
    std::complex<double> acc(1.0, 0.0);
    while (k) {
      if (k & 1u) acc *= base;
      base *= base;
      k >>= 1u;
    }
    return neg ? 1.0 / acc : acc;
  }

  static Rational rpow_int(const Rational& base, int e) {
    if (e == 0) return Rational(1);
    Rational b = e < 0 ? base.reciprocal() : base;
    unsigned k = static_cast<unsigned>(e < 0 ? -static_cast<long>(e) : e);
    Rational acc(1);
    while (k) {
      if (k & 1u) acc *= b;
      b *= b;
      k >>= 1u;
    }
    return acc;
  }

  std::string mono_str(const ExponentVec& e) const {
    std::ostringstream os;
    bool any = false;
    for (int j = 0; j < dim_; ++j) {
      if (e.z[j] == 0) continue;
      if (any) os << "*";
      os << "z" << (j + 1);
      if (e.z[j] != 1) os << "^" << e.z[j];
      any = true;
    }
    if (e.lam > 0) {
      if (any) os << "*";
      os << "l";
      if (e.lam != 1) os << "^" << e.lam;
      any = true;
    }
    return any ? os.str() : std::string();
  }

  int dim_;
  std::map<ExponentVec, Cyclotomic> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

}  // namespace bloch
