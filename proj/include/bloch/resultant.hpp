#pragma once

#include <vector>

#include "bloch/laurent.hpp"

namespace bloch {

namespace detail {

// Exact division of ordinary (non-Laurent) polynomials: every step cancels the
// lex-leading term of the remainder. Throws if the division is not exact.
inline LaurentPoly exact_div_poly(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly quot(a.dim());
  LaurentPoly rem = a;
  const auto& bt = b.terms();
  const auto& blead = *bt.rbegin();
  Cyclotomic blead_inv = blead.second.inverse();
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms().rbegin();
    ExponentVec e;
    e.z.resize(a.dim());
    for (int j = 0; j < a.dim(); ++j) {
      e.z[j] = rlead.first.z[j] - blead.first.z[j];
      if (e.z[j] < 0) throw std::domain_error("exact_div: division is not exact");
    }
    e.lam = rlead.first.lam - blead.first.lam;
    if (e.lam < 0) throw std::domain_error("exact_div: division is not exact");
    LaurentPoly t = LaurentPoly::monomial(a.dim(), e.z, e.lam, rlead.second * blead_inv);
    quot += t;
    rem -= t * b;
  }
  return quot;
}

}  // namespace detail

// Exact division in the Laurent ring. The monomial contents are cleared first
// (they multiply out of the quotient), then ordinary polynomial division runs
// in the cleared ring. Throws std::domain_error if b does not divide a.
inline LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
  if (a.is_zero()) return LaurentPoly::zero(a.dim());
  if (a.dim() != b.dim()) throw std::invalid_argument("exact_div: dimension mismatch");
  std::vector<int> ca = a.content_monomial();
  std::vector<int> cb = b.content_monomial();
  std::vector<int> neg_ca(ca.size()), neg_cb(cb.size()), shift(ca.size());
  for (size_t j = 0; j < ca.size(); ++j) {
    neg_ca[j] = -ca[j];
    neg_cb[j] = -cb[j];
    shift[j] = ca[j] - cb[j];
  }
  LaurentPoly q = detail::exact_div_poly(a.shifted_by_monomial(neg_ca),
                                         b.shifted_by_monomial(neg_cb));
  return q.shifted_by_monomial(shift);
}

namespace detail {

// Dense view of a polynomial in lambda with lambda-free Laurent coefficients.
struct LambdaView {
  int dim;
  std::vector<LaurentPoly> c;  // index = lambda degree

  int deg() const { return static_cast<int>(c.size()) - 1; }
  const LaurentPoly& lc() const { return c.back(); }
  bool is_zero() const { return c.empty(); }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
};

inline LambdaView to_lambda_view(const LaurentPoly& p) {
  LambdaView v;
  v.dim = p.dim();
  v.c = p.lambda_coefficients();
  v.trim();
  return v;
}

inline LambdaView scale(const LambdaView& a, const LaurentPoly& f) {
  LambdaView out{a.dim, {}};
  out.c.reserve(a.c.size());
  for (const auto& ci : a.c) out.c.push_back(ci * f);
  out.trim();
  return out;
}

inline LambdaView sub(const LambdaView& a, const LambdaView& b) {
  LambdaView out{a.dim, {}};
  size_t n = std::max(a.c.size(), b.c.size());
  out.c.assign(n, LaurentPoly(a.dim));
  for (size_t i = 0; i < a.c.size(); ++i) out.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) out.c[i] -= b.c[i];
  out.trim();
  return out;
}

// b shifted up by lambda^k
inline LambdaView shift_up(const LambdaView& b, int k) {
  LambdaView out{b.dim, {}};
  out.c.assign(b.c.size() + static_cast<size_t>(k), LaurentPoly(b.dim));
  for (size_t i = 0; i < b.c.size(); ++i) out.c[i + static_cast<size_t>(k)] = b.c[i];
  return out;
}

// Pseudo-remainder: returns lc(B)^{deg A - deg B + 1} * A mod B, fraction-free.
inline LambdaView prem(const LambdaView& A, const LambdaView& B) {
  int m = A.deg(), l = B.deg();
  LambdaView R = A;
  int e = m - l + 1;
  while (!R.is_zero() && R.deg() >= l) {
    LambdaView t = scale(shift_up(B, R.deg() - l), R.lc());
    R = sub(scale(R, B.lc()), t);
    --e;
  }
  // normalize to exactly lc(B)^{m-l+1}
  LaurentPoly f = LaurentPoly::constant(A.dim, Cyclotomic(1));
  for (int i = 0; i < e; ++i) f *= B.lc();
  if (e > 0) R = scale(R, f);
  return R;
}

}  // namespace detail

// Resultant of p and r viewed as polynomials in lambda over the Laurent ring,
// computed with the subresultant polynomial-remainder sequence (fraction-free;
// all interior divisions are exact). Identically zero exactly when p and r
// share a common factor of positive lambda degree.
inline LaurentPoly resultant_lambda(const LaurentPoly& p, const LaurentPoly& r) {
  if (p.is_zero() || r.is_zero())
    throw std::invalid_argument("resultant_lambda: zero polynomial input");
  if (p.dim() != r.dim()) throw std::invalid_argument("resultant_lambda: dimension mismatch");
  detail::LambdaView A = detail::to_lambda_view(p);
  detail::LambdaView B = detail::to_lambda_view(r);
  if (A.deg() < 1 || B.deg() < 1)
    throw std::invalid_argument("resultant_lambda: lambda-degree 0 input");

  const int dim = p.dim();
  int sign = 1;
  if (A.deg() < B.deg()) {
    // transposition factor (-1)^{deg p * deg r}
    if ((A.deg() & 1) && (B.deg() & 1)) sign = -sign;
    std::swap(A, B);
  }
  LaurentPoly g = LaurentPoly::constant(dim, Cyclotomic(1));
  LaurentPoly h = g;

  while (B.deg() > 0) {
    int delta = A.deg() - B.deg();
    if ((A.deg() & 1) && (B.deg() & 1)) sign = -sign;
    detail::LambdaView R = detail::prem(A, B);
    A = std::move(B);
    LaurentPoly divisor = g;
    for (int i = 0; i < delta; ++i) divisor *= h;
    detail::LambdaView Bn{dim, {}};
    Bn.c.reserve(R.c.size());
    for (const auto& ci : R.c) Bn.c.push_back(exact_div(ci, divisor));
    Bn.trim();
    B = std::move(Bn);
    if (B.is_zero()) return LaurentPoly::zero(dim);
    g = A.lc();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      LaurentPoly num = LaurentPoly::constant(dim, Cyclotomic(1));
      for (int i = 0; i < delta; ++i) num *= g;
      LaurentPoly den = LaurentPoly::constant(dim, Cyclotomic(1));
      for (int i = 0; i < delta - 1; ++i) den *= h;
      h = exact_div(num, den);
    }
  }
  // B is a nonzero constant in lambda.
  const LaurentPoly& b0 = B.c[0];
  int dA = A.deg();
  LaurentPoly num = LaurentPoly::constant(dim, Cyclotomic(1));
  for (int i = 0; i < dA; ++i) num *= b0;
  LaurentPoly den = LaurentPoly::constant(dim, Cyclotomic(1));
  for (int i = 0; i < dA - 1; ++i) den *= h;
  LaurentPoly res = exact_div(num, den);
  return sign < 0 ? -res : res;
}

// Discriminant with respect to lambda: (-1)^{Q(Q-1)/2} Res(p, dp/dlambda)
// divided by the lambda-leading coefficient (required to be a nonzero
// constant). Identically zero exactly when p has a repeated lambda-dependent
// factor. For Q = 1 the discriminant is 1 by convention.
inline LaurentPoly discriminant_lambda(const LaurentPoly& p) {
  int Q = p.lambda_degree();
  if (Q < 1) throw std::invalid_argument("discriminant_lambda: lambda-degree 0 input");
  LaurentPoly lead = p.lambda_coefficient(Q);
  bool constant_lead = lead.term_count() == 1 && lead.terms().begin()->first.z ==
                                                     std::vector<int>(p.dim(), 0);
  if (!constant_lead)
    throw std::invalid_argument("discriminant_lambda: lambda-leading coefficient not constant");
  Cyclotomic lead_c = lead.terms().begin()->second;
  if (Q == 1) return LaurentPoly::constant(p.dim(), Cyclotomic(1));
  LaurentPoly res = resultant_lambda(p, p.lambda_derivative());
  LaurentPoly disc = res * lead_c.inverse();
  if ((static_cast<long>(Q) * (Q - 1) / 2) % 2 != 0) disc = -disc;
  return disc;
}

}  // namespace bloch
