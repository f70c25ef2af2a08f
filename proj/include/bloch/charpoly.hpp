#pragma once

#include "bloch/floquet.hpp"

namespace bloch {

/// det(A(z) - lambda I): Laurent polynomial in z, degree Q in lambda with
/// leading coefficient exactly (-1)^Q. Implicitly represents the Bloch variety.
struct CharPoly {
  LaurentPoly poly;
  int Q = 0;
};

namespace detail {

using PolyMatrix = std::vector<LaurentPoly>;  // Q x Q row-major

inline PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b, int Q, int dim) {
  PolyMatrix out(static_cast<size_t>(Q) * Q, LaurentPoly(dim));
  for (int i = 0; i < Q; ++i)
    for (int k = 0; k < Q; ++k) {
      const LaurentPoly& aik = a[static_cast<size_t>(i) * Q + k];
      if (aik.is_zero()) continue;
      for (int j = 0; j < Q; ++j) {
        const LaurentPoly& bkj = b[static_cast<size_t>(k) * Q + j];
        if (bkj.is_zero()) continue;
        out[static_cast<size_t>(i) * Q + j] += aik * bkj;
      }
    }
  return out;
}

}  // namespace detail

// Exact characteristic polynomial via the Faddeev-LeVerrier trace recursion
// (divisions by 1..Q only, which are exact over the coefficient field).
inline CharPoly charpoly(const FloquetSymbol& sym) {
  HermitianCheck check = validate_hermitian(sym);
  if (!check.ok)
    throw std::invalid_argument("charpoly: symbol is not Hermitian at entry (" +
                                std::to_string(check.i) + "," + std::to_string(check.j) + ")");
  const int Q = sym.size();
  const int d = sym.dim();

  detail::PolyMatrix A(static_cast<size_t>(Q) * Q, LaurentPoly(d));
  for (int i = 0; i < Q; ++i)
    for (int j = 0; j < Q; ++j) A[static_cast<size_t>(i) * Q + j] = sym.entry(i, j);

  // det(lambda I - A) = lambda^Q + a_1 lambda^{Q-1} + ... + a_Q
  std::vector<LaurentPoly> a(static_cast<size_t>(Q) + 1, LaurentPoly(d));
  detail::PolyMatrix M = A;
  for (int k = 1; k <= Q; ++k) {
    if (k > 1) {
      // M <- A (M + a_{k-1} I)
      detail::PolyMatrix shifted = M;
      for (int i = 0; i < Q; ++i) shifted[static_cast<size_t>(i) * Q + i] += a[k - 1];
      M = detail::mat_mul(A, shifted, Q, d);
    }
    LaurentPoly tr(d);
    for (int i = 0; i < Q; ++i) tr += M[static_cast<size_t>(i) * Q + i];
    a[k] = tr * Cyclotomic(Rational(-1, k));
  }

  LaurentPoly p = LaurentPoly::lambda(d, Q);
  for (int k = 1; k <= Q; ++k) {
    for (const auto& [e, c] : a[k].terms()) {
      ExponentVec ne = e;
      ne.lam = Q - k;
      p.add_term(ne, c);
    }
  }
  if (Q % 2 != 0) p = -p;  // det(A - lambda I) = (-1)^Q det(lambda I - A)

  CharPoly out{std::move(p), Q};
  LaurentPoly lead = out.poly.lambda_coefficient(Q);
  LaurentPoly expect = LaurentPoly::constant(d, Cyclotomic(Q % 2 == 0 ? 1 : -1));
  if (lead != expect)
    throw std::logic_error("charpoly: lambda-leading coefficient is not (-1)^Q");
  return out;
}

}  // namespace bloch
