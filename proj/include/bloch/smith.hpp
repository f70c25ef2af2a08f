#pragma once

#include <vector>

#include "bloch/laurent.hpp"

namespace bloch {

struct SmithNormalForm {
  int rank = 0;
  std::vector<mpz_class> divisors;             // d_1 | d_2 | ... | d_rank, positive
  std::vector<std::vector<mpz_class>> V;       // column transform, M*V-compatible, cols x cols
  std::vector<std::vector<mpz_class>> V_inv;   // inverse of V
};

// Smith normal form of an integer matrix (rows x cols). Row operations are
// applied freely; column operations are accumulated into V and V_inv so that
// the diagonal form equals U * M * V for some unimodular U.
inline SmithNormalForm smith_normal_form(std::vector<std::vector<mpz_class>> M, int cols) {
  const int rows = static_cast<int>(M.size());
  SmithNormalForm out;
  out.V.assign(cols, std::vector<mpz_class>(cols, 0));
  out.V_inv.assign(cols, std::vector<mpz_class>(cols, 0));
  for (int i = 0; i < cols; ++i) out.V[i][i] = out.V_inv[i][i] = 1;

  auto swap_cols = [&](int a, int b) {
    for (int i = 0; i < rows; ++i) std::swap(M[i][a], M[i][b]);
    for (int i = 0; i < cols; ++i) std::swap(out.V[i][a], out.V[i][b]);
    std::swap(out.V_inv[a], out.V_inv[b]);
  };
  // col_j -= q * col_t  (V_inv row_t += q * row_j)
  auto addmul_col = [&](int j, int t, const mpz_class& q) {
    for (int i = 0; i < rows; ++i) M[i][j] -= q * M[i][t];
    for (int i = 0; i < cols; ++i) out.V[i][j] -= q * out.V[i][t];
    for (int i = 0; i < cols; ++i) out.V_inv[t][i] += q * out.V_inv[j][i];
  };

  int t = 0;
  while (t < rows && t < cols) {
    // locate a minimal nonzero entry in the trailing submatrix
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (M[i][j] != 0 && (pi < 0 || abs(M[i][j]) < abs(M[pi][pj]))) { pi = i; pj = j; }
    if (pi < 0) break;
    std::swap(M[t], M[pi]);
    if (pj != t) swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (M[i][t] == 0) continue;
        mpz_class q = M[i][t] / M[t][t];
        for (int j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
        if (M[i][t] != 0) {
          // remainder became the smaller pivot candidate
          std::swap(M[t], M[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (M[t][j] == 0) continue;
        mpz_class q = M[t][j] / M[t][t];
        addmul_col(j, t, q);
        if (M[t][j] != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
    }
    // pivot must divide the rest of the submatrix for the divisor chain
    bool restart = false;
    for (int i = t + 1; i < rows && !restart; ++i)
      for (int j = t + 1; j < cols && !restart; ++j)
        if (M[i][j] % M[t][t] != 0) {
          for (int jj = t; jj < cols; ++jj) M[t][jj] += M[i][jj];
          restart = true;
        }
    if (restart) continue;
    if (M[t][t] < 0)
      for (int j = t; j < cols; ++j) M[t][j] = -M[t][j];
    out.divisors.push_back(M[t][t]);
    ++t;
  }
  out.rank = static_cast<int>(out.divisors.size());
  return out;
}

/// Finite (or continuum-degenerate) group of rational torus shifts alpha in
/// Q^d mod Z^d fixing a Laurent polynomial under z -> zeta (.) z with
/// zeta_j = e^{2 pi i alpha_j}.
struct PeriodGroup {
  int dim = 0;
  bool continuum = false;  // support exponents do not span Q^d
  mpz_class order = 1;     // product of elementary divisors (finite part)
  std::vector<std::vector<Rational>> generators;  // entries reduced mod 1
  std::vector<mpz_class> generator_orders;
  std::vector<std::vector<mpz_class>> lattice_rows;  // membership constraints

  bool is_trivial() const { return !continuum && order == 1; }

  // alpha is in the group iff <row, alpha> is an integer for every lattice row.
  bool contains(const std::vector<Rational>& alpha) const {
    if (static_cast<int>(alpha.size()) != dim)
      throw std::invalid_argument("PeriodGroup::contains: dimension mismatch");
    for (const auto& row : lattice_rows) {
      Rational dot(0);
      for (int j = 0; j < dim; ++j) dot += Rational(row[j]) * alpha[j];
      if (!dot.is_integer()) return false;
    }
    return true;
  }

  // Enumerates all elements of the finite group (throws when continuum).
  std::vector<std::vector<Rational>> elements(size_t cap = 65536) const {
    if (continuum) throw std::domain_error("PeriodGroup: continuum of periods");
    if (order > static_cast<long>(cap)) throw std::domain_error("PeriodGroup: too large");
    std::vector<std::vector<Rational>> out;
    out.push_back(std::vector<Rational>(dim, Rational(0)));
    for (size_t g = 0; g < generators.size(); ++g) {
      size_t base = out.size();
      std::vector<Rational> acc(dim, Rational(0));
      for (mpz_class k = 1; k < generator_orders[g]; ++k) {
        for (int j = 0; j < dim; ++j) acc[j] = (acc[j] + generators[g][j]).mod_one();
        for (size_t i = 0; i < base; ++i) {
          std::vector<Rational> e(dim);
          for (int j = 0; j < dim; ++j) e[j] = (out[i][j] + acc[j]).mod_one();
          out.push_back(std::move(e));
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

// Group of all torus shifts fixing P exactly: P(zeta (.) z, lambda) == P iff
// zeta^n = 1 for every z-exponent n in the support, solved with the Smith
// normal form of the support matrix. When the support does not span Q^d the
// invariance set is a positive-dimensional subgroup, flagged as `continuum`.
inline PeriodGroup support_period_group(const LaurentPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("support_period_group: zero polynomial");
  const int d = p.dim();
  auto support = p.support_zexponents();
  std::vector<std::vector<mpz_class>> M;
  M.reserve(support.size());
  for (const auto& n : support) {
    std::vector<mpz_class> row(d);
    bool all_zero = true;
    for (int j = 0; j < d; ++j) {
      row[j] = n[j];
      all_zero = all_zero && n[j] == 0;
    }
    if (!all_zero) M.push_back(std::move(row));
  }

  PeriodGroup g;
  g.dim = d;
  if (M.empty()) {
    // constant-in-z polynomial: every shift fixes it
    g.continuum = d > 0;
    return g;
  }
  SmithNormalForm snf = smith_normal_form(std::move(M), d);
  g.continuum = snf.rank < d;
  for (int i = 0; i < snf.rank; ++i) {
    g.order *= snf.divisors[i];
    std::vector<mpz_class> row(d);
    for (int j = 0; j < d; ++j) row[j] = snf.divisors[i] * snf.V_inv[i][j];
    g.lattice_rows.push_back(std::move(row));
    if (snf.divisors[i] > 1) {
      std::vector<Rational> gen(d);
      for (int j = 0; j < d; ++j)
        gen[j] = Rational(mpq_class(snf.V[j][i], snf.divisors[i])).mod_one();
      g.generators.push_back(std::move(gen));
      g.generator_orders.push_back(snf.divisors[i]);
    }
  }
  return g;
}

}  // namespace bloch
