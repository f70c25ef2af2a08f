#pragma once

#include <numbers>
#include <optional>

#include "bloch/cmatrix.hpp"
#include "bloch/laurent.hpp"
#include "bloch/operator_spec.hpp"

namespace bloch {

/// Q x Q matrix of lambda-free Laurent polynomials in z_1..z_d. On the unit
/// torus the evaluated matrix is Hermitian.
class FloquetSymbol {
 public:
  FloquetSymbol(int dim, int size)
      : dim_(dim), size_(size),
        entries_(static_cast<size_t>(size) * size, LaurentPoly(dim)) {}

  int dim() const { return dim_; }
  int size() const { return size_; }
  const LaurentPoly& entry(int i, int j) const {
    return entries_[static_cast<size_t>(i) * size_ + j];
  }
  LaurentPoly& entry(int i, int j) { return entries_[static_cast<size_t>(i) * size_ + j]; }

  LaurentPoly trace() const {
    LaurentPoly t(dim_);
    for (int i = 0; i < size_; ++i) t += entry(i, i);
    return t;
  }

 private:
  int dim_;
  int size_;
  std::vector<LaurentPoly> entries_;
};

namespace detail {

// conj-coefficients with z -> z^{-1}; the algebraic adjoint of a symbol entry
inline LaurentPoly conj_reciprocal(const LaurentPoly& p) {
  LaurentPoly out(p.dim());
  for (const auto& [e, c] : p.terms()) {
    ExponentVec ne = e;
    for (auto& v : ne.z) v = -v;
    out.add_term(ne, c.conj());
  }
  return out;
}

}  // namespace detail

struct HermitianCheck {
  bool ok = true;
  int i = -1, j = -1;  // first violating entry when !ok
};

// Entrywise algebraic condition entry(i,j)(z) == conj-coeffs(entry(j,i))(z^-1),
// which makes the evaluated matrix Hermitian on the whole torus.
inline HermitianCheck validate_hermitian(const FloquetSymbol& sym) {
  for (int i = 0; i < sym.size(); ++i)
    for (int j = 0; j < sym.size(); ++j)
      if (sym.entry(i, j) != detail::conj_reciprocal(sym.entry(j, i))) return {false, i, j};
  return {};
}

// Floquet symbol of Delta + V on Z^d with the quasi-periodic boundary
// condition u(n + q_j e_j) = z_j u(n), on the row-major fundamental-domain
// basis. Wrapping contributions are summed, so q_j = 1 produces z_j + z_j^-1
// on the diagonal and q_j = 2 produces 1 + z_j^{+-1} entries.
inline FloquetSymbol build_schrodinger_symbol(const OperatorSpec& spec) {
  if (spec.kind != OperatorSpec::Kind::schrodinger)
    throw std::invalid_argument("build_schrodinger_symbol: spec kind is not schrodinger");
  const int d = spec.dimension;
  detail::DomainIndexer dom(spec.periods);
  if (static_cast<int>(spec.potential.size()) != dom.total)
    throw SpecInvariantError("potential table size does not match the fundamental domain");
  FloquetSymbol sym(d, dom.total);
  for (int row = 0; row < dom.total; ++row) {
    auto n = dom.decode(row);
    sym.entry(row, row) += LaurentPoly::constant(d, Cyclotomic(spec.potential[row]));
    for (int j = 0; j < d; ++j) {
      for (int step : {+1, -1}) {
        auto nb = n;
        nb[j] += step;
        int wrap = 0;
        if (nb[j] < 0) {
          nb[j] += spec.periods[j];
          wrap = -1;
        } else if (nb[j] >= spec.periods[j]) {
          nb[j] -= spec.periods[j];
          wrap = +1;
        }
        int col = dom.encode(nb);
        std::vector<int> ze(d, 0);
        ze[j] = wrap;
        sym.entry(row, col) += LaurentPoly::monomial(d, ze, 0, Cyclotomic(1));
      }
    }
  }
  return sym;
}

// entry(u, v) = sum over edges (u, v, s, w) of w z^s, plus onsite(u) on the
// diagonal. The Hermitian pairing invariant is re-checked here.
inline FloquetSymbol build_graph_symbol(const OperatorSpec& spec) {
  if (spec.kind != OperatorSpec::Kind::graph)
    throw std::invalid_argument("build_graph_symbol: spec kind is not graph");
  if (auto bad = find_hermitian_violation(spec))
    throw SpecInvariantError("missing conjugate partner for edge " + detail::edge_str(*bad));
  FloquetSymbol sym(spec.dimension, spec.vertex_count);
  for (const auto& e : spec.edges)
    sym.entry(e.from, e.to) += LaurentPoly::monomial(spec.dimension, e.shift, 0, e.weight);
  for (const auto& [v, r] : spec.onsite)
    sym.entry(v, v) += LaurentPoly::constant(spec.dimension, Cyclotomic(r));
  return sym;
}

/// Discrete Fourier transform of the potential over the fundamental domain,
/// with coefficients in the cyclotomic order lcm(q).
struct PotentialSpectrumTable {
  std::vector<int> periods;
  std::vector<Cyclotomic> vhat;  // row-major over residues

  const Cyclotomic& at(const std::vector<int>& m) const {
    detail::DomainIndexer dom(periods);
    std::vector<int> r(m.size());
    for (size_t j = 0; j < m.size(); ++j) {
      r[j] = m[j] % periods[j];
      if (r[j] < 0) r[j] += periods[j];
    }
    return vhat[static_cast<size_t>(dom.encode(r))];
  }
};

// Vhat(m) = (1/Q) sum_n V(n) omega^{-n.m}, omega the componentwise primitive
// q_j-th roots; the normalization is the one under which the dual symbol is
// unitarily equivalent to the direct one.
inline PotentialSpectrumTable dft_potential(const OperatorSpec& spec) {
  if (spec.kind != OperatorSpec::Kind::schrodinger)
    throw std::invalid_argument("dft_potential: spec kind is not schrodinger");
  detail::DomainIndexer dom(spec.periods);
  unsigned L = 1;
  for (int q : spec.periods) L = lcm_order(L, static_cast<unsigned>(q));
  PotentialSpectrumTable table;
  table.periods = spec.periods;
  table.vhat.assign(static_cast<size_t>(dom.total), Cyclotomic::zero(L));
  Rational inv_q(1, dom.total);
  for (int mi = 0; mi < dom.total; ++mi) {
    auto m = dom.decode(mi);
    Cyclotomic acc = Cyclotomic::zero(L);
    for (int ni = 0; ni < dom.total; ++ni) {
      if (spec.potential[static_cast<size_t>(ni)].is_zero()) continue;
      auto n = dom.decode(ni);
      long e = 0;
      for (size_t j = 0; j < n.size(); ++j)
        e += static_cast<long>(L / static_cast<unsigned>(spec.periods[j])) * n[j] * m[j];
      acc += Cyclotomic(spec.potential[static_cast<size_t>(ni)]) *
             Cyclotomic::root_of_unity(L, -e);
    }
    table.vhat[static_cast<size_t>(mi)] = acc * inv_q;
  }
  return table;
}

// Dual form B_0 + B_V of the Schrodinger symbol: diagonal kinetic part over
// the root-of-unity ladder rho^j_{n_j} z_j + 1/(rho^j_{n_j} z_j), potential as
// the Fourier table off the diagonal.
inline FloquetSymbol build_dual_symbol(const OperatorSpec& spec) {
  if (spec.kind != OperatorSpec::Kind::schrodinger)
    throw std::invalid_argument("build_dual_symbol: spec kind is not schrodinger");
  const int d = spec.dimension;
  detail::DomainIndexer dom(spec.periods);
  PotentialSpectrumTable vhat = dft_potential(spec);
  FloquetSymbol sym(d, dom.total);
  for (int row = 0; row < dom.total; ++row) {
    auto n = dom.decode(row);
    LaurentPoly diag(d);
    for (int j = 0; j < d; ++j) {
      unsigned qj = static_cast<unsigned>(spec.periods[j]);
      Cyclotomic rho = Cyclotomic::root_of_unity(qj, n[j]);
      std::vector<int> up(d, 0), down(d, 0);
      up[j] = 1;
      down[j] = -1;
      diag += LaurentPoly::monomial(d, up, 0, rho);
      diag += LaurentPoly::monomial(d, down, 0, rho.conj());
    }
    sym.entry(row, row) += diag;
    for (int col = 0; col < dom.total; ++col) {
      auto np = dom.decode(col);
      std::vector<int> delta(n.size());
      for (size_t j = 0; j < n.size(); ++j) delta[j] = n[j] - np[j];
      Cyclotomic w = vhat.at(delta);
      if (!w.is_zero()) sym.entry(row, col) += LaurentPoly::constant(d, w);
    }
  }
  return sym;
}

// Numeric matrix at z_j = e^{2 pi i k_j}, symmetrized exactly by averaging
// with its conjugate transpose.
inline ComplexMatrix eval_symbol(const FloquetSymbol& sym, std::span<const double> k) {
  if (static_cast<int>(k.size()) != sym.dim())
    throw std::invalid_argument("eval_symbol: k dimension mismatch");
  std::vector<std::complex<double>> z(k.size());
  for (size_t j = 0; j < k.size(); ++j)
    z[j] = std::polar(1.0, 2.0 * std::numbers::pi * k[j]);
  ComplexMatrix m(sym.size());
  for (int i = 0; i < sym.size(); ++i)
    for (int j = 0; j < sym.size(); ++j) m.at(i, j) = sym.entry(i, j).eval(z, {0.0, 0.0});
  return m.symmetrized();
}

}  // namespace bloch
