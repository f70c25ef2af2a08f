// Acceptance suite: one test per criterion, each printing a [criterion N]
// pass/fail line with its runtime budget.

#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "bloch/band_grid.hpp"
#include "bloch/charpoly.hpp"
#include "bloch/report.hpp"
#include "bloch/statistics.hpp"
#include "bloch/variety_tests.hpp"
#include "support/oracles.hpp"

namespace bloch {
namespace {

using clock_type = std::chrono::steady_clock;

struct Stopwatch {
  clock_type::time_point start = clock_type::now();
  double seconds() const {
    return std::chrono::duration<double>(clock_type::now() - start).count();
  }
};

void report_line(int criterion, const std::string& what, bool pass, double secs, double budget) {
  std::printf("[criterion %d] %s: %s (%.3fs, budget %.0fs)\n", criterion, what.c_str(),
              pass ? "PASS" : "FAIL", secs, budget);
  std::fflush(stdout);
}

OperatorSpec schrodinger_spec(std::vector<int> q, std::vector<Rational> v, std::string name) {
  OperatorSpec spec;
  spec.kind = OperatorSpec::Kind::schrodinger;
  spec.dimension = static_cast<int>(q.size());
  spec.periods = std::move(q);
  spec.potential = std::move(v);
  spec.name = std::move(name);
  return spec;
}

std::vector<Rational> random_potential(std::mt19937_64& rng, const std::vector<int>& q) {
  int total = 1;
  for (int qj : q) total *= qj;
  std::vector<Rational> v;
  for (int i = 0; i < total; ++i) v.push_back(testutil::random_rational(rng));
  return v;
}

FloquetSymbol period_half_symbol() {
  FloquetSymbol sym(1, 2);
  LaurentPoly kinetic = LaurentPoly::variable(1, 0) + LaurentPoly::variable(1, 0, -1);
  sym.entry(0, 0) = kinetic;
  sym.entry(1, 1) = -kinetic;
  return sym;
}

// 1. Free-band decay law: rho(N) = 2/N exactly for N in {8,16,32,64}.
TEST(Acceptance, Criterion1FreeBandDecayLaw) {
  Stopwatch watch;
  auto spec = schrodinger_spec({1}, {Rational(0)}, "free_1d");
  auto sym = build_schrodinger_symbol(spec);
  auto series = decay_series(sym, {8, 16, 32, 64}, 1e-8);
  bool pass = series.rows.size() == 4;
  const double expected[] = {0.25, 0.125, 0.0625, 0.03125};
  for (size_t i = 0; i < series.rows.size(); ++i) {
    EXPECT_EQ(series.rows[i].sup_count, 2u);  // zero tolerance on counts
    EXPECT_EQ(series.rows[i].rho, expected[i]);
    pass = pass && series.rows[i].sup_count == 2u && series.rows[i].rho == expected[i];
  }
  double secs = watch.seconds();
  EXPECT_LT(secs, 1.0);
  report_line(1, "free-band decay law rho(N) = 2/N", pass, secs, 1);
}

// 2. q = (2), V = (1,-1): charpoly, squarefree witness, trivial period group,
//    C_alpha for every m != 0 with N <= 6, offset refutation with -Q a witness.
TEST(Acceptance, Criterion2SchrodingerFixture) {
  Stopwatch watch;
  auto spec = schrodinger_spec({2}, {Rational(1), Rational(-1)}, "schrodinger_q2");
  auto p = charpoly(build_schrodinger_symbol(spec));
  bool pass = true;

  LaurentPoly z = LaurentPoly::variable(1, 0);
  LaurentPoly zi = LaurentPoly::variable(1, 0, -1);
  LaurentPoly expected = LaurentPoly::lambda(1, 2) - LaurentPoly::constant(1, Cyclotomic(3)) - z - zi;
  EXPECT_EQ(p.poly, expected);
  pass = pass && p.poly == expected;

  auto sf = squarefree_test(p);
  LaurentPoly witness = LaurentPoly::constant(1, Cyclotomic(12)) + z * Cyclotomic(4) + zi * Cyclotomic(4);
  EXPECT_TRUE(sf.square_free);
  EXPECT_EQ(sf.witness, witness);
  pass = pass && sf.square_free && sf.witness == witness;

  auto cert = no_nontrivial_periods_certificate(p, true);
  EXPECT_EQ(cert.verdict, Verdict::holds);
  EXPECT_TRUE(cert.group.is_trivial());
  pass = pass && cert.verdict == Verdict::holds && cert.group.is_trivial();

  for (unsigned N = 2; N <= 6; ++N) {
    for (long m = 1; m < static_cast<long>(N); ++m) {
      auto r = c_alpha_test(p, {m}, N);
      EXPECT_TRUE(r.holds) << "m=" << m << " N=" << N;
      pass = pass && r.holds;
    }
  }

  for (Rational a : {Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2)}) {
    auto r = offset_test(p, a, {0}, 1);
    Cyclotomic expected_diff = Cyclotomic(-a) * Cyclotomic(p.Q);
    EXPECT_TRUE(r.refuted);
    EXPECT_EQ(r.difference, expected_diff);
    pass = pass && r.refuted && r.difference == expected_diff;
  }

  double secs = watch.seconds();
  EXPECT_LT(secs, 1.0);
  report_line(2, "q=(2) fixture: charpoly, squarefree, periods, C_alpha, offsets", pass, secs, 1);
}

// 3. Period-1/2 fixture: identically zero resultant at alpha = 1/2, support
//    group {0, 1/2}, rho(N) = 1 for every even N <= 32.
TEST(Acceptance, Criterion3PeriodHalfFixture) {
  Stopwatch watch;
  auto sym = period_half_symbol();
  auto p = charpoly(sym);
  bool pass = true;

  auto half = c_alpha_test(p, {1}, 2);
  EXPECT_FALSE(half.holds);
  EXPECT_EQ(half.method, Method::exact);
  EXPECT_NE(half.witness.find("identically zero"), std::string::npos);
  pass = pass && !half.holds && half.method == Method::exact;

  auto group = support_period_group(p.poly);
  EXPECT_FALSE(group.continuum);
  EXPECT_EQ(group.order, 2);
  EXPECT_TRUE(group.contains({Rational(1, 2)}));
  pass = pass && !group.continuum && group.order == 2;

  for (int N = 2; N <= 32; N += 2) {
    auto rep = overlap_statistic(sweep_grid(sym, N), 1e-8);
    EXPECT_EQ(rep.rho, 1.0) << "N=" << N;
    pass = pass && rep.rho == 1.0;
  }

  double secs = watch.seconds();
  EXPECT_LT(secs, 5.0);
  report_line(3, "period-1/2 fixture: C_{1/2} fails, group {0,1/2}, rho = 1", pass, secs, 5);
}

// 4. Dual/direct identity: exact polynomial equality and spectral agreement
//    for 20 random rational potentials with q in {(2), (3), (2,2)}.
TEST(Acceptance, Criterion4DualDirectOracle) {
  Stopwatch watch;
  std::mt19937_64 rng(2026);
  std::vector<std::vector<int>> qs = {{2}, {3}, {2, 2}};
  bool pass = true;
  for (int rep = 0; rep < 20; ++rep) {
    const auto& q = qs[static_cast<size_t>(rep) % qs.size()];
    auto spec = schrodinger_spec(q, random_potential(rng, q), "dual_oracle");
    auto result = dual_consistency_check(spec, 100, rng());
    EXPECT_TRUE(result.exact_equal) << "rep=" << rep;
    EXPECT_LE(result.max_eigenvalue_deviation, 1e-9) << "rep=" << rep;
    pass = pass && result.exact_equal && result.max_eigenvalue_deviation <= 1e-9;
  }
  double secs = watch.seconds();
  EXPECT_LT(secs, 30.0);
  report_line(4, "dual = direct under z -> z^q, 20 random potentials", pass, secs, 30);
}

// 5. Highest-degree component: product formula matches and moves under every
//    zeta(m,N) with zeta^q != 1, N <= 6.
TEST(Acceptance, Criterion5TopComponent) {
  Stopwatch watch;
  std::mt19937_64 rng(2027);
  std::vector<std::vector<int>> qs = {{1}, {2}, {3}, {2, 2}};
  bool pass = true;
  for (const auto& q : qs) {
    auto spec = schrodinger_spec(q, random_potential(rng, q), "top_component");
    auto result = top_component_check(spec, 6);
    EXPECT_TRUE(result.component_matches) << "q[0]=" << q[0];
    EXPECT_TRUE(result.shifts_distinct) << "q[0]=" << q[0];
    EXPECT_TRUE(result.violations.empty());
    pass = pass && result.pass();
  }
  double secs = watch.seconds();
  EXPECT_LT(secs, 10.0);
  report_line(5, "top component h matches and moves under shifts", pass, secs, 10);
}

// 6. End-to-end on q = (2,2): analyze-level verdict "no non-trivial periods"
//    and strictly decreasing rho over N in {4, 8, 16}.
TEST(Acceptance, Criterion6EndToEnd) {
  Stopwatch watch;
  std::mt19937_64 rng(2028);
  bool pass = true;
  for (int rep = 0; rep < 3; ++rep) {
    auto spec = schrodinger_spec({2, 2}, random_potential(rng, {2, 2}), "end_to_end");
    auto sym = build_schrodinger_symbol(spec);
    auto p = charpoly(sym);

    auto cert = no_nontrivial_periods_certificate(p, true);
    EXPECT_EQ(cert.verdict, Verdict::holds) << "rep=" << rep;
    pass = pass && cert.verdict == Verdict::holds;

    for (const auto& [m, N] : reduced_shifts(2, 6)) {
      auto r = c_alpha_test(p, m, N);
      EXPECT_TRUE(r.holds) << "rep=" << rep << " N=" << N;
      pass = pass && r.holds;
    }

    auto series = decay_series(sym, {4, 8, 16}, 1e-8, 2);
    ASSERT_EQ(series.rows.size(), 3u);
    EXPECT_LT(series.rows[1].rho, series.rows[0].rho) << "rep=" << rep;
    EXPECT_LT(series.rows[2].rho, series.rows[1].rho) << "rep=" << rep;
    EXPECT_LT(series.rows[2].rho, series.rows[0].rho) << "rep=" << rep;
    pass = pass && series.rows[2].rho < series.rows[1].rho &&
           series.rows[1].rho < series.rows[0].rho;
  }
  double secs = watch.seconds();
  EXPECT_LT(secs, 60.0);
  report_line(6, "q=(2,2) end-to-end: no periods + strictly decreasing rho", pass, secs, 60);
}

// 7. Numerical linear algebra floor: 1000 random Hermitian matrices.
TEST(Acceptance, Criterion7EigenSolverFloor) {
  Stopwatch watch;
  std::mt19937_64 rng(2029);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  bool pass = true;
  for (int rep = 0; rep < 1000; ++rep) {
    int n = 2 + static_cast<int>(rng() % 11);
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
      m.at(i, i) = {u(rng), 0.0};
      for (int j = i + 1; j < n; ++j) {
        std::complex<double> x(u(rng), u(rng));
        m.at(i, j) = x;
        m.at(j, i) = std::conj(x);
      }
    }
    auto eig = hermitian_eigenvalues(m);

    double sum = 0.0, sumsq = 0.0;
    for (double x : eig) {
      sum += x;
      sumsq += x * x;
    }
    double fro = m.frobenius_norm();
    double scale = std::max(1.0, fro);
    bool ok = std::abs(sum - m.trace().real()) / scale <= 1e-9 &&
              std::abs(sumsq - fro * fro) / (scale * scale) <= 1e-9;

    if (n == 2) {
      double mid = 0.5 * (m.at(0, 0).real() + m.at(1, 1).real());
      double rad = std::sqrt(0.25 * std::pow(m.at(0, 0).real() - m.at(1, 1).real(), 2) +
                             std::norm(m.at(0, 1)));
      ok = ok && std::abs(eig[0] - (mid - rad)) <= 1e-9 && std::abs(eig[1] - (mid + rad)) <= 1e-9;
    } else if (n == 3) {
      auto closed = testutil::hermitian3_eigenvalues(m.at(0, 0).real(), m.at(1, 1).real(),
                                                     m.at(2, 2).real(), m.at(0, 1), m.at(0, 2),
                                                     m.at(1, 2));
      for (int i = 0; i < 3; ++i) ok = ok && std::abs(eig[static_cast<size_t>(i)] - closed[static_cast<size_t>(i)]) <= 1e-8;
    }
    EXPECT_TRUE(ok) << "rep=" << rep << " n=" << n;
    pass = pass && ok;
  }
  double secs = watch.seconds();
  EXPECT_LT(secs, 10.0);
  report_line(7, "eigen solver floor on 1000 random Hermitian matrices", pass, secs, 10);
}

// 8. Determinism: byte-identical sweep artifacts for 1 and 4 workers.
TEST(Acceptance, Criterion8WorkerDeterminism) {
  Stopwatch watch;
  std::mt19937_64 rng(2028);  // the first criterion-6 potential
  auto spec = schrodinger_spec({2, 2}, random_potential(rng, {2, 2}), "determinism");
  auto sym = build_schrodinger_symbol(spec);

  auto g1 = sweep_grid(sym, 16, 1);
  auto g4 = sweep_grid(sym, 16, 4);
  std::ostringstream csv1, csv4;
  write_band_csv(g1, csv1);
  write_band_csv(g4, csv4);
  bool pass = csv1.str() == csv4.str();
  EXPECT_EQ(csv1.str(), csv4.str());

  auto r1 = overlap_statistic(g1, 1e-8, {1.0});
  auto r4 = overlap_statistic(g4, 1e-8, {1.0});
  std::string j1 = to_json(r1).dump();
  std::string j4 = to_json(r4).dump();
  pass = pass && j1 == j4;
  EXPECT_EQ(j1, j4);

  double secs = watch.seconds();
  EXPECT_LT(secs, 60.0);
  report_line(8, "sweep artifacts byte-identical for workers 1 and 4", pass, secs, 60);
}

}  // namespace
}  // namespace bloch
