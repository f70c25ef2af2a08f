// blochband: band overlap and period analysis for periodic graph operators.
//
// Subcommands:
//   validate  parse an operator spec, check its invariants, emit the canonical form
//   analyze   symbolic tests on the characteristic Laurent polynomial
//   sweep     band functions on a k-grid, CSV output plus overlap statistics
//   decay     overlap statistic across a doubling ladder of grid sizes
//
// Exit codes: 0 success, 2 parse error, 3 invariant violation,
//             4 period/overlap detected, 5 resource cap exceeded.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <thread>

#include "bloch/band_grid.hpp"
#include "bloch/charpoly.hpp"
#include "bloch/report.hpp"
#include "bloch/statistics.hpp"
#include "bloch/variety_tests.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitPeriod = 4;
constexpr int kExitResource = 5;

struct RunConfig {
  std::string input;
  std::string out;
  std::string report_path;
  std::string tests = "squarefree,c_alpha,periods,offset,top_component,dual_consistency";
  int N = 8;
  std::string n_range;
  double tau = 1e-8;
  std::string offsets = "1,-1,1/2,-1/2";
  int nmax_shifts = 6;
  int workers = 0;  // 0: hardware concurrency
  bool probabilistic = false;
  bool assume_irreducible = false;
  uint64_t seed = bloch::kDefaultSeed;
  long max_cells = 8000000;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

int effective_workers(const RunConfig& cfg) {
  if (cfg.workers > 0) return cfg.workers;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

bloch::FloquetSymbol build_symbol(const bloch::OperatorSpec& spec) {
  return spec.kind == bloch::OperatorSpec::Kind::schrodinger
             ? bloch::build_schrodinger_symbol(spec)
             : bloch::build_graph_symbol(spec);
}

long grid_cells(const bloch::OperatorSpec& spec, int N) {
  long cells = spec.q_total();
  for (int j = 0; j < spec.dimension; ++j) {
    if (cells > (1L << 62) / N) return -1;
    cells *= N;
  }
  return cells;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    bloch::atomic_write(path, content);
}

bloch::TestReport make_report(const RunConfig& cfg, const bloch::OperatorSpec& spec) {
  bloch::TestReport report;
  report.operator_id = spec.name;
  report.tool_version = bloch::kToolVersion;
  report.input_hash = bloch::hash_file(cfg.input);
  report.seed = cfg.seed;
  return report;
}

int run_validate(const RunConfig& cfg) {
  auto spec = bloch::OperatorSpec::parse_file(cfg.input);
  auto sym = build_symbol(spec);
  auto check = bloch::validate_hermitian(sym);
  if (!check.ok) {
    std::cerr << "invariant violation: symbol is not Hermitian at entry (" << check.i << ","
              << check.j << ")\n";
    return kExitInvariant;
  }
  std::cout << "ok: " << spec.name << " (kind "
            << (spec.kind == bloch::OperatorSpec::Kind::schrodinger ? "schrodinger" : "graph")
            << ", dimension " << spec.dimension << ", Q = " << spec.q_total() << ")\n";
  if (!cfg.out.empty()) emit(cfg.out, spec.to_json().dump(2) + "\n");
  return kExitOk;
}

int run_analyze(const RunConfig& cfg) {
  auto spec = bloch::OperatorSpec::parse_file(cfg.input);
  auto sym = build_symbol(spec);
  auto check = bloch::validate_hermitian(sym);
  if (!check.ok) {
    std::cerr << "invariant violation: symbol is not Hermitian at entry (" << check.i << ","
              << check.j << ")\n";
    return kExitInvariant;
  }
  bloch::CharPoly p = bloch::charpoly(sym);

  bloch::VarietyTestOptions opts;
  opts.force_probabilistic = cfg.probabilistic;
  opts.seed = cfg.seed;
  opts.shift_sweep_nmax = cfg.nmax_shifts;

  bool schrodinger = spec.kind == bloch::OperatorSpec::Kind::schrodinger;
  bool irreducible_asserted = schrodinger || cfg.assume_irreducible;

  std::vector<std::string> selected = split(cfg.tests, ',');
  auto want = [&](const std::string& name) {
    for (const auto& s : selected)
      if (s == name) return true;
    return false;
  };

  bloch::TestReport report = make_report(cfg, spec);
  {
    bloch::TestRecord rec;
    rec.name = "charpoly";
    rec.verdict = bloch::Verdict::holds;
    rec.witness = bloch::detail::render_capped(p.poly, 2000);
    report.tests.push_back(std::move(rec));
  }

  if (want("squarefree")) {
    auto sf = bloch::squarefree_test(p, opts);
    bloch::TestRecord rec;
    rec.name = "squarefree";
    rec.verdict = sf.square_free ? bloch::Verdict::holds : bloch::Verdict::fails;
    rec.method = sf.method;
    rec.witness = sf.witness_text;
    rec.probabilistic_bound = sf.probabilistic_bound;
    report.tests.push_back(std::move(rec));
  }

  if (want("c_alpha")) {
    for (const auto& [m, N] : bloch::reduced_shifts(spec.dimension, cfg.nmax_shifts)) {
      auto r = bloch::c_alpha_test(p, m, N, opts);
      bloch::TestRecord rec;
      rec.name = "c_alpha(" + bloch::detail::shift_str(m, N) + ")";
      rec.verdict = r.holds ? bloch::Verdict::holds : bloch::Verdict::fails;
      rec.method = r.method;
      rec.witness = r.witness;
      rec.probabilistic_bound = r.probabilistic_bound;
      report.tests.push_back(std::move(rec));
    }
  }

  if (want("periods")) {
    auto cert = bloch::no_nontrivial_periods_certificate(p, irreducible_asserted, opts);
    bloch::TestRecord rec;
    rec.name = "no_nontrivial_periods";
    rec.verdict = cert.verdict;
    rec.witness = cert.witness;
    rec.conditional = cert.conditional;
    if (cert.conditional)
      rec.note = "conditional on irreducibility; finite shift sweep attached as evidence";
    report.tests.push_back(std::move(rec));
    for (const auto& r : cert.sweep) {
      bloch::TestRecord ev;
      ev.name = "periods_evidence(" + bloch::detail::shift_str(r.m, r.N) + ")";
      ev.verdict = r.holds ? bloch::Verdict::holds : bloch::Verdict::fails;
      ev.method = r.method;
      ev.witness = r.witness;
      ev.probabilistic_bound = r.probabilistic_bound;
      report.tests.push_back(std::move(ev));
    }
  }

  if (want("offset")) {
    for (const auto& text : split(cfg.offsets, ',')) {
      bloch::Rational a = bloch::Rational::parse(text);
      auto r = bloch::offset_test(p, a, std::vector<long>(spec.dimension, 0), 1);
      bloch::TestRecord rec;
      rec.name = "offset(" + a.str() + ")";
      rec.verdict = r.refuted ? bloch::Verdict::holds : bloch::Verdict::fails;
      rec.witness = "constant terms " + r.base_const.str() + " vs " + r.shifted_const.str() +
                    ", difference " + r.difference.str() + " = -Q*a";
      report.tests.push_back(std::move(rec));
    }
  }

  if (schrodinger && want("top_component")) {
    auto r = bloch::top_component_check(spec, cfg.nmax_shifts);
    bloch::TestRecord rec;
    rec.name = "top_component";
    rec.verdict = r.pass() ? bloch::Verdict::holds : bloch::Verdict::fails;
    rec.witness = r.pass() ? "h = " + bloch::detail::render_capped(r.h, 2000)
                           : (r.component_matches ? "invariant shift found for h"
                                                  : "highest-degree component mismatch");
    report.tests.push_back(std::move(rec));
  }

  if (schrodinger && want("dual_consistency")) {
    auto r = bloch::dual_consistency_check(spec, 100, cfg.seed);
    bloch::TestRecord rec;
    rec.name = "dual_consistency";
    rec.verdict = r.pass() ? bloch::Verdict::holds : bloch::Verdict::fails;
    std::ostringstream os;
    os << "exact identity " << (r.exact_equal ? "holds" : "fails")
       << ", max spectral deviation " << r.max_eigenvalue_deviation << " over " << r.samples
       << " samples";
    rec.witness = os.str();
    report.tests.push_back(std::move(rec));
  }

  std::string body = bloch::to_json(report).dump(2) + "\n";
  if (!cfg.out.empty()) emit(cfg.out, body);
  for (const auto& t : report.tests)
    std::cout << t.name << ": " << bloch::to_string(t.verdict)
              << (t.conditional ? " (conditional)" : "") << "\n";
  return report.all_hold() ? kExitOk : kExitPeriod;
}

int run_sweep(const RunConfig& cfg) {
  auto spec = bloch::OperatorSpec::parse_file(cfg.input);
  long cells = grid_cells(spec, cfg.N);
  if (cells < 0 || cells > cfg.max_cells) {
    std::cerr << "resource cap: N^d * Q = " << (cells < 0 ? std::string("overflow")
                                                          : std::to_string(cells))
              << " exceeds --max-cells = " << cfg.max_cells << "\n";
    return kExitResource;
  }
  auto sym = build_symbol(spec);
  auto check = bloch::validate_hermitian(sym);
  if (!check.ok) {
    std::cerr << "invariant violation: symbol is not Hermitian\n";
    return kExitInvariant;
  }
  auto grid = bloch::sweep_grid(sym, cfg.N, effective_workers(cfg));
  std::ostringstream csv;
  bloch::write_band_csv(grid, csv);
  emit(cfg.out, csv.str());

  std::vector<double> offset_targets;
  for (const auto& text : split(cfg.offsets, ','))
    offset_targets.push_back(bloch::Rational::parse(text).to_double());
  auto rep = bloch::overlap_statistic(grid, cfg.tau, offset_targets);
  nlohmann::json j = bloch::to_json(rep);
  j["operator"] = spec.name;
  j["tool_version"] = bloch::kToolVersion;
  j["input_hash"] = bloch::hash_file(cfg.input);
  if (!cfg.report_path.empty()) emit(cfg.report_path, j.dump(2) + "\n");
  std::cerr << "N = " << cfg.N << ", rho = " << rep.rho << " (sup count " << rep.sup_count
            << ")\n";
  return kExitOk;
}

int run_decay(const RunConfig& cfg) {
  auto spec = bloch::OperatorSpec::parse_file(cfg.input);
  std::vector<int> Ns;
  if (!cfg.n_range.empty()) {
    auto parts = split(cfg.n_range, ':');
    if (parts.size() != 2) {
      std::cerr << "parse error: --N-range expects \"a:b\" (doubling ladder)\n";
      return kExitParse;
    }
    int a = std::stoi(parts[0]);
    int b = std::stoi(parts[1]);
    if (a < 1 || b < a) {
      std::cerr << "parse error: --N-range bounds must satisfy 1 <= a <= b\n";
      return kExitParse;
    }
    for (int n = a; n <= b; n *= 2) Ns.push_back(n);
  } else {
    Ns.push_back(cfg.N);
  }
  for (int n : Ns) {
    long cells = grid_cells(spec, n);
    if (cells < 0 || cells > cfg.max_cells) {
      std::cerr << "resource cap: N = " << n << " needs N^d * Q > --max-cells = "
                << cfg.max_cells << "\n";
      return kExitResource;
    }
  }
  auto sym = build_symbol(spec);
  auto check = bloch::validate_hermitian(sym);
  if (!check.ok) {
    std::cerr << "invariant violation: symbol is not Hermitian\n";
    return kExitInvariant;
  }
  auto series = bloch::decay_series(sym, Ns, cfg.tau, effective_workers(cfg));
  emit(cfg.out, bloch::decay_csv(series));
  nlohmann::json j = bloch::to_json(series);
  j["operator"] = spec.name;
  j["tool_version"] = bloch::kToolVersion;
  j["input_hash"] = bloch::hash_file(cfg.input);
  if (!cfg.report_path.empty()) emit(cfg.report_path, j.dump(2) + "\n");
  for (const auto& row : series.rows)
    std::cerr << "N = " << row.N << ", rho = " << row.rho << "\n";
  if (series.non_decaying_suspected) {
    std::cerr << "non-decaying: period suspected (cross-check with `analyze`)\n";
    return kExitPeriod;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"band overlap and period analysis for periodic graph operators"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", cfg.input, "operator spec file (JSON)")->required();
    cmd->add_option("--seed", cfg.seed, "seed for randomized paths");
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and validate an operator spec");
  add_common(validate);
  validate->add_option("--out", cfg.out, "write the canonical spec here");

  CLI::App* analyze = app.add_subcommand("analyze", "symbolic variety tests");
  add_common(analyze);
  analyze->add_option("--out", cfg.out, "write the JSON test report here");
  analyze->add_option("--tests", cfg.tests, "comma list of tests to run");
  analyze->add_option("--Nmax-shifts", cfg.nmax_shifts, "largest shift denominator in sweeps");
  analyze->add_option("--offsets", cfg.offsets, "comma list of rational offsets a");
  analyze->add_flag("--probabilistic", cfg.probabilistic, "force the sampled evaluator path");
  analyze->add_flag("--assume-irreducible", cfg.assume_irreducible,
                    "assert irreducibility for graph operators");

  CLI::App* sweep = app.add_subcommand("sweep", "band functions on one grid");
  add_common(sweep);
  sweep->add_option("--N", cfg.N, "grid resolution per axis");
  sweep->add_option("--out", cfg.out, "band CSV path (default: stdout)");
  sweep->add_option("--report", cfg.report_path, "overlap report JSON path");
  sweep->add_option("--tau", cfg.tau, "coincidence tolerance");
  sweep->add_option("--offsets", cfg.offsets, "comma list of rational offsets a");
  sweep->add_option("--workers", cfg.workers, "worker threads (default: hardware)");
  sweep->add_option("--max-cells", cfg.max_cells, "refuse grids with N^d*Q beyond this");

  CLI::App* decay = app.add_subcommand("decay", "overlap decay across grid sizes");
  add_common(decay);
  decay->add_option("--N-range", cfg.n_range, "doubling ladder a:b");
  decay->add_option("--N", cfg.N, "single grid size (if no range)");
  decay->add_option("--out", cfg.out, "decay table CSV path (default: stdout)");
  decay->add_option("--report", cfg.report_path, "decay report JSON path");
  decay->add_option("--tau", cfg.tau, "coincidence tolerance");
  decay->add_option("--workers", cfg.workers, "worker threads (default: hardware)");
  decay->add_option("--max-cells", cfg.max_cells, "refuse grids with N^d*Q beyond this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (validate->parsed()) return run_validate(cfg);
    if (analyze->parsed()) return run_analyze(cfg);
    if (sweep->parsed()) return run_sweep(cfg);
    if (decay->parsed()) return run_decay(cfg);
  } catch (const bloch::SpecParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const bloch::SpecInvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}
