#pragma once

#include <cmath>

#include "bloch/band_grid.hpp"

namespace bloch {

/// Per band pair (s, w): coincidence counts for every grid shift m.
struct PairShiftCounts {
  int s = 0;  // 1-based band labels
  int w = 0;
  std::vector<uint32_t> counts;  // indexed by flattened m (m = 0 included)
  uint32_t sup = 0;              // max over m != 0
  size_t argmax_m = 0;
};

struct OffsetSlice {
  double a = 0.0;
  double tau = 0.0;
  uint64_t sup_count = 0;  // max over all (s, w, m), m = 0 included
  int s = 0, w = 0;
  size_t argmax_m = 0;
  uint64_t total = 0;
};

struct OverlapReport {
  int d = 0, N = 1, Q = 0;
  double tau = 0.0;
  std::vector<PairShiftCounts> pairs;  // Q^2 entries, counts at tau

  // sup over m != 0 and all band pairs of count / N^d, at tau and at the
  // sensitivity tolerances tau/10 and 10 tau
  double rho = 0.0, rho_tau_low = 0.0, rho_tau_high = 0.0;
  uint64_t sup_count = 0, sup_count_low = 0, sup_count_high = 0;
  int sup_s = 0, sup_w = 0;
  size_t sup_m = 0;

  uint64_t degeneracy_count = 0;  // S2 estimator: points with a near-degenerate pair
  double degeneracy_fraction = 0.0;

  std::vector<OffsetSlice> offsets;
};

// Fraction of grid points where two distinct bands are within tau. Band values
// are sorted, so the minimal pair gap is the minimal adjacent gap.
inline double degeneracy_statistic(const BandGrid& grid, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("degeneracy_statistic: tau must be positive");
  const size_t total = grid.points();
  uint64_t count = 0;
  for (size_t r = 0; r < total; ++r) {
    const double* v = grid.at(r);
    for (int b = 0; b + 1 < grid.Q; ++b) {
      if (std::abs(v[b + 1] - v[b]) <= tau) {
        ++count;
        break;
      }
    }
  }
  return static_cast<double>(count) / static_cast<double>(total);
}

namespace detail {

inline size_t wrapped_index(const BandGrid& grid, const std::vector<int>& r,
                            const std::vector<int>& m) {
  size_t idx = 0;
  for (int j = 0; j < grid.d; ++j) {
    int c = r[static_cast<size_t>(j)] + m[static_cast<size_t>(j)];
    if (c >= grid.N) c -= grid.N;
    idx = idx * static_cast<size_t>(grid.N) + static_cast<size_t>(c);
  }
  return idx;
}

}  // namespace detail

// Counts with a nonzero difference target a: |lambda^s((r+m)/N) - lambda^w(r/N) - a| <= tau,
// over all band pairs and every m including m = 0.
inline OffsetSlice offset_statistic(const BandGrid& grid, double a, double tau) {
  if (a == 0.0) throw std::invalid_argument("offset_statistic: a must be nonzero");
  if (tau <= 0.0) throw std::invalid_argument("offset_statistic: tau must be positive");
  OffsetSlice slice;
  slice.a = a;
  slice.tau = tau;
  const size_t total = grid.points();
  for (size_t mi = 0; mi < total; ++mi) {
    auto m = grid.decode(mi);
    std::vector<uint32_t> counts(static_cast<size_t>(grid.Q) * grid.Q, 0);
    for (size_t ri = 0; ri < total; ++ri) {
      auto r = grid.decode(ri);
      const double* base = grid.at(ri);
      const double* shifted = grid.at(detail::wrapped_index(grid, r, m));
      for (int s = 0; s < grid.Q; ++s)
        for (int w = 0; w < grid.Q; ++w)
          if (std::abs(shifted[s] - base[w] - a) <= tau)
            ++counts[static_cast<size_t>(s) * grid.Q + w];
    }
    for (int s = 0; s < grid.Q; ++s) {
      for (int w = 0; w < grid.Q; ++w) {
        uint32_t c = counts[static_cast<size_t>(s) * grid.Q + w];
        slice.total += c;
        if (c > slice.sup_count) {
          slice.sup_count = c;
          slice.s = s + 1;
          slice.w = w + 1;
          slice.argmax_m = mi;
        }
      }
    }
  }
  return slice;
}

// Full overlap statistics at tau, with the sup also evaluated at tau/10 and
// 10 tau to expose tolerance sensitivity, plus the degeneracy estimator and
// any requested offset slices.
inline OverlapReport overlap_statistic(const BandGrid& grid, double tau,
                                       const std::vector<double>& offset_targets = {}) {
  if (tau <= 0.0) throw std::invalid_argument("overlap_statistic: tau must be positive");
  OverlapReport rep;
  rep.d = grid.d;
  rep.N = grid.N;
  rep.Q = grid.Q;
  rep.tau = tau;
  const size_t total = grid.points();
  const double tau_low = tau / 10.0, tau_high = tau * 10.0;

  rep.pairs.assign(static_cast<size_t>(grid.Q) * grid.Q, PairShiftCounts{});
  for (int s = 0; s < grid.Q; ++s) {
    for (int w = 0; w < grid.Q; ++w) {
      auto& pair = rep.pairs[static_cast<size_t>(s) * grid.Q + w];
      pair.s = s + 1;
      pair.w = w + 1;
      pair.counts.assign(total, 0);
    }
  }
  std::vector<uint32_t> counts_low(static_cast<size_t>(grid.Q) * grid.Q, 0);
  std::vector<uint32_t> counts_high(static_cast<size_t>(grid.Q) * grid.Q, 0);

  for (size_t mi = 0; mi < total; ++mi) {
    auto m = grid.decode(mi);
    std::fill(counts_low.begin(), counts_low.end(), 0);
    std::fill(counts_high.begin(), counts_high.end(), 0);
    for (size_t ri = 0; ri < total; ++ri) {
      auto r = grid.decode(ri);
      const double* base = grid.at(ri);
      const double* shifted = grid.at(detail::wrapped_index(grid, r, m));
      for (int s = 0; s < grid.Q; ++s) {
        for (int w = 0; w < grid.Q; ++w) {
          double diff = std::abs(shifted[s] - base[w]);
          if (diff <= tau) ++rep.pairs[static_cast<size_t>(s) * grid.Q + w].counts[mi];
          if (diff <= tau_low) ++counts_low[static_cast<size_t>(s) * grid.Q + w];
          if (diff <= tau_high) ++counts_high[static_cast<size_t>(s) * grid.Q + w];
        }
      }
    }
    if (mi == 0) continue;  // the sup statistic ranges over m != 0
    for (int s = 0; s < grid.Q; ++s) {
      for (int w = 0; w < grid.Q; ++w) {
        auto& pair = rep.pairs[static_cast<size_t>(s) * grid.Q + w];
        uint32_t c = pair.counts[mi];
        if (c > pair.sup) {
          pair.sup = c;
          pair.argmax_m = mi;
        }
        if (c > rep.sup_count) {
          rep.sup_count = c;
          rep.sup_s = s + 1;
          rep.sup_w = w + 1;
          rep.sup_m = mi;
        }
        uint32_t cl = counts_low[static_cast<size_t>(s) * grid.Q + w];
        uint32_t ch = counts_high[static_cast<size_t>(s) * grid.Q + w];
        rep.sup_count_low = std::max<uint64_t>(rep.sup_count_low, cl);
        rep.sup_count_high = std::max<uint64_t>(rep.sup_count_high, ch);
      }
    }
  }
  const double denom = static_cast<double>(total);
  rep.rho = static_cast<double>(rep.sup_count) / denom;
  rep.rho_tau_low = static_cast<double>(rep.sup_count_low) / denom;
  rep.rho_tau_high = static_cast<double>(rep.sup_count_high) / denom;

  rep.degeneracy_fraction = degeneracy_statistic(grid, tau);
  rep.degeneracy_count =
      static_cast<uint64_t>(std::llround(rep.degeneracy_fraction * denom));
  for (double a : offset_targets) rep.offsets.push_back(offset_statistic(grid, a, tau));
  return rep;
}

struct DecayRow {
  int N = 0;
  uint64_t sup_count = 0;
  double rho = 0.0;
  double rho_tau_low = 0.0;
  double rho_tau_high = 0.0;
  double degeneracy_fraction = 0.0;
};

struct DecaySeries {
  double tau = 0.0;
  std::vector<DecayRow> rows;
  bool non_increasing = true;
  bool non_decaying_suspected = false;  // rho failed to decay: period suspected
};

inline DecaySeries decay_series(const FloquetSymbol& sym, const std::vector<int>& Ns, double tau,
                                int workers = 1) {
  if (Ns.empty()) throw std::invalid_argument("decay_series: empty N list");
  for (size_t i = 0; i + 1 < Ns.size(); ++i)
    if (Ns[i] >= Ns[i + 1]) throw std::invalid_argument("decay_series: N list must increase");
  DecaySeries series;
  series.tau = tau;
  for (int N : Ns) {
    BandGrid grid = sweep_grid(sym, N, workers);
    OverlapReport rep = overlap_statistic(grid, tau);
    series.rows.push_back(
        {N, rep.sup_count, rep.rho, rep.rho_tau_low, rep.rho_tau_high, rep.degeneracy_fraction});
  }
  for (size_t i = 0; i + 1 < series.rows.size(); ++i)
    if (series.rows[i + 1].rho > series.rows[i].rho) series.non_increasing = false;
  double first = series.rows.front().rho;
  double last = series.rows.back().rho;
  series.non_decaying_suspected = last > 0.0 && last >= first;
  return series;
}

}  // namespace bloch
