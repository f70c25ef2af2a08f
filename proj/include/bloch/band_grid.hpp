#pragma once

#include <cstdio>
#include <ostream>
#include <thread>

#include "bloch/eigen_hermitian.hpp"
#include "bloch/floquet.hpp"

namespace bloch {

/// Sorted band values lambda^1 <= ... <= lambda^Q at every grid point
/// k = r/N, r in {0..N-1}^d, stored row-major in r (last coordinate fastest).
struct BandGrid {
  int d = 0;
  int N = 1;
  int Q = 0;
  std::vector<double> values;  // [point * Q + band]

  size_t points() const {
    size_t p = 1;
    for (int j = 0; j < d; ++j) p *= static_cast<size_t>(N);
    return p;
  }
  const double* at(size_t point) const { return values.data() + point * static_cast<size_t>(Q); }

  std::vector<int> decode(size_t idx) const {
    std::vector<int> r(static_cast<size_t>(d));
    for (int j = d - 1; j >= 0; --j) {
      r[static_cast<size_t>(j)] = static_cast<int>(idx % static_cast<size_t>(N));
      idx /= static_cast<size_t>(N);
    }
    return r;
  }
  size_t encode(const std::vector<int>& r) const {
    size_t idx = 0;
    for (int j = 0; j < d; ++j) idx = idx * static_cast<size_t>(N) + static_cast<size_t>(r[static_cast<size_t>(j)]);
    return idx;
  }
};

// Eigenvalues at every grid point. The grid is split into contiguous chunks
// over workers writing into disjoint preallocated slots, so the output is
// identical for any worker count.
inline BandGrid sweep_grid(const FloquetSymbol& sym, int N, int workers = 1) {
  if (N < 1) throw std::invalid_argument("sweep_grid: N must be positive");
  BandGrid grid;
  grid.d = sym.dim();
  grid.N = N;
  grid.Q = sym.size();
  const size_t total = grid.points();
  grid.values.assign(total * static_cast<size_t>(grid.Q), 0.0);

  auto work = [&](size_t begin, size_t end) {
    std::vector<double> k(static_cast<size_t>(grid.d));
    for (size_t idx = begin; idx < end; ++idx) {
      auto r = grid.decode(idx);
      for (int j = 0; j < grid.d; ++j)
        k[static_cast<size_t>(j)] = static_cast<double>(r[static_cast<size_t>(j)]) / N;
      auto eig = hermitian_eigenvalues(eval_symbol(sym, k));
      std::copy(eig.begin(), eig.end(),
                grid.values.begin() + static_cast<long>(idx * static_cast<size_t>(grid.Q)));
    }
  };

  int nthreads = std::max(1, workers);
  if (nthreads == 1 || total < 2) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (total + static_cast<size_t>(nthreads) - 1) / static_cast<size_t>(nthreads);
    for (int t = 0; t < nthreads; ++t) {
      size_t begin = static_cast<size_t>(t) * chunk;
      size_t end = std::min(total, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return grid;
}

// CSV with header k_1,..,k_d,lambda_1,..,lambda_Q, one row per grid point in
// row-major r order, 12 significant digits.
inline void write_band_csv(const BandGrid& grid, std::ostream& os) {
  for (int j = 0; j < grid.d; ++j) os << "k_" << (j + 1) << ",";
  for (int b = 0; b < grid.Q; ++b) os << "lambda_" << (b + 1) << (b + 1 < grid.Q ? "," : "\n");
  char buf[40];
  const size_t total = grid.points();
  for (size_t idx = 0; idx < total; ++idx) {
    auto r = grid.decode(idx);
    for (int j = 0; j < grid.d; ++j) {
      std::snprintf(buf, sizeof buf, "%.12g",
                    static_cast<double>(r[static_cast<size_t>(j)]) / grid.N);
      os << buf << ",";
    }
    for (int b = 0; b < grid.Q; ++b) {
      std::snprintf(buf, sizeof buf, "%.12g", grid.at(idx)[b]);
      os << buf << (b + 1 < grid.Q ? "," : "\n");
    }
  }
}

}  // namespace bloch
