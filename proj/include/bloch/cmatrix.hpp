#pragma once

#include <complex>
#include <vector>

namespace bloch {

/// Dense square complex matrix, row-major.
struct ComplexMatrix {
  int n = 0;
  std::vector<std::complex<double>> a;

  ComplexMatrix() = default;
  explicit ComplexMatrix(int size) : n(size), a(static_cast<size_t>(size) * size) {}

  std::complex<double>& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const std::complex<double>& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  double hermitian_deviation() const {
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dev = std::max(dev, std::abs(at(i, j) - std::conj(at(j, i))));
    return dev;
  }

  // (M + M^dagger) / 2
  ComplexMatrix symmetrized() const {
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.at(i, j) = 0.5 * (at(i, j) + std::conj(at(j, i)));
    return out;
  }

  std::complex<double> trace() const {
    std::complex<double> t(0.0, 0.0);
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return std::sqrt(s);
  }
};

}  // namespace bloch
