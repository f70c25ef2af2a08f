#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "bloch/cmatrix.hpp"

namespace bloch {

// All eigenvalues of a complex Hermitian matrix in non-decreasing order.
// Self-contained: complex Householder reduction to a real symmetric
// tridiagonal form, then implicit-shift QL iteration (eigenvalues only).
// Throws if the input deviates from Hermitian by more than `tol`.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& input, double tol = 1e-10) {
  const int n = input.n;
  if (n == 0) return {};
  double scale = 0.0;
  for (const auto& x : input.a) scale = std::max(scale, std::abs(x));
  if (input.hermitian_deviation() > tol * std::max(1.0, scale))
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian within tolerance");
  ComplexMatrix m = input.symmetrized();

  if (n == 1) return {m.at(0, 0).real()};

  // Householder reduction: zero out column k below the first subdiagonal.
  for (int k = 0; k + 2 < n; ++k) {
    double norm2 = 0.0;
    for (int i = k + 1; i < n; ++i) norm2 += std::norm(m.at(i, k));
    if (norm2 == 0.0) continue;
    double norm = std::sqrt(norm2);
    std::complex<double> alpha = m.at(k + 1, k);
    std::complex<double> beta =
        std::abs(alpha) == 0.0 ? std::complex<double>(-norm, 0.0) : -(alpha / std::abs(alpha)) * norm;
    // v = x - beta e1, H = I - 2 w w^dagger with w = v / |v|
    std::vector<std::complex<double>> w(static_cast<size_t>(n), {0.0, 0.0});
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      w[static_cast<size_t>(i)] = m.at(i, k);
      if (i == k + 1) w[static_cast<size_t>(i)] -= beta;
      vnorm2 += std::norm(w[static_cast<size_t>(i)]);
    }
    if (vnorm2 == 0.0) continue;
    double inv = 1.0 / std::sqrt(vnorm2);
    for (int i = k + 1; i < n; ++i) w[static_cast<size_t>(i)] *= inv;

    // M <- H M H applied as two rank-one updates
    // u = M w
    std::vector<std::complex<double>> u(static_cast<size_t>(n), {0.0, 0.0});
    for (int i = 0; i < n; ++i) {
      std::complex<double> acc(0.0, 0.0);
      for (int j = k + 1; j < n; ++j) acc += m.at(i, j) * w[static_cast<size_t>(j)];
      u[static_cast<size_t>(i)] = acc;
    }
    // gamma = w^dagger u
    std::complex<double> gamma(0.0, 0.0);
    for (int i = k + 1; i < n; ++i)
      gamma += std::conj(w[static_cast<size_t>(i)]) * u[static_cast<size_t>(i)];
    // M <- M - 2 u w^dagger - 2 w u^dagger + 4 gamma w w^dagger
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        std::complex<double> upd =
            -2.0 * u[static_cast<size_t>(i)] * std::conj(w[static_cast<size_t>(j)]) -
            2.0 * w[static_cast<size_t>(i)] * std::conj(u[static_cast<size_t>(j)]) +
            4.0 * gamma * w[static_cast<size_t>(i)] * std::conj(w[static_cast<size_t>(j)]);
        m.at(i, j) += upd;
      }
    }
  }

  // The tridiagonal Hermitian form is diagonally unitarily similar to the
  // real symmetric tridiagonal with |subdiagonal|.
  std::vector<double> d(static_cast<size_t>(n)), e(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] = m.at(i, i).real();
  for (int i = 0; i + 1 < n; ++i) e[static_cast<size_t>(i)] = std::abs(m.at(i + 1, i));

  // Implicit-shift QL sweeps.
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int mm;
    do {
      for (mm = l; mm < n - 1; ++mm) {
        double dd = std::abs(d[static_cast<size_t>(mm)]) + std::abs(d[static_cast<size_t>(mm + 1)]);
        if (std::abs(e[static_cast<size_t>(mm)]) <= eps * dd) break;
      }
      if (mm != l) {
        if (++iter > 64)
          throw std::runtime_error("hermitian_eigenvalues: QL iteration did not converge");
        double g = (d[static_cast<size_t>(l + 1)] - d[static_cast<size_t>(l)]) /
                   (2.0 * e[static_cast<size_t>(l)]);
        double r = std::hypot(g, 1.0);
        g = d[static_cast<size_t>(mm)] - d[static_cast<size_t>(l)] +
            e[static_cast<size_t>(l)] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        for (int i = mm - 1; i >= l; --i) {
          double f = s * e[static_cast<size_t>(i)];
          double b = c * e[static_cast<size_t>(i)];
          r = std::hypot(f, g);
          e[static_cast<size_t>(i + 1)] = r;
          if (r == 0.0) {
            d[static_cast<size_t>(i + 1)] -= p;
            e[static_cast<size_t>(mm)] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[static_cast<size_t>(i + 1)] - p;
          r = (d[static_cast<size_t>(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[static_cast<size_t>(i + 1)] = g + p;
          g = c * r - b;
          if (i == l) {
            d[static_cast<size_t>(l)] -= p;
            e[static_cast<size_t>(l)] = g;
            e[static_cast<size_t>(mm)] = 0.0;
          }
        }
      }
    } while (mm != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace bloch
