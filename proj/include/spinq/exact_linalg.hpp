#pragma once

#include <stdexcept>
#include <vector>

#include "spinq/scalar.hpp"

namespace spinq {

// Gaussian elimination over the scalar field (division is total in the
// grammar). Pivots are chosen as the first structurally nonzero entry, which
// is exact for rational matrices; symbolic matrices must be generically
// invertible.
inline std::vector<Scalar> solve_linear(std::vector<std::vector<Scalar>> a,
                                        std::vector<Scalar> b) {
  size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("solve_linear: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    Scalar inv = a[col][col].pow(Rational(-1));
    for (size_t j = col; j < n; ++j) a[col][j] = inv * a[col][j];
    b[col] = inv * b[col];
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Scalar f = a[r][col];
      for (size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

}  // namespace spinq
