#pragma once

#include <string>
#include <vector>

#include "maxplus/errors.hpp"
#include "maxplus/ghost.hpp"
#include "maxplus/honest.hpp"
#include "maxplus/matrix.hpp"

namespace maxplus {

// Diagonal matrix with the same finite weight b everywhere on the diagonal.
// Multiplying by it on either side shifts every finite entry by b, which is
// why it commutes with everything; the equal-diagonal hypothesis is load
// bearing and general diagonals are out of scope.
inline Matrix scalar_diag(int n, Weight b) {
  Matrix d(n);
  for (int i = 1; i <= n; ++i) d.at(i, i) = Value::of(b);
  return d;
}

inline bool commute_check(const Matrix& m, Weight b) {
  const Matrix d = scalar_diag(m.n(), b);
  const Matrix left = multiply(d, m);
  const Matrix right = multiply(m, d);
  return left == right && right == scalar_shift(m, b);
}

// n-th power of D = scalar_diag(b) max dense(h), assembled from the parts:
//   D^n = diag(n*b)  max  max_{k=1..n-1} shift(A^k, (n-k)*b)  max  A^n.
// The mixed terms collapse to scalar shifts because the diagonal commutes
// and never needs to be materialized; all A^k come from one fast-power
// sweep.
inline Matrix d_power_decomposed(const HonestMatrix& h, Weight b, int n) {
  if (n < 1) throw BadOrder("power exponent must be at least 1, got " + std::to_string(n));
  const int order = h.order();
  Matrix acc = scalar_diag(order, static_cast<Weight>(n) * b);
  GhostState s = make_ghost(h);
  for (int k = 1; k <= n; ++k) {
    // s.x is A^k here (iteration index k-1)
    acc = add(acc, k == n ? s.x : scalar_shift(s.x, static_cast<Weight>(n - k) * b));
    if (k < n) s = advance(std::move(s));
  }
  return acc;
}

enum class DPowerMethod { Naive, ThreeTerm };

// Checks the only shape the three-term step is exact for: a finite equal
// diagonal plus the two honest bands, nothing else finite.
inline void require_diag_plus_bands(const Matrix& d) {
  const int n = d.n();
  if (n < 5 || n % 2 == 0)
    throw DimensionMismatch("three-term powers need odd order >= 5, got " + std::to_string(n));
  const Value diag = d.at(1, 1);
  if (!diag.finite()) throw DimensionMismatch("three-term powers need a finite diagonal");
  for (int j = 1; j <= n; ++j) {
    const int r1 = idx(j + 1, n);
    const int r2 = idx(j + 2, n);
    for (int i = 1; i <= n; ++i) {
      const Value v = d.at(i, j);
      if (i == j) {
        if (v != diag)
          throw DimensionMismatch("three-term powers need an equal diagonal; entry (" +
                                  std::to_string(i) + "," + std::to_string(j) + ") differs");
      } else if (i == r1 || i == r2) {
        if (!v.finite())
          throw DimensionMismatch("three-term powers need finite bands; entry (" +
                                  std::to_string(i) + "," + std::to_string(j) + ") is -inf");
      } else if (v.finite()) {
        throw DimensionMismatch("unexpected finite entry at (" + std::to_string(i) + "," +
                                std::to_string(j) + ") outside diagonal and bands");
      }
    }
  }
}

// D^n by repeated full products (the reference) or by the banded three-term
// step (exact for diagonal-plus-bands shapes, checked up front).
inline Matrix d_power_direct(const Matrix& d, int n, DPowerMethod method) {
  if (n < 1) throw BadOrder("power exponent must be at least 1, got " + std::to_string(n));
  if (method == DPowerMethod::Naive) return power_naive(d, n);
  require_diag_plus_bands(d);
  Matrix r = d;
  for (int p = 2; p <= n; ++p) r = three_term_update(r, d);
  return r;
}

}  // namespace maxplus
