#pragma once

#include <cassert>
#include <cstddef>
#include <string>
#include <vector>

#include "maxplus/errors.hpp"
#include "maxplus/value.hpp"

namespace maxplus {

// Dense square matrix over the max-plus semiring. Indices are 1-based in the
// public interface, matching the usual max-plus conventions; storage is
// row-major. A default-constructed entry is eps, so a fresh matrix is the
// additive zero.
class Matrix {
 public:
  explicit Matrix(int n) : n_(n) {
    if (n < 1) throw BadOrder("matrix order must be at least 1, got " + std::to_string(n));
    e_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  }

  int n() const { return n_; }

  Value& at(int i, int j) {
    assert(1 <= i && i <= n_ && 1 <= j && j <= n_);
    return e_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)];
  }

  Value at(int i, int j) const {
    assert(1 <= i && i <= n_ && 1 <= j && j <= n_);
    return e_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)];
  }

  std::vector<Value> row(int i) const {
    assert(1 <= i && i <= n_);
    return std::vector<Value>(e_.begin() + static_cast<std::ptrdiff_t>(i - 1) * n_,
                              e_.begin() + static_cast<std::ptrdiff_t>(i) * n_);
  }

  friend bool operator==(const Matrix& p, const Matrix& q) {
    return p.n_ == q.n_ && p.e_ == q.e_;
  }
  friend bool operator!=(const Matrix& p, const Matrix& q) { return !(p == q); }

 private:
  int n_;
  std::vector<Value> e_;
};

inline void require_same_order(const Matrix& p, const Matrix& q, const char* what) {
  if (p.n() != q.n())
    throw DimensionMismatch(std::string(what) + ": orders " + std::to_string(p.n()) + " and " +
                            std::to_string(q.n()) + " differ");
}

// Entrywise semiring addition (max).
inline Matrix add(const Matrix& p, const Matrix& q) {
  require_same_order(p, q, "add");
  Matrix r(p.n());
  for (int i = 1; i <= p.n(); ++i)
    for (int j = 1; j <= p.n(); ++j) r.at(i, j) = p.at(i, j) + q.at(i, j);
  return r;
}

// Semiring matrix product: r(i,j) = max_k p(i,k) + q(k,j).
inline Matrix multiply(const Matrix& p, const Matrix& q) {
  require_same_order(p, q, "multiply");
  const int n = p.n();
  Matrix r(n);
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k) {
      const Value pik = p.at(i, k);
      if (!pik.finite()) continue;
      for (int j = 1; j <= n; ++j) r.at(i, j) += pik * q.at(k, j);
    }
  return r;
}

// Row vector times matrix, same product rule. u.size() must equal a.n().
inline std::vector<Value> row_times(const std::vector<Value>& u, const Matrix& a) {
  if (static_cast<int>(u.size()) != a.n())
    throw DimensionMismatch("row_times: vector length " + std::to_string(u.size()) +
                            " vs order " + std::to_string(a.n()));
  std::vector<Value> r(u.size());
  for (int k = 1; k <= a.n(); ++k) {
    const Value uk = u[static_cast<std::size_t>(k) - 1];
    if (!uk.finite()) continue;
    for (int j = 1; j <= a.n(); ++j) r[static_cast<std::size_t>(j) - 1] += uk * a.at(k, j);
  }
  return r;
}

// p-th semiring power by a plain left fold of products, p >= 1. This is the
// reference method everything faster is checked against, so it stays naive
// on purpose: no squaring, no structure exploited.
inline Matrix power_naive(const Matrix& m, int p) {
  if (p < 1) throw BadOrder("power exponent must be at least 1, got " + std::to_string(p));
  Matrix r = m;
  for (int i = 2; i <= p; ++i) r = multiply(r, m);
  return r;
}

// Adds c to every finite entry; eps entries stay eps.
inline Matrix scalar_shift(const Matrix& m, Weight c) {
  Matrix r(m.n());
  const Value cv = Value::of(c);
  for (int i = 1; i <= m.n(); ++i)
    for (int j = 1; j <= m.n(); ++j) r.at(i, j) = m.at(i, j) * cv;
  return r;
}

// Maximum number of finite entries in any single column. Zero for the
// all-eps matrix.
inline int support(const Matrix& m) {
  int best = 0;
  for (int j = 1; j <= m.n(); ++j) {
    int cnt = 0;
    for (int i = 1; i <= m.n(); ++i)
      if (m.at(i, j).finite()) ++cnt;
    if (cnt > best) best = cnt;
  }
  return best;
}

inline int min_column_support(const Matrix& m) {
  int best = m.n() + 1;
  for (int j = 1; j <= m.n(); ++j) {
    int cnt = 0;
    for (int i = 1; i <= m.n(); ++i)
      if (m.at(i, j).finite()) ++cnt;
    if (cnt < best) best = cnt;
  }
  return best;
}

}  // namespace maxplus
