#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maxplus/errors.hpp"
#include "maxplus/matrix.hpp"
#include "maxplus/rng.hpp"

namespace maxplus {

// Reduces x onto [1, n], treating indices as 1-based and n-periodic. The
// remainder is kept non-negative, so negative x wraps the right way:
// idx(0, 5) = 5, idx(-1, 5) = 4, idx(6, 5) = 1.
constexpr int idx(long long x, int n) {
  long long r = (x - 1) % n;
  if (r < 0) r += n;
  return static_cast<int>(r) + 1;
}

// A banded-circulant matrix of odd order 2m+1 whose only finite entries are
// a positive subdiagonal band a and a negative band b below it, both wrapping
// cyclically: dense(idx(j+1), j) = a_j > 0 and dense(idx(j+2), j) = b_j < 0.
// Every column therefore has exactly two finite entries.
class HonestMatrix {
 public:
  HonestMatrix(int m, std::vector<Weight> a, std::vector<Weight> b)
      : m_(m), a_(std::move(a)), b_(std::move(b)) {
    if (m_ < 2) throw BadOrder("honest matrix needs m >= 2, got m = " + std::to_string(m_));
    const std::size_t n = static_cast<std::size_t>(order());
    if (a_.size() != n)
      throw BadLength("a has " + std::to_string(a_.size()) + " entries, expected " +
                      std::to_string(n));
    if (b_.size() != n)
      throw BadLength("b has " + std::to_string(b_.size()) + " entries, expected " +
                      std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (a_[j] <= 0)
        throw SignViolation("a[" + std::to_string(j + 1) + "] = " + std::to_string(a_[j]) +
                            " must be positive");
      if (b_[j] >= 0)
        throw SignViolation("b[" + std::to_string(j + 1) + "] = " + std::to_string(b_[j]) +
                            " must be negative");
    }
  }

  int m() const { return m_; }
  int order() const { return 2 * m_ + 1; }

  Weight a(int j) const { return a_[static_cast<std::size_t>(j) - 1]; }
  Weight b(int j) const { return b_[static_cast<std::size_t>(j) - 1]; }

  const std::vector<Weight>& a_band() const { return a_; }
  const std::vector<Weight>& b_band() const { return b_; }

  friend bool operator==(const HonestMatrix& x, const HonestMatrix& y) {
    return x.m_ == y.m_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const HonestMatrix& x, const HonestMatrix& y) { return !(x == y); }

 private:
  int m_;
  std::vector<Weight> a_;
  std::vector<Weight> b_;
};

// Reproducible generator: a in [1, 50], b in [-50, -1], the a band drawn
// first. Draw order is fixed; gen must emit byte-identical files per seed.
inline HonestMatrix random_honest(int m, std::uint64_t seed) {
  if (m < 2) throw BadOrder("honest matrix needs m >= 2, got m = " + std::to_string(m));
  const int n = 2 * m + 1;
  SplitMix64 rng(seed);
  std::vector<Weight> a(static_cast<std::size_t>(n));
  std::vector<Weight> b(static_cast<std::size_t>(n));
  for (auto& w : a) w = rng.range(1, 50);
  for (auto& w : b) w = rng.range(-50, -1);
  return HonestMatrix(m, std::move(a), std::move(b));
}

inline Matrix to_dense(const HonestMatrix& h) {
  const int n = h.order();
  Matrix d(n);
  for (int j = 1; j <= n; ++j) {
    d.at(idx(j + 1, n), j) = Value::of(h.a(j));
    d.at(idx(j + 2, n), j) = Value::of(h.b(j));
  }
  return d;
}

// Column i of the dense form, as a length-n vector: 1-based positions
// idx(i+1) and idx(i+2) hold a_i and b_i, everything else is eps.
inline std::vector<Value> column_u(const HonestMatrix& h, int i) {
  const int n = h.order();
  if (i < 1 || i > n)
    throw DimensionMismatch("column index " + std::to_string(i) + " outside [1, " +
                            std::to_string(n) + "]");
  std::vector<Value> u(static_cast<std::size_t>(n));
  u[static_cast<std::size_t>(idx(i + 1, n)) - 1] = Value::of(h.a(i));
  u[static_cast<std::size_t>(idx(i + 2, n)) - 1] = Value::of(h.b(i));
  return u;
}

// Weight of the full cycle 1 -> 2 -> ... -> n -> 1 along the a band, i.e. the
// sum of all a_j. This is the heaviest cycle weight anywhere in the matrix.
inline Weight top_cycle_weight(const HonestMatrix& h) {
  Weight L = 0;
  for (int j = 1; j <= h.order(); ++j) L += h.a(j);
  return L;
}

// Recovers the compact form from a dense matrix, rejecting anything that is
// not honest: wrong order, missing or misplaced finite entries, wrong signs.
inline HonestMatrix honest_from_dense(const Matrix& d) {
  const int n = d.n();
  if (n < 5 || n % 2 == 0)
    throw BadOrder("honest order must be odd and at least 5, got " + std::to_string(n));
  const int m = (n - 1) / 2;
  std::vector<Weight> a(static_cast<std::size_t>(n));
  std::vector<Weight> b(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    const int ra = idx(j + 1, n);
    const int rb = idx(j + 2, n);
    for (int i = 1; i <= n; ++i) {
      const Value v = d.at(i, j);
      if (i == ra) {
        if (!v.finite() || v.get() <= 0)
          throw SignViolation("column " + std::to_string(j) + ": entry at row " +
                              std::to_string(i) + " must be finite positive");
        a[static_cast<std::size_t>(j) - 1] = v.get();
      } else if (i == rb) {
        if (!v.finite() || v.get() >= 0)
          throw SignViolation("column " + std::to_string(j) + ": entry at row " +
                              std::to_string(i) + " must be finite negative");
        b[static_cast<std::size_t>(j) - 1] = v.get();
      } else if (v.finite()) {
        throw SignViolation("column " + std::to_string(j) + ": unexpected finite entry at row " +
                            std::to_string(i));
      }
    }
  }
  return HonestMatrix(m, std::move(a), std::move(b));
}

// Finite band of column offsets shared by every row of the (k+1)-st power
// while k stays below m - 1. Row i of that power is finite exactly at
// columns idx(i + t) for t in [beta1, beta2 - 2].
struct Window {
  int k = 0;
  int n = 0;
  int beta1 = 0;
  int beta2 = 0;

  int first_offset() const { return beta1; }
  int last_offset() const { return beta2 - 2; }
  int width() const { return k + 2; }

  std::vector<int> offsets() const {
    std::vector<int> t;
    t.reserve(static_cast<std::size_t>(width()));
    for (int v = first_offset(); v <= last_offset(); ++v) t.push_back(v);
    return t;
  }

  // Predicted finite columns of row i, in offset order.
  std::vector<int> row_columns(int i) const {
    std::vector<int> c;
    c.reserve(static_cast<std::size_t>(width()));
    for (int v = first_offset(); v <= last_offset(); ++v) c.push_back(idx(i + v, n));
    return c;
  }
};

inline Window window(const HonestMatrix& h, int k) {
  if (k < 1 || k > h.m() - 1)
    throw StepError("window index " + std::to_string(k) + " outside [1, " +
                    std::to_string(h.m() - 1) + "]");
  Window w;
  w.k = k;
  w.n = h.order();
  w.beta1 = 2 * (h.m() + 1) - 2 * k - 3;
  w.beta2 = 2 * (h.m() + 1) - k;
  return w;
}

}  // namespace maxplus
