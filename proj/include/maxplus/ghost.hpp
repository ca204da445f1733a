#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maxplus/errors.hpp"
#include "maxplus/honest.hpp"
#include "maxplus/matrix.hpp"

namespace maxplus {

namespace detail {

// 1-based lookup table c[j] = idx(j + shift, n); c[0] is unused.
inline std::vector<int> shifted(int n, int shift) {
  std::vector<int> c(static_cast<std::size_t>(n) + 1);
  for (int j = 1; j <= n; ++j) c[static_cast<std::size_t>(j)] = idx(j + shift, n);
  return c;
}

}  // namespace detail

struct GhostStats {
  std::uint64_t two_term_evals = 0;
  std::uint64_t shortcut_writes = 0;
};

// Apex condition: after one full period every entry sits at or below the top
// cycle weight. Holds/Fails is decided once, at iteration 2m; periodic
// diagonal shortcuts are only taken when it holds.
enum class Apex { Unknown, Holds, Fails };

inline bool apex_holds(const Matrix& x, Weight L) {
  const Value cap = Value::of(L);
  for (int i = 1; i <= x.n(); ++i)
    for (int j = 1; j <= x.n(); ++j)
      if (cap < x.at(i, j)) return false;
  return true;
}

// Because every column of an honest matrix has exactly two finite entries,
// one product step collapses to two terms per output entry:
//   y(i, j) = x(i, idx(j+1)) + a_j  max  x(i, idx(j+2)) + b_j.
// This is exact for every honest matrix, with no condition attached.
inline Value two_term_entry(const Matrix& x, const HonestMatrix& h, int i, int j) {
  const int n = h.order();
  return x.at(i, idx(j + 1, n)) * Value::of(h.a(j)) +
         x.at(i, idx(j + 2, n)) * Value::of(h.b(j));
}

inline Matrix two_term_update(const Matrix& x, const HonestMatrix& h,
                              GhostStats* stats = nullptr) {
  if (x.n() != h.order())
    throw DimensionMismatch("two_term_update: order " + std::to_string(x.n()) +
                            " vs honest order " + std::to_string(h.order()));
  const int n = x.n();
  const std::vector<int> c1 = detail::shifted(n, 1);
  const std::vector<int> c2 = detail::shifted(n, 2);
  Matrix y(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      y.at(i, j) = x.at(i, c1[static_cast<std::size_t>(j)]) * Value::of(h.a(j)) +
                   x.at(i, c2[static_cast<std::size_t>(j)]) * Value::of(h.b(j));
  if (stats) stats->two_term_evals += static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  return y;
}

// Three-term analogue for D with an extra finite diagonal (D = diagonal max
// honest band matrix): column j of D is finite at rows j, idx(j+1), idx(j+2).
inline Matrix three_term_update(const Matrix& z, const Matrix& d) {
  require_same_order(z, d, "three_term_update");
  const int n = z.n();
  const std::vector<int> c1 = detail::shifted(n, 1);
  const std::vector<int> c2 = detail::shifted(n, 2);
  Matrix y(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const int r1 = c1[static_cast<std::size_t>(j)];
      const int r2 = c2[static_cast<std::size_t>(j)];
      y.at(i, j) = z.at(i, j) * d.at(j, j) + z.at(i, r1) * d.at(r1, j) + z.at(i, r2) * d.at(r2, j);
    }
  return y;
}

// Iteration state of the fast power method. x always equals the (k+1)-st
// power of the dense form of h; the constructor-equivalent make_ghost starts
// at k = 0 with x = the matrix itself.
struct GhostState {
  HonestMatrix h;
  Matrix x;
  int k = 0;
  Weight L = 0;
  Apex apex = Apex::Unknown;
  GhostStats stats;
  bool verify_shortcuts = false;
  std::vector<std::string> findings;
};

inline GhostState make_ghost(const HonestMatrix& h, bool verify_shortcuts = false) {
  return GhostState{h,  to_dense(h), 0, top_cycle_weight(h), Apex::Unknown,
                    {}, verify_shortcuts, {}};
}

// Band-limited step, valid while the next iterate is still windowed
// (next index in [1, m-1]): only the k+2 predicted-finite entries per row are
// evaluated, the rest are written as eps without touching the semiring.
inline GhostState windowed_update(GhostState s) {
  const int next = s.k + 1;
  if (next < 1 || next > s.h.m() - 1)
    throw StepError("windowed update applies at indices 1.." + std::to_string(s.h.m() - 1) +
                    ", next index is " + std::to_string(next));
  const int n = s.h.order();
  const Window w = window(s.h, next);
  Matrix y(n);
  for (int i = 1; i <= n; ++i)
    for (int t = w.first_offset(); t <= w.last_offset(); ++t) {
      const int j = idx(i + t, n);
      y.at(i, j) = two_term_entry(s.x, s.h, i, j);
      ++s.stats.two_term_evals;
    }
  s.x = std::move(y);
  s.k = next;
  return s;
}

// One-period step: at the next index 2m the whole diagonal equals the top
// cycle weight and is written directly; off-diagonal entries go through the
// two-term rule. This step also decides the apex condition for later
// shortcuts. With verify_shortcuts set, shortcut entries are recomputed the
// slow way and any disagreement is recorded as a finding.
inline GhostState diagonal_step_2m(GhostState s) {
  const int next = s.k + 1;
  if (next != 2 * s.h.m())
    throw StepError("one-period diagonal step applies at index " + std::to_string(2 * s.h.m()) +
                    ", next index is " + std::to_string(next));
  const int n = s.h.order();
  Matrix y(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      y.at(i, j) = two_term_entry(s.x, s.h, i, j);
      ++s.stats.two_term_evals;
    }
  const Value want = Value::of(s.L);
  for (int i = 1; i <= n; ++i) {
    if (s.verify_shortcuts) {
      const Value slow = two_term_entry(s.x, s.h, i, i);
      if (slow != want)
        s.findings.push_back("one-period diagonal shortcut mismatch at (" + std::to_string(i) +
                             "," + std::to_string(i) + ") of iterate " + std::to_string(next));
    }
    y.at(i, i) = want;
    ++s.stats.shortcut_writes;
  }
  s.x = std::move(y);
  s.k = next;
  s.apex = apex_holds(s.x, s.L) ? Apex::Holds : Apex::Fails;
  return s;
}

// Multi-period step at the next index alpha*(2m+1) - 1 for alpha >= 2. When
// the apex condition holds the diagonal is exactly alpha times the top cycle
// weight and is written directly; when it fails the iterate is computed by
// the plain two-term rule, which is always exact.
inline GhostState periodic_diagonal_step(GhostState s, int alpha) {
  const int next = s.k + 1;
  const int n = s.h.order();
  if (alpha < 2)
    throw StepError("multi-period step needs alpha >= 2, got " + std::to_string(alpha));
  if (next != alpha * n - 1)
    throw StepError("multi-period step with alpha = " + std::to_string(alpha) +
                    " applies at index " + std::to_string(alpha * n - 1) + ", next index is " +
                    std::to_string(next));
  if (s.apex == Apex::Unknown)
    throw StepError("apex condition undecided; the one-period step has not run");
  if (s.apex == Apex::Fails) {
    s.x = two_term_update(s.x, s.h, &s.stats);
    s.k = next;
    return s;
  }
  Matrix y(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      y.at(i, j) = two_term_entry(s.x, s.h, i, j);
      ++s.stats.two_term_evals;
    }
  const Value want = Value::of(static_cast<Weight>(alpha) * s.L);
  for (int i = 1; i <= n; ++i) {
    if (s.verify_shortcuts) {
      const Value slow = two_term_entry(s.x, s.h, i, i);
      if (slow != want)
        s.findings.push_back("multi-period diagonal shortcut mismatch at (" + std::to_string(i) +
                             "," + std::to_string(i) + ") of iterate " + std::to_string(next));
    }
    y.at(i, i) = want;
    ++s.stats.shortcut_writes;
  }
  s.x = std::move(y);
  s.k = next;
  return s;
}

// One step of the fast method, picking the cheapest rule that is exact at
// the next index.
inline GhostState advance(GhostState s) {
  const int next = s.k + 1;
  const int m = s.h.m();
  const int n = s.h.order();
  if (next <= m - 1) return windowed_update(std::move(s));
  if (next == 2 * m) return diagonal_step_2m(std::move(s));
  if (next > 2 * m && (next + 1) % n == 0)
    return periodic_diagonal_step(std::move(s), (next + 1) / n);
  s.x = two_term_update(s.x, s.h, &s.stats);
  s.k = next;
  return s;
}

inline GhostState ghost_run(const HonestMatrix& h, int k, bool verify_shortcuts = false) {
  if (k < 0) throw StepError("iteration index must be at least 0, got " + std::to_string(k));
  GhostState s = make_ghost(h, verify_shortcuts);
  while (s.k < k) s = advance(std::move(s));
  return s;
}

// The (k+1)-st power of the dense form of h, by the fast method.
inline Matrix ghost_power(const HonestMatrix& h, int k, bool verify_shortcuts = false) {
  return ghost_run(h, k, verify_shortcuts).x;
}

}  // namespace maxplus
