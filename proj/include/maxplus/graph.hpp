#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxplus/errors.hpp"
#include "maxplus/honest.hpp"
#include "maxplus/matrix.hpp"

namespace maxplus {

// Edge u -> v with weight M(v, u). The transposed convention is forced by
// the band structure: vertex u feeds idx(u+1) and idx(u+2), so column u of
// the matrix lists the out-edges of u. A walk i -> j of length l therefore
// contributes to the (j, i) entry of the l-th power.
struct Edge {
  int from = 0;
  int to = 0;
  Weight weight = 0;
};

class PrecedenceGraph {
 public:
  explicit PrecedenceGraph(int n) : n_(n), out_(static_cast<std::size_t>(n) + 1) {}

  int n() const { return n_; }

  void add_edge(int from, int to, Weight w) {
    auto& lst = out_[static_cast<std::size_t>(from)];
    Edge e{from, to, w};
    // kept sorted by target so enumeration is lexicographic
    lst.insert(std::upper_bound(lst.begin(), lst.end(), e,
                                [](const Edge& x, const Edge& y) { return x.to < y.to; }),
               e);
    ++edges_;
  }

  const std::vector<Edge>& out_edges(int u) const { return out_[static_cast<std::size_t>(u)]; }

  std::size_t edge_count() const { return edges_; }

 private:
  int n_;
  std::vector<std::vector<Edge>> out_;
  std::size_t edges_ = 0;
};

inline PrecedenceGraph build_graph(const Matrix& m) {
  PrecedenceGraph g(m.n());
  for (int u = 1; u <= m.n(); ++u)
    for (int v = 1; v <= m.n(); ++v)
      if (m.at(v, u).finite()) g.add_edge(u, v, m.at(v, u).get());
  return g;
}

struct Path {
  std::vector<int> vertices;
  Weight weight = 0;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

// All walks from i to j with exactly len edges, lexicographically sorted by
// vertex sequence. Deliberately exhaustive: this is the independent oracle
// the fast power method is checked against, so it shares no machinery with
// the matrix code. The per-level walk count is capped; out-degree-2 graphs
// need cap >= 2^len.
inline std::vector<Path> enumerate_paths(const PrecedenceGraph& g, int i, int j, int len,
                                         std::uint64_t cap) {
  if (len < 1) throw BadOrder("walk length must be at least 1, got " + std::to_string(len));
  std::vector<Path> level;
  level.push_back(Path{{i}, 0});
  for (int d = 1; d <= len; ++d) {
    std::vector<Path> next;
    for (const Path& p : level)
      for (const Edge& e : g.out_edges(p.vertices.back())) {
        if (next.size() + 1 > cap)
          throw CapExceeded("walk frontier at depth " + std::to_string(d) + " exceeds cap " +
                            std::to_string(cap));
        Path q = p;
        q.vertices.push_back(e.to);
        q.weight += e.weight;
        next.push_back(std::move(q));
      }
    level = std::move(next);
  }
  std::vector<Path> out;
  for (Path& p : level)
    if (p.vertices.back() == j) out.push_back(std::move(p));
  return out;
}

// Best weight over closed walks of exactly len edges through i; eps if none.
inline Value max_cycle_weight(const PrecedenceGraph& g, int i, int len,
                              std::uint64_t cap = std::uint64_t(1) << 22) {
  Value best = Value::eps();
  for (const Path& p : enumerate_paths(g, i, i, len, cap)) best += Value::of(p.weight);
  return best;
}

inline bool all_finite(const Matrix& m) {
  for (int i = 1; i <= m.n(); ++i)
    for (int j = 1; j <= m.n(); ++j)
      if (!m.at(i, j).finite()) return false;
  return true;
}

// Least p in [2, p_max] whose p-th power has no eps entry, if any.
inline std::optional<int> perfect_index(const Matrix& m, int p_max) {
  Matrix r = m;
  for (int p = 2; p <= p_max; ++p) {
    r = multiply(r, m);
    if (all_finite(r)) return p;
  }
  return std::nullopt;
}

// Relabels vertex x as idx(x - r): result(i, j) = M(idx(i+r), idx(j+r)).
// Rotation commutes with powers, which is what makes per-row band statements
// uniform across rows.
inline Matrix rotate_labels(const Matrix& m, int r) {
  const int n = m.n();
  Matrix out(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) out.at(i, j) = m.at(idx(i + r, n), idx(j + r, n));
  return out;
}

}  // namespace maxplus
