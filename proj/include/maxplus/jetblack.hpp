#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxplus/errors.hpp"
#include "maxplus/honest.hpp"
#include "maxplus/matrix.hpp"

namespace maxplus {

namespace detail {

// Shared bit-vector core of polynomials and automaton states: 2m+1 cells
// over F2, 1-based, with cyclic index reduction.
class BitRing {
 public:
  explicit BitRing(int m) : m_(m), bits_(static_cast<std::size_t>(2 * m + 1), 0) {
    if (m < 2) throw BadOrder("order parameter must be at least 2, got " + std::to_string(m));
  }

  int m() const { return m_; }
  int size() const { return 2 * m_ + 1; }

  bool get(long long pos) const {
    return bits_[static_cast<std::size_t>(idx(pos, size())) - 1] != 0;
  }
  void flip(long long pos) { bits_[static_cast<std::size_t>(idx(pos, size())) - 1] ^= 1; }
  void assign(long long pos, bool v) {
    bits_[static_cast<std::size_t>(idx(pos, size())) - 1] = v ? 1 : 0;
  }

  int count() const {
    int c = 0;
    for (unsigned char b : bits_) c += b;
    return c;
  }

  // Cells in position order, 1 first: (1,1,0,0,0) -> "11000".
  std::string bit_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) s[i] = '1';
    return s;
  }

  void xor_with(const BitRing& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= o.bits_[i];
  }

  friend bool operator==(const BitRing& x, const BitRing& y) {
    return x.m_ == y.m_ && x.bits_ == y.bits_;
  }

 private:
  int m_;
  std::vector<unsigned char> bits_;
};

// Endpoints of a cyclically contiguous block of set cells. bottom is the set
// cell whose predecessor is clear, top the one whose successor is clear;
// walking +1 from bottom reaches top after size-1 steps.
struct Run {
  int bottom = 0;
  int top = 0;
  int size = 0;
};

inline std::optional<Run> find_run(const BitRing& b) {
  const int n = b.size();
  const int cnt = b.count();
  if (cnt == 0 || cnt == n) return std::nullopt;
  int bottom = 0;
  int top = 0;
  int edges = 0;
  for (int i = 1; i <= n; ++i) {
    if (b.get(i) && !b.get(i + 1)) {
      top = i;
      ++edges;
    }
    if (b.get(i) && !b.get(i - 1)) bottom = i;
  }
  if (edges != 1) return std::nullopt;
  return Run{bottom, top, cnt};
}

}  // namespace detail

// Polynomial over F2 whose exponents live on the cycle [1, 2m+1]: x^(2m+2)
// is x^1 and so on, applied before any coefficient is stored. Addition is
// coefficientwise XOR.
class F2Poly {
 public:
  explicit F2Poly(int m) : bits_(m) {}

  static F2Poly full_sum(int m) {
    F2Poly p(m);
    for (int e = 1; e <= 2 * m + 1; ++e) p.assign(e, true);
    return p;
  }

  int m() const { return bits_.m(); }
  int order() const { return bits_.size(); }

  bool coeff(long long e) const { return bits_.get(e); }
  void flip(long long e) { bits_.flip(e); }
  void assign(long long e, bool v) { bits_.assign(e, v); }

  int support_size() const { return bits_.count(); }
  bool zero() const { return bits_.count() == 0; }

  std::vector<int> exponents() const {
    std::vector<int> es;
    for (int e = 1; e <= order(); ++e)
      if (coeff(e)) es.push_back(e);
    return es;
  }

  // Coefficient bits in exponent order, x^1 first.
  std::string bit_string() const { return bits_.bit_string(); }

  std::string str() const {
    if (zero()) return "0";
    std::string s;
    for (int e = order(); e >= 1; --e) {
      if (!coeff(e)) continue;
      if (!s.empty()) s += "+";
      s += e == 1 ? "x" : "x^" + std::to_string(e);
    }
    return s;
  }

  friend F2Poly operator+(F2Poly x, const F2Poly& y) {
    if (x.m() != y.m())
      throw DimensionMismatch("polynomial orders " + std::to_string(x.m()) + " and " +
                              std::to_string(y.m()) + " differ");
    x.bits_.xor_with(y.bits_);
    return x;
  }

  friend bool operator==(const F2Poly& x, const F2Poly& y) { return x.bits_ == y.bits_; }
  friend bool operator!=(const F2Poly& x, const F2Poly& y) { return !(x == y); }

  const detail::BitRing& ring() const { return bits_; }

 private:
  detail::BitRing bits_;
};

// One automaton configuration: 2m+1 cells over F2 with cyclic neighborhoods.
class CaState {
 public:
  explicit CaState(int m) : bits_(m) {}

  int m() const { return bits_.m(); }
  int size() const { return bits_.size(); }

  bool cell(long long i) const { return bits_.get(i); }
  void flip(long long i) { bits_.flip(i); }
  void assign(long long i, bool v) { bits_.assign(i, v); }

  int count() const { return bits_.count(); }
  bool zero() const { return bits_.count() == 0; }

  std::string bit_string() const { return bits_.bit_string(); }

  friend bool operator==(const CaState& x, const CaState& y) { return x.bits_ == y.bits_; }
  friend bool operator!=(const CaState& x, const CaState& y) { return !(x == y); }

  const detail::BitRing& ring() const { return bits_; }

 private:
  detail::BitRing bits_;
};

// Support-to-polynomial encoding of a max-plus vector: position i maps to
// exponent 2m+1 - (i-1), present iff the entry is finite. Note the position
// order is reversed by the exponent map.
inline F2Poly h_map(const std::vector<Value>& v) {
  const int n = static_cast<int>(v.size());
  if (n < 5 || n % 2 == 0)
    throw BadLength("vector length must be odd and at least 5, got " + std::to_string(n));
  const int m = (n - 1) / 2;
  F2Poly p(m);
  for (int i = 1; i <= n; ++i)
    if (v[static_cast<std::size_t>(i) - 1].finite()) p.assign(n + 1 - i, true);
  return p;
}

// Coefficient copy: cell j of the state is the coefficient of x^j.
inline CaState hprime(const F2Poly& p) {
  CaState s(p.m());
  for (int j = 1; j <= p.order(); ++j) s.assign(j, p.coeff(j));
  return s;
}

// Run evolution: a contiguous block [bottom, top] of exponents becomes
// [bottom+1, top+2]. Realized as XOR with x^bottom + x^(top+1) + x^(top+2),
// which is the same thing for every run size. Anything that is not a run
// (zero, full, or split support) is rejected.
inline F2Poly g_rule(const F2Poly& p) {
  const auto run = detail::find_run(p.ring());
  if (!run)
    throw NotARun("polynomial support '" + p.str() + "' is not a cyclically contiguous run");
  F2Poly q = p;
  q.flip(run->bottom);
  q.flip(run->top + 1);
  q.flip(run->top + 2);
  return q;
}

// Which extremal cell the automaton rules act on. The two closed-form
// readings pick the max or min set index without wraparound; the run reading
// follows the endpoints of the contiguous block like the polynomial rule.
enum class RuleVariant { PaperLiteral, Swapped, RunSemantics };

inline const char* variant_name(RuleVariant v) {
  switch (v) {
    case RuleVariant::PaperLiteral: return "paper";
    case RuleVariant::Swapped: return "swapped";
    case RuleVariant::RunSemantics: return "run";
  }
  return "?";
}

namespace detail {

inline int max_set(const CaState& s) {
  for (int i = s.size(); i >= 1; --i)
    if (s.cell(i)) return i;
  throw ZeroState("automaton state has no set cell");
}

inline int min_set(const CaState& s) {
  for (int i = 1; i <= s.size(); ++i)
    if (s.cell(i)) return i;
  throw ZeroState("automaton state has no set cell");
}

inline Run run_of(const CaState& s) {
  if (s.zero()) throw ZeroState("automaton state has no set cell");
  const auto run = find_run(s.ring());
  if (!run)
    throw NotARun("automaton state " + s.bit_string() + " is not a cyclically contiguous run");
  return *run;
}

}  // namespace detail

// Single-cell step: clears or sets one extremal cell.
inline CaState s_rule(const CaState& st, RuleVariant v) {
  CaState out = st;
  switch (v) {
    case RuleVariant::PaperLiteral: out.flip(detail::max_set(st)); break;
    case RuleVariant::Swapped: out.flip(detail::min_set(st)); break;
    case RuleVariant::RunSemantics: out.flip(detail::run_of(st).bottom); break;
  }
  return out;
}

// Two-cell step: flips the two successors of one extremal cell, wrapping.
inline CaState l_rule(const CaState& st, RuleVariant v) {
  int j = 0;
  switch (v) {
    case RuleVariant::PaperLiteral: j = detail::min_set(st); break;
    case RuleVariant::Swapped: j = detail::max_set(st); break;
    case RuleVariant::RunSemantics: j = detail::run_of(st).top; break;
  }
  CaState out = st;
  out.flip(j + 1);
  out.flip(j + 2);
  return out;
}

// The composite automaton rule, single-cell step first.
inline CaState h245(const CaState& st, RuleVariant v) { return l_rule(s_rule(st, v), v); }

struct StepRecord {
  int k = 0;
  std::string lhs;
  std::string rhs;
  bool match = false;
};

struct DiagramReport {
  bool pass = false;
  std::vector<StepRecord> steps;
  std::string note;

  // One line per step: `k | lhs-bits | rhs-bits | match`.
  std::string to_text() const {
    std::string out;
    for (const StepRecord& s : steps) {
      out += std::to_string(s.k) + " | " + s.lhs + " | " + s.rhs + " | " +
             (s.match ? "match" : "DIFFER") + "\n";
    }
    out += std::string("verdict: ") + (pass ? "pass" : "fail") + "\n";
    if (!note.empty()) out += "note: " + note + "\n";
    return out;
  }
};

// Checks that the polynomial rule tracks matrix powers from the first row:
// applying g_rule k times to h_map(row 1 of A) must give h_map(row 1 of
// A^(k+1)) for k up to 2m-1, and the last value must be the full sum.
inline DiagramReport diagram_check_poly(const HonestMatrix& h) {
  const Matrix a = to_dense(h);
  const int steps = 2 * h.m() - 1;
  DiagramReport rep;
  rep.pass = true;
  std::vector<Value> u = a.row(1);
  F2Poly rhs = h_map(u);
  for (int k = 1; k <= steps; ++k) {
    u = row_times(u, a);
    const F2Poly lhs = h_map(u);
    try {
      rhs = g_rule(rhs);
    } catch (const NotARun& e) {
      rep.pass = false;
      rep.note = "run rule failed at step " + std::to_string(k) + ": " + e.what();
      break;
    }
    const bool ok = lhs == rhs;
    rep.steps.push_back(StepRecord{k, lhs.bit_string(), rhs.bit_string(), ok});
    if (!ok) rep.pass = false;
  }
  if (rep.note.empty() && rhs != F2Poly::full_sum(h.m())) {
    rep.pass = false;
    rep.note = "terminal value " + rhs.str() + " is not the full sum";
  }
  return rep;
}

// Checks the automaton against the matrix side: iterating the composite rule
// 2m-1 times from the encoded first row of A should land on the encoded
// first row of A^(2m). The verdict is the endpoint comparison; intermediate
// states of both sides are recorded either way, and a rule error (zero or
// split state) is a fail verdict with its position, not an exception.
inline DiagramReport diagram_check_ca(const HonestMatrix& h, RuleVariant v) {
  const Matrix a = to_dense(h);
  const int steps = 2 * h.m() - 1;
  DiagramReport rep;
  std::vector<Value> u = a.row(1);
  CaState rhs = hprime(h_map(u));
  rep.steps.push_back(StepRecord{0, rhs.bit_string(), rhs.bit_string(), true});
  bool aborted = false;
  for (int k = 1; k <= steps; ++k) {
    u = row_times(u, a);
    const CaState lhs = hprime(h_map(u));
    try {
      rhs = h245(rhs, v);
    } catch (const Error& e) {
      rep.pass = false;
      rep.note = std::string("rule failed at step ") + std::to_string(k) + ": " + e.what();
      aborted = true;
      break;
    }
    rep.steps.push_back(StepRecord{k, lhs.bit_string(), rhs.bit_string(), lhs == rhs});
  }
  if (!aborted) rep.pass = rep.steps.back().match;
  return rep;
}

struct PatternRecord {
  std::uint64_t mask = 0;
  std::string pattern;
  std::string lhs;
  std::string rhs;
  bool holds = false;
  std::string note;
};

struct SearchResult {
  int m = 0;
  RuleVariant variant = RuleVariant::RunSemantics;
  std::vector<PatternRecord> records;

  std::vector<std::vector<int>> passing_supports() const {
    std::vector<std::vector<int>> out;
    for (const PatternRecord& r : records) {
      if (!r.holds) continue;
      std::vector<int> sup;
      for (std::size_t i = 0; i < r.pattern.size(); ++i)
        if (r.pattern[i] == '1') sup.push_back(static_cast<int>(i) + 1);
      out.push_back(std::move(sup));
    }
    return out;
  }
};

// Exhausts every finite/eps support pattern of a start vector (weights fixed
// at 1 on the support) and records whether the 2m-1-step automaton endpoint
// matches the matrix-side endpoint under the chosen variant. Supports evolve
// independently of weights here, so the all-ones honest matrix stands in for
// the whole class. Patterns are enumerated in mask order, bit i-1 holding
// position i.
inline SearchResult conjecture1_search(int m, std::uint64_t pattern_budget,
                                       RuleVariant v = RuleVariant::RunSemantics) {
  if (m < 2) throw BadOrder("order parameter must be at least 2, got " + std::to_string(m));
  const int n = 2 * m + 1;
  if (n >= 63 || (std::uint64_t(1) << n) > pattern_budget)
    throw BudgetExceeded("pattern space 2^" + std::to_string(n) + " exceeds budget " +
                         std::to_string(pattern_budget));
  std::vector<Weight> ones(static_cast<std::size_t>(n), 1);
  std::vector<Weight> neg(static_cast<std::size_t>(n), -1);
  const Matrix a = to_dense(HonestMatrix(m, ones, neg));
  const int steps = 2 * m - 1;

  SearchResult res;
  res.m = m;
  res.variant = v;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<Value> u(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) u[static_cast<std::size_t>(i)] = Value::of(1);

    PatternRecord rec;
    rec.mask = mask;
    {
      std::string bits(static_cast<std::size_t>(n), '0');
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) bits[static_cast<std::size_t>(i)] = '1';
      rec.pattern = bits;
    }

    std::vector<Value> w = u;
    for (int k = 1; k <= steps; ++k) w = row_times(w, a);
    const CaState lhs = hprime(h_map(w));
    rec.lhs = lhs.bit_string();

    try {
      CaState rhs = hprime(h_map(u));
      for (int k = 1; k <= steps; ++k) rhs = h245(rhs, v);
      rec.rhs = rhs.bit_string();
      rec.holds = lhs == rhs;
    } catch (const Error& e) {
      rec.holds = false;
      rec.note = e.what();
    }
    res.records.push_back(std::move(rec));
  }
  return res;
}

}  // namespace maxplus
