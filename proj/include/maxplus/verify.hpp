#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "maxplus/bench.hpp"
#include "maxplus/decomposition.hpp"
#include "maxplus/errors.hpp"
#include "maxplus/ghost.hpp"
#include "maxplus/graph.hpp"
#include "maxplus/honest.hpp"
#include "maxplus/io.hpp"
#include "maxplus/jetblack.hpp"
#include "maxplus/matrix.hpp"
#include "maxplus/rng.hpp"

namespace maxplus {

struct VerifyOptions {
  int m_min = 2;
  int m_max = 6;
  int seeds = 5;
  // Deliberately breaks one frozen expected value, to prove the harness can
  // fail.
  bool self_test = false;
};

struct VerifyLine {
  std::string name;
  bool pass = true;
  // Findings are reported but never gate the exit status.
  bool gating = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyLine> lines;

  bool all_pass() const {
    for (const VerifyLine& l : lines)
      if (l.gating && !l.pass) return false;
    return true;
  }

  std::string to_text() const {
    std::string out;
    for (const VerifyLine& l : lines) {
      out += l.gating ? (l.pass ? "PASS " : "FAIL ") : "INFO ";
      out += l.name;
      if (!l.detail.empty()) out += ": " + l.detail;
      out += "\n";
    }
    out += std::string("verify: ") + (all_pass() ? "ok" : "FAILED") + "\n";
    return out;
  }
};

namespace detail {

inline void fail(VerifyLine& line, const std::string& msg) {
  if (line.pass) line.detail = msg;
  line.pass = false;
}

inline void check(VerifyLine& line, bool cond, const std::string& msg) {
  if (!cond) fail(line, msg);
}

template <typename F>
void run_line(VerifyReport& rep, const std::string& name, bool gating, F&& body) {
  VerifyLine line{name, true, gating, ""};
  try {
    body(line);
  } catch (const std::exception& e) {
    fail(line, std::string("exception: ") + e.what());
  }
  rep.lines.push_back(std::move(line));
}

inline Matrix random_dense(int n, SplitMix64& rng) {
  Matrix m(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (rng.next() % 4 != 0) m.at(i, j) = Value::of(rng.range(-50, 50));
  return m;
}

inline Value random_value(SplitMix64& rng) {
  if (rng.next() % 5 == 0) return Value::eps();
  return Value::of(rng.range(-1000, 1000));
}

// The 3x3 worked example used by the support and product checks: one column
// holds two finite entries, so its support is 2.
inline Matrix support_example() {
  Matrix b(3);
  b.at(1, 1) = Value::of(3);
  b.at(1, 3) = Value::of(4);
  b.at(2, 2) = Value::of(1);
  b.at(2, 3) = Value::of(-2);
  return b;
}

}  // namespace detail

inline VerifyReport run_verify(const VerifyOptions& opt) {
  using detail::check;
  using detail::fail;
  VerifyReport rep;
  if (opt.m_min < 2 || opt.m_max < opt.m_min)
    throw BadOrder("verify range needs 2 <= m_min <= m_max");
  if (opt.seeds < 1) throw BadOrder("verify needs at least 1 seed");

  std::vector<std::uint64_t> seeds;
  for (int s = 0; s < opt.seeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s));

  detail::run_line(rep, "semiring-laws", true, [&](VerifyLine& line) {
    SplitMix64 rng(101);
    const Value zero = Value::eps();
    const Value one = Value::of(0);
    for (int t = 0; t < 500; ++t) {
      const Value x = detail::random_value(rng);
      const Value y = detail::random_value(rng);
      const Value z = detail::random_value(rng);
      check(line, x + y == y + x, "max not commutative");
      check(line, (x + y) + z == x + (y + z), "max not associative");
      check(line, x + x == x, "max not idempotent");
      check(line, x + zero == x, "eps not neutral for max");
      check(line, x * y == y * x, "plus not commutative");
      check(line, (x * y) * z == x * (y * z), "plus not associative");
      check(line, x * zero == zero, "eps not absorbing");
      check(line, x * one == x, "0 not neutral for plus");
      check(line, x * (y + z) == x * y + x * z, "no left distributivity");
      check(line, (y + z) * x == y * x + z * x, "no right distributivity");
    }
    line.detail = "500 random triples";
  });

  detail::run_line(rep, "matmul-associativity", true, [&](VerifyLine& line) {
    SplitMix64 rng(102);
    int cases = 0;
    for (int n = 4; n <= 8; ++n)
      for (int t = 0; t < 3; ++t) {
        const Matrix p = detail::random_dense(n, rng);
        const Matrix q = detail::random_dense(n, rng);
        const Matrix r = detail::random_dense(n, rng);
        check(line, multiply(multiply(p, q), r) == multiply(p, multiply(q, r)),
              "associativity broken at n = " + std::to_string(n));
        ++cases;
      }
    line.detail = std::to_string(cases) + " random triples";
  });

  detail::run_line(rep, "power-additivity", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m) {
      const Matrix a = to_dense(random_honest(m, 7));
      for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q)
          check(line,
                power_naive(a, p + q) == multiply(power_naive(a, p), power_naive(a, q)),
                "power additivity broken at m = " + std::to_string(m));
    }
    line.detail = "p, q in [1,3]";
  });

  detail::run_line(rep, "support-values", true, [&](VerifyLine& line) {
    const Matrix b = detail::support_example();
    check(line, support(b) == 2, "worked 3x3 example support != 2");
    const Value prod = multiply(b, b).at(1, 1);
    const Value want = opt.self_test ? Value::of(7) : Value::of(6);
    check(line, prod == want, "worked 3x3 product entry mismatch");
    for (int m = opt.m_min; m <= opt.m_max; ++m)
      for (std::uint64_t s : seeds) {
        const Matrix a = to_dense(random_honest(m, s));
        check(line, support(a) == 2 && min_column_support(a) == 2,
              "honest column support != 2 at m = " + std::to_string(m));
      }
    if (opt.self_test && line.pass)
      fail(line, "injected fault was not detected");
    else if (opt.self_test)
      line.detail += " (expected: --self-test injects a wrong frozen value)";
  });

  detail::run_line(rep, "window-sparsity", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m)
      for (std::uint64_t s : seeds) {
        const HonestMatrix h = random_honest(m, s);
        const int n = h.order();
        GhostState st = make_ghost(h);
        for (int k = 1; k <= m - 1; ++k) {
          st = windowed_update(std::move(st));
          const Window w = window(h, k);
          for (int i = 1; i <= n; ++i) {
            const auto cols = w.row_columns(i);
            int finite = 0;
            for (int j = 1; j <= n; ++j)
              if (st.x.at(i, j).finite()) ++finite;
            check(line, finite == k + 2,
                  "row finite count != k+2 at m=" + std::to_string(m) + " k=" + std::to_string(k));
            for (int j : cols)
              check(line, st.x.at(i, j).finite(),
                    "predicted window column is eps at m=" + std::to_string(m));
          }
        }
      }
  });

  detail::run_line(rep, "oracle-equivalence", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m)
      for (std::uint64_t s : seeds) {
        const HonestMatrix h = random_honest(m, s);
        const Matrix a = to_dense(h);
        const int k_max = 3 * h.order() - 1;
        GhostState st = make_ghost(h);
        Matrix oracle = a;
        for (int k = 1; k <= k_max; ++k) {
          st = advance(std::move(st));
          oracle = multiply(oracle, a);
          if (st.x != oracle) {
            fail(line, "fast power != product fold at m=" + std::to_string(m) +
                           " seed=" + std::to_string(s) + " k=" + std::to_string(k));
            return;
          }
        }
      }
    line.detail = "k up to 3(2m+1)-1, bit-exact";
  });

  detail::run_line(rep, "short-cycle-law", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m) {
      const HonestMatrix h = random_honest(m, 11);
      const Matrix a = to_dense(h);
      Matrix p = a;
      for (int k = 1; k <= m; ++k) {
        if (k > 1) p = multiply(p, a);
        for (int i = 1; i <= h.order(); ++i)
          check(line, !p.at(i, i).finite(),
                "diagonal finite at power " + std::to_string(k) + ", m = " + std::to_string(m));
      }
      if (m <= 4) {
        const PrecedenceGraph g = build_graph(a);
        for (int i = 1; i <= h.order(); ++i)
          for (int k = 1; k <= m; ++k)
            check(line, enumerate_paths(g, i, i, k, 1 << 12).empty(),
                  "closed walk of length <= m found at m = " + std::to_string(m));
      }
    }
  });

  detail::run_line(rep, "cycle-census", true, [&](VerifyLine& line) {
    for (int m = 2; m <= 3; ++m) {
      if (m < opt.m_min || m > opt.m_max) continue;
      const HonestMatrix h = random_honest(m, 13);
      const int n = h.order();
      const PrecedenceGraph g = build_graph(to_dense(h));
      for (int i = 1; i <= n; ++i) {
        const auto paths = enumerate_paths(g, i, i, n, 1 << 16);
        check(line, paths.size() == 2,
              "cycle count through vertex " + std::to_string(i) + " != 2");
        const Value best = max_cycle_weight(g, i, n);
        check(line, best == Value::of(top_cycle_weight(h)), "best cycle weight != L");
        for (const Path& p : paths) {
          if (Value::of(p.weight) != best) continue;
          for (std::size_t t = 0; t + 1 < p.vertices.size(); ++t)
            check(line, p.vertices[t + 1] != idx(p.vertices[t] + 2, n),
                  "maximizing cycle uses a two-step edge");
        }
      }
    }
    line.detail = opt.m_min > 3 ? "skipped (range excludes m <= 3)" : "m in {2,3}, every vertex";
  });

  detail::run_line(rep, "diagonal-laws", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m)
      for (std::uint64_t s : seeds) {
        const HonestMatrix h = random_honest(m, s);
        const Matrix a = to_dense(h);
        const int n = h.order();
        const Weight L = top_cycle_weight(h);
        const GhostState st = ghost_run(h, 2 * m);
        Matrix oracle = power_naive(a, 2 * m + 1);
        for (int i = 1; i <= n; ++i)
          check(line, oracle.at(i, i) == Value::of(L), "one-period diagonal != L");
        if (st.apex == Apex::Holds) {
          for (int alpha = 2; alpha <= 3; ++alpha) {
            oracle = multiply(power_naive(a, n), oracle);
            for (int i = 1; i <= n; ++i)
              check(line, oracle.at(i, i) == Value::of(static_cast<Weight>(alpha) * L),
                    "multi-period diagonal != alpha L at alpha = " + std::to_string(alpha));
          }
        }
      }
    line.detail = "checked on the product-fold oracle";
  });

  detail::run_line(rep, "perfectness", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m)
      for (std::uint64_t s : seeds) {
        const Matrix a = to_dense(random_honest(m, s));
        const auto p = perfect_index(a, 3 * m);
        check(line, p.has_value() && *p == 2 * m,
              "first all-finite power != 2m at m = " + std::to_string(m));
        check(line, !power_naive(a, 2 * m - 1).at(1, 4).finite(),
              "entry (1,4) finite one power early at m = " + std::to_string(m));
      }
  });

  detail::run_line(rep, "rotation-invariance", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= std::min(opt.m_max, 5); ++m) {
      const Matrix a = to_dense(random_honest(m, 17));
      const int n = a.n();
      check(line, rotate_labels(a, 0) == a, "rotation by 0 is not the identity");
      check(line, rotate_labels(rotate_labels(a, 2), n - 2) == a, "rotation does not invert");
      for (int r : {1, 2, m})
        for (int k = 1; k <= n; ++k) {
          const Matrix lhs = power_naive(rotate_labels(a, r), k);
          const Matrix rhs = rotate_labels(power_naive(a, k), r);
          bool same = true;
          for (int i = 1; i <= n && same; ++i)
            for (int j = 1; j <= n && same; ++j)
              same = lhs.at(i, j).finite() == rhs.at(i, j).finite();
          check(line, same, "finite pattern does not commute with rotation");
        }
    }
  });

  detail::run_line(rep, "decomposition-three-way", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m)
      for (std::uint64_t s : seeds) {
        const HonestMatrix h = random_honest(m, s);
        const int n = h.order();
        for (Weight b : {Weight(1), Weight(m), Weight(50)}) {
          const Matrix d = add(scalar_diag(n, b), to_dense(h));
          Matrix naive = d;
          Matrix banded = d;
          for (int p = 1; p <= 2 * n; ++p) {
            if (p > 1) {
              naive = multiply(naive, d);
              banded = three_term_update(banded, d);
            }
            const Matrix dec = d_power_decomposed(h, b, p);
            if (naive != dec || naive != banded) {
              fail(line, "three-way power disagreement at m=" + std::to_string(m) +
                             " b=" + std::to_string(b) + " p=" + std::to_string(p));
              return;
            }
          }
        }
      }
    line.detail = "b in {1, m, 50}, exponents up to 2(2m+1)";
  });

  detail::run_line(rep, "commutation", true, [&](VerifyLine& line) {
    SplitMix64 rng(103);
    for (int t = 0; t < 100; ++t) {
      const int n = 2 + static_cast<int>(rng.next() % 7);
      const Matrix p = detail::random_dense(n, rng);
      check(line, commute_check(p, rng.range(-20, 20)), "scalar diagonal does not commute");
    }
    for (int m = opt.m_min; m <= opt.m_max; ++m)
      check(line, commute_check(to_dense(random_honest(m, 19)), m), "honest commutation failed");
    line.detail = "100 random dense + honest range";
  });

  detail::run_line(rep, "poly-diagram", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m)
      for (std::uint64_t s : seeds) {
        const DiagramReport r = diagram_check_poly(random_honest(m, s));
        check(line, r.pass, "polynomial diagram failed at m = " + std::to_string(m) +
                                (r.note.empty() ? "" : " (" + r.note + ")"));
      }
  });

  detail::run_line(rep, "exponent-run-law", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m) {
      const Matrix a = to_dense(random_honest(m, 23));
      const int n = a.n();
      std::vector<Value> u = a.row(1);
      for (int p = 1; p <= 2 * m; ++p) {
        if (p > 1) u = row_times(u, a);
        const F2Poly poly = h_map(u);
        F2Poly want(m);
        for (int e = p; e <= 2 * p; ++e) want.assign(e, true);
        check(line, poly == want,
              "first-row support is not the run [p, 2p] at p = " + std::to_string(p));
      }
    }
    line.detail = "supp of encoded first row of the p-th power is the run [p, 2p]";
  });

  detail::run_line(rep, "ca-mirror", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m) {
      const Matrix a = to_dense(random_honest(m, 29));
      F2Poly poly = h_map(a.row(1));
      CaState st = hprime(poly);
      for (int j = 1; j <= 2 * m - 1; ++j) {
        poly = g_rule(poly);
        st = h245(st, RuleVariant::RunSemantics);
        check(line, st == hprime(poly),
              "run-semantics automaton diverges from the polynomial rule at step " +
                  std::to_string(j));
      }
    }
  });

  detail::run_line(rep, "ca-verdicts", false, [&](VerifyLine& line) {
    std::string summary;
    for (int m = opt.m_min; m <= opt.m_max; ++m) {
      const HonestMatrix h = random_honest(m, 31);
      summary += "m=" + std::to_string(m) + "[";
      bool first = true;
      for (RuleVariant v :
           {RuleVariant::PaperLiteral, RuleVariant::Swapped, RuleVariant::RunSemantics}) {
        const DiagramReport r = diagram_check_ca(h, v);
        if (!first) summary += " ";
        summary += std::string(variant_name(v)) + "=" + (r.pass ? "pass" : "fail");
        first = false;
      }
      summary += "] ";
    }
    line.detail = summary;
  });

  detail::run_line(rep, "apex-frequency", false, [&](VerifyLine& line) {
    int holds = 0;
    int total = 0;
    for (int m = opt.m_min; m <= opt.m_max; ++m)
      for (std::uint64_t s : seeds) {
        const GhostState st = ghost_run(random_honest(m, s), 2 * m);
        if (st.apex == Apex::Holds) ++holds;
        ++total;
      }
    line.detail = std::to_string(holds) + "/" + std::to_string(total) +
                  " matrices satisfy the one-period cap";
  });

  detail::run_line(rep, "work-bound", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m) {
      const HonestMatrix h = random_honest(m, 37);
      const std::uint64_t n = static_cast<std::uint64_t>(h.order());
      const int k_max = 3 * h.order() - 1;
      const GhostState st = ghost_run(h, k_max);
      std::uint64_t evals = 0;
      std::uint64_t writes = 0;
      for (int next = 1; next <= k_max; ++next) {
        if (next <= m - 1) {
          evals += static_cast<std::uint64_t>(next + 2) * n;
        } else if (next == 2 * m) {
          evals += n * n - n;
          writes += n;
        } else if (next > 2 * m && (next + 1) % h.order() == 0) {
          if (st.apex == Apex::Holds) {
            evals += n * n - n;
            writes += n;
          } else {
            evals += n * n;
          }
        } else {
          evals += n * n;
        }
      }
      check(line, st.stats.two_term_evals == evals && st.stats.shortcut_writes == writes,
            "step cost accounting mismatch at m = " + std::to_string(m) + " (got " +
                std::to_string(st.stats.two_term_evals) + "/" +
                std::to_string(st.stats.shortcut_writes) + ", want " + std::to_string(evals) +
                "/" + std::to_string(writes) + ")");
    }
    line.detail = "windowed steps touch only (k+2)(2m+1) entries";
  });

  detail::run_line(rep, "shortcut-audit", true, [&](VerifyLine& line) {
    for (int m = opt.m_min; m <= opt.m_max; ++m)
      for (std::uint64_t s : seeds) {
        const GhostState st = ghost_run(random_honest(m, s), 3 * (2 * m + 1) - 1, true);
        for (const std::string& f : st.findings) fail(line, f);
      }
    line.detail = "diagonal shortcuts recomputed the slow way";
  });

  detail::run_line(rep, "format-round-trip", true, [&](VerifyLine& line) {
    SplitMix64 rng(41);
    for (int t = 0; t < 20; ++t) {
      const Matrix m = detail::random_dense(2 + static_cast<int>(rng.next() % 9), rng);
      std::stringstream ss;
      write_matrix(ss, m);
      check(line, read_matrix(ss) == m, "dense matrix round trip changed the matrix");
    }
    for (int m = opt.m_min; m <= opt.m_max; ++m) {
      const HonestMatrix h = random_honest(m, 43);
      std::stringstream ss;
      write_honest(ss, h);
      check(line, read_honest(ss) == h, "compact form round trip changed the matrix");
    }
    std::vector<BenchRecord> recs;
    recs.push_back(BenchRecord{2, 0, "naive", 4, 3, 12345, Checksum{0xabcdef, 3}});
    recs.push_back(BenchRecord{3, 9, "ghost", 6, 5, 999, Checksum{17, 0}});
    std::stringstream ss;
    write_csv(ss, recs);
    check(line, read_csv(ss) == recs, "CSV round trip changed the records");
  });

  return rep;
}

}  // namespace maxplus
