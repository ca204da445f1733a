#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "maxplus/decomposition.hpp"
#include "maxplus/errors.hpp"
#include "maxplus/ghost.hpp"
#include "maxplus/honest.hpp"
#include "maxplus/io.hpp"
#include "maxplus/matrix.hpp"

namespace maxplus {

// Order-independent fold of a result matrix: wrapping sum of the finite
// entries plus the count of eps entries. Two matrices with equal checksums
// are not proven equal, but every method must produce the same checksum
// before any of its timings are reported.
struct Checksum {
  std::uint64_t finite_sum = 0;
  std::uint64_t eps_count = 0;

  friend bool operator==(const Checksum& x, const Checksum& y) {
    return x.finite_sum == y.finite_sum && x.eps_count == y.eps_count;
  }
  friend bool operator!=(const Checksum& x, const Checksum& y) { return !(x == y); }

  std::string str() const {
    std::ostringstream os;
    os << std::hex << finite_sum << std::dec << ":" << eps_count;
    return os.str();
  }

  static Checksum parse(const std::string& s) {
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("bad checksum '" + s + "'");
    Checksum c;
    try {
      std::size_t used = 0;
      c.finite_sum = std::stoull(s.substr(0, colon), &used, 16);
      if (used != colon) throw ParseError("bad checksum '" + s + "'");
      c.eps_count = std::stoull(s.substr(colon + 1), &used, 10);
      if (used != s.size() - colon - 1) throw ParseError("bad checksum '" + s + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("bad checksum '" + s + "'");
    }
    return c;
  }
};

inline Checksum checksum_of(const Matrix& m) {
  Checksum c;
  for (int i = 1; i <= m.n(); ++i)
    for (int j = 1; j <= m.n(); ++j) {
      const Value v = m.at(i, j);
      if (v.finite())
        c.finite_sum += static_cast<std::uint64_t>(v.get());
      else
        ++c.eps_count;
    }
  return c;
}

struct BenchRecord {
  int m = 0;
  std::uint64_t seed = 0;
  std::string method;
  int k_max = 0;
  int reps = 0;
  std::int64_t median_ns = 0;
  Checksum checksum;

  friend bool operator==(const BenchRecord& x, const BenchRecord& y) {
    return x.m == y.m && x.seed == y.seed && x.method == y.method && x.k_max == y.k_max &&
           x.reps == y.reps && x.median_ns == y.median_ns && x.checksum == y.checksum;
  }
};

struct BenchConfig {
  std::vector<int> ms;
  std::vector<std::uint64_t> seeds;
  int beta = 1;
  int reps = 3;
  int warmup = 1;

  // beta periods minus the starting matrix; beta = 1 is one pre-period
  // sweep ending at index 2m.
  int k_max_for(int m) const { return beta * (2 * m + 1) - 1; }

  void validate() const {
    if (ms.empty()) throw BadLength("benchmark needs at least one m");
    if (seeds.empty()) throw BadLength("benchmark needs at least one seed");
    for (int m : ms)
      if (m < 2) throw BadOrder("benchmark m must be at least 2, got " + std::to_string(m));
    if (beta < 1) throw BadOrder("beta must be at least 1, got " + std::to_string(beta));
    if (reps < 3) throw BadOrder("need at least 3 reps for a median, got " + std::to_string(reps));
    if (warmup < 1) throw BadOrder("need at least 1 warmup run, got " + std::to_string(warmup));
  }
};

namespace detail {

inline std::int64_t median_of(std::vector<std::int64_t> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return (xs[n / 2 - 1] + xs[n / 2]) / 2;
}

// Times reps full runs of body after warmup discards; the fold of each run's
// result is computed outside the timed region and must not drift across
// reps. Single-threaded by construction.
template <typename F>
std::pair<std::int64_t, Checksum> measure(F&& body, int reps, int warmup) {
  for (int i = 0; i < warmup; ++i) (void)body();
  std::vector<std::int64_t> ns;
  ns.reserve(static_cast<std::size_t>(reps));
  std::optional<Checksum> ref;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    const Matrix result = body();
    const auto t1 = std::chrono::steady_clock::now();
    const Checksum c = checksum_of(result);
    if (ref && c != *ref)
      throw ChecksumMismatch("rep " + std::to_string(r + 1) + " produced checksum " + c.str() +
                             ", previous reps produced " + ref->str());
    ref = c;
    ns.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
  }
  return {median_of(std::move(ns)), *ref};
}

}  // namespace detail

// Times X(1)..X(k_max) for the plain product fold and for the fast method,
// per (m, seed) cell. The fast method's checksum is compared against the
// fold's before either record is appended; a mismatch aborts the run.
inline std::vector<BenchRecord> run_power_bench(const BenchConfig& cfg) {
  cfg.validate();
  std::vector<BenchRecord> out;
  for (int m : cfg.ms)
    for (std::uint64_t seed : cfg.seeds) {
      const HonestMatrix h = random_honest(m, seed);
      const Matrix a = to_dense(h);
      const int k_max = cfg.k_max_for(m);

      const auto naive = detail::measure(
          [&] {
            Matrix x = a;
            for (int q = 1; q <= k_max; ++q) x = multiply(x, a);
            return x;
          },
          cfg.reps, cfg.warmup);
      const auto ghost = detail::measure([&] { return ghost_power(h, k_max); }, cfg.reps,
                                         cfg.warmup);
      if (ghost.second != naive.second)
        throw ChecksumMismatch("fast method checksum " + ghost.second.str() +
                               " != reference checksum " + naive.second.str() + " at m = " +
                               std::to_string(m) + ", seed = " + std::to_string(seed));

      out.push_back(BenchRecord{m, seed, "naive", k_max, cfg.reps, naive.first, naive.second});
      out.push_back(BenchRecord{m, seed, "ghost", k_max, cfg.reps, ghost.first, ghost.second});
    }
  return out;
}

// Same protocol for powers of D = diag(b) max A, with three methods: the
// product fold, the decomposition (one fast-power sweep shared by all
// exponents, then an entrywise fold per exponent), and the banded three-term
// fold. b defaults to m when unset.
inline std::vector<BenchRecord> run_dpower_bench(const BenchConfig& cfg,
                                                 std::optional<Weight> b_flag = std::nullopt) {
  cfg.validate();
  std::vector<BenchRecord> out;
  for (int m : cfg.ms)
    for (std::uint64_t seed : cfg.seeds) {
      const HonestMatrix h = random_honest(m, seed);
      const int n = h.order();
      const Weight b = b_flag.value_or(static_cast<Weight>(m));
      const Matrix d = add(scalar_diag(n, b), to_dense(h));
      const int k_max = cfg.k_max_for(m);

      const auto naive = detail::measure(
          [&] {
            Matrix z = d;
            for (int q = 1; q <= k_max; ++q) z = multiply(z, d);
            return z;
          },
          cfg.reps, cfg.warmup);

      const auto decomposed = detail::measure(
          [&] {
            std::vector<Matrix> ap;
            ap.reserve(static_cast<std::size_t>(k_max) + 1);
            GhostState s = make_ghost(h);
            ap.push_back(s.x);
            for (int q = 1; q <= k_max; ++q) {
              s = advance(std::move(s));
              ap.push_back(s.x);
            }
            Matrix z = d;
            for (int p = 2; p <= k_max + 1; ++p) {
              Matrix acc = scalar_diag(n, static_cast<Weight>(p) * b);
              for (int k = 1; k <= p; ++k) {
                const Matrix& a_k = ap[static_cast<std::size_t>(k) - 1];
                acc = add(acc, k == p ? a_k : scalar_shift(a_k, static_cast<Weight>(p - k) * b));
              }
              z = std::move(acc);
            }
            return z;
          },
          cfg.reps, cfg.warmup);

      const auto three = detail::measure(
          [&] {
            Matrix z = d;
            for (int q = 1; q <= k_max; ++q) z = three_term_update(z, d);
            return z;
          },
          cfg.reps, cfg.warmup);

      for (const auto* r : {&decomposed, &three})
        if (r->second != naive.second)
          throw ChecksumMismatch("method checksum " + r->second.str() +
                                 " != reference checksum " + naive.second.str() + " at m = " +
                                 std::to_string(m) + ", seed = " + std::to_string(seed));

      out.push_back(BenchRecord{m, seed, "naive", k_max, cfg.reps, naive.first, naive.second});
      out.push_back(
          BenchRecord{m, seed, "decomposed", k_max, cfg.reps, decomposed.first, decomposed.second});
      out.push_back(BenchRecord{m, seed, "three-term", k_max, cfg.reps, three.first, three.second});
    }
  return out;
}

inline const char* kCsvHeader = "m,seed,method,k_max,reps,median_ns,checksum";

inline void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << kCsvHeader << "\n";
  for (const BenchRecord& r : records)
    os << r.m << ',' << r.seed << ',' << r.method << ',' << r.k_max << ',' << r.reps << ','
       << r.median_ns << ',' << r.checksum.str() << "\n";
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

inline std::vector<BenchRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw ParseError("CSV header '" + line + "' is missing columns, expected '" + kCsvHeader +
                     "'");
  std::vector<BenchRecord> out;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw ParseError("CSV row has " + std::to_string(f.size()) +
                                        " fields, expected 7: '" + line + "'");
    BenchRecord r;
    try {
      r.m = std::stoi(f[0]);
      r.seed = std::stoull(f[1]);
      r.method = f[2];
      r.k_max = std::stoi(f[3]);
      r.reps = std::stoi(f[4]);
      r.median_ns = std::stoll(f[5]);
    } catch (const std::exception&) {
      throw ParseError("bad CSV row '" + line + "'");
    }
    r.checksum = Checksum::parse(f[6]);
    out.push_back(std::move(r));
  }
  return out;
}

// Emits a self-contained gnuplot script with the data inlined: time-vs-m
// lines per method, and the naive-minus-ghost error line when both of those
// methods are present. Times are medians across seeds. No image is rendered
// here; the script is the artifact.
inline void emit_plot_script(const std::string& csv_path, const std::string& out_path) {
  std::ifstream is(csv_path);
  if (!is) throw IoError("cannot open '" + csv_path + "' for reading");
  const std::vector<BenchRecord> records = read_csv(is);

  std::map<std::string, std::map<int, std::vector<std::int64_t>>> by_method;
  for (const BenchRecord& r : records) by_method[r.method][r.m].push_back(r.median_ns);

  std::vector<std::string> methods;
  for (const char* want : {"naive", "ghost", "decomposed", "three-term"})
    if (by_method.count(want)) methods.push_back(want);
  for (const auto& [name, _] : by_method)
    if (std::find(methods.begin(), methods.end(), name) == methods.end())
      methods.push_back(name);

  const bool error_line = by_method.count("naive") && by_method.count("ghost");

  std::vector<int> ms;
  for (const auto& [_, per_m] : by_method)
    for (const auto& [m, __] : per_m)
      if (std::find(ms.begin(), ms.end(), m) == ms.end()) ms.push_back(m);
  std::sort(ms.begin(), ms.end());

  std::ostringstream os;
  os << "# generated from " << csv_path << "\n";
  os << "set terminal pngcairo size 960,640\n";
  os << "set output '" << out_path << ".png'\n";
  os << "set xlabel 'm'\n";
  os << "set ylabel 'median time [ns]'\n";
  os << "set logscale y\n";
  os << "set key top left\n";
  os << "set grid\n";
  os << "set datafile missing '?'\n";
  os << "$bench << EOD\n";
  os << "# m";
  for (const std::string& name : methods) os << ' ' << name;
  if (error_line) os << " naive-minus-ghost";
  os << "\n";
  for (int m : ms) {
    os << m;
    std::map<std::string, std::int64_t> med;
    for (const std::string& name : methods) {
      const auto& per_m = by_method[name];
      const auto it = per_m.find(m);
      if (it == per_m.end()) {
        os << " ?";
      } else {
        med[name] = detail::median_of(it->second);
        os << ' ' << med[name];
      }
    }
    if (error_line) {
      if (med.count("naive") && med.count("ghost"))
        os << ' ' << med["naive"] - med["ghost"];
      else
        os << " ?";
    }
    os << "\n";
  }
  os << "EOD\n";

  const auto color = [](const std::string& name) -> std::string {
    if (name == "naive") return "red";
    if (name == "ghost" || name == "decomposed") return "blue";
    if (name == "three-term") return "green";
    return "purple";
  };

  if (ms.empty()) {
    os << "unset logscale y\n";
    os << "plot 0 with lines lc rgb 'gray' title 'no data'\n";
  } else {
    os << "plot ";
    int col = 2;
    bool first = true;
    for (const std::string& name : methods) {
      if (!first) os << ", \\\n     ";
      os << "$bench using 1:" << col++ << " with linespoints lw 2 lc rgb '" << color(name)
         << "' title '" << name << "'";
      first = false;
    }
    if (error_line) {
      os << ", \\\n     $bench using 1:" << col << " with linespoints lw 2 lc rgb 'green'"
         << " title 'naive - ghost'";
    }
    os << "\n";
  }

  std::ofstream ofs(out_path);
  if (!ofs) throw IoError("cannot open '" + out_path + "' for writing");
  ofs << os.str();
  ofs.flush();
  if (!ofs) throw IoError("write to '" + out_path + "' failed");
}

}  // namespace maxplus
