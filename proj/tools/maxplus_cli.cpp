#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxplus/bench.hpp"
#include "maxplus/decomposition.hpp"
#include "maxplus/errors.hpp"
#include "maxplus/ghost.hpp"
#include "maxplus/honest.hpp"
#include "maxplus/io.hpp"
#include "maxplus/jetblack.hpp"
#include "maxplus/matrix.hpp"
#include "maxplus/verify.hpp"

namespace {

// Exit codes: 0 success, 1 verification failure, 2 usage or validation
// error, 3 I/O failure, 4 checksum abort.
constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;
constexpr int kChecksum = 4;

maxplus::RuleVariant parse_variant(const std::string& name) {
  if (name == "paper") return maxplus::RuleVariant::PaperLiteral;
  if (name == "swapped") return maxplus::RuleVariant::Swapped;
  if (name == "run") return maxplus::RuleVariant::RunSemantics;
  throw maxplus::Error("unknown variant '" + name + "', expected paper, swapped, or run");
}

void write_output(const std::optional<std::string>& out, const maxplus::Matrix& m) {
  if (out) {
    maxplus::save_matrix(*out, m);
  } else {
    maxplus::write_matrix(std::cout, m);
  }
}

int cmd_gen(int m, std::uint64_t seed, const std::string& out) {
  const maxplus::HonestMatrix h = maxplus::random_honest(m, seed);
  maxplus::save_matrix(out, maxplus::to_dense(h));
  maxplus::save_honest(out + ".honest", h);
  std::cout << "wrote " << out << " and " << out << ".honest (order " << h.order() << ")\n";
  return kOk;
}

int cmd_power(const std::string& in, int k, const std::string& method,
              const std::optional<std::string>& out) {
  if (method == "naive") {
    const maxplus::Matrix a = maxplus::load_dense_or_honest(in);
    maxplus::Matrix x = a;
    for (int q = 1; q <= k; ++q) x = maxplus::multiply(x, a);
    write_output(out, x);
    return kOk;
  }
  if (method == "ghost") {
    std::ifstream is(in);
    if (!is) throw maxplus::IoError("cannot open '" + in + "' for reading");
    std::string head;
    if (!(is >> head)) throw maxplus::ParseError("empty input file '" + in + "'");
    is.seekg(0);
    const maxplus::HonestMatrix h = head == "honest"
                                        ? maxplus::read_honest(is)
                                        : maxplus::honest_from_dense(maxplus::read_matrix(is));
    write_output(out, maxplus::ghost_power(h, k));
    return kOk;
  }
  throw maxplus::Error("unknown method '" + method + "', expected naive or ghost");
}

int cmd_verify(const maxplus::VerifyOptions& opt) {
  const maxplus::VerifyReport rep = maxplus::run_verify(opt);
  std::cout << rep.to_text();
  return rep.all_pass() ? kOk : kVerifyFailed;
}

void write_records(const std::vector<maxplus::BenchRecord>& records, const std::string& csv,
                   const std::optional<std::string>& plot) {
  std::ofstream os(csv);
  if (!os) throw maxplus::IoError("cannot open '" + csv + "' for writing");
  maxplus::write_csv(os, records);
  os.flush();
  if (!os) throw maxplus::IoError("write to '" + csv + "' failed");
  std::cout << "wrote " << records.size() << " records to " << csv << "\n";
  if (plot) {
    maxplus::emit_plot_script(csv, *plot);
    std::cout << "wrote plot script to " << *plot << "\n";
  }
}

int cmd_jetblack(int m, std::uint64_t seed, const std::string& variant_name,
                 std::uint64_t budget, const std::optional<std::string>& out) {
  const maxplus::RuleVariant variant = parse_variant(variant_name);
  const maxplus::HonestMatrix h = maxplus::random_honest(m, seed);
  std::string text;

  text += "poly diagram (m=" + std::to_string(m) + ", seed=" + std::to_string(seed) + ")\n";
  text += maxplus::diagram_check_poly(h).to_text();

  text += "\nca diagram (variant " + variant_name + ")\n";
  text += maxplus::diagram_check_ca(h, variant).to_text();

  text += "\npattern search (variant " + variant_name + ", budget " + std::to_string(budget) +
          ")\n";
  try {
    const maxplus::SearchResult res = maxplus::conjecture1_search(m, budget, variant);
    std::size_t holding = 0;
    for (const maxplus::PatternRecord& r : res.records) {
      text += r.pattern + " | " + (r.lhs.empty() ? "-" : r.lhs) + " | " +
              (r.rhs.empty() ? "-" : r.rhs) + " | " + (r.holds ? "holds" : "differs");
      if (!r.note.empty()) text += " (" + r.note + ")";
      text += "\n";
      if (r.holds) ++holding;
    }
    text += "total: " + std::to_string(holding) + " of " + std::to_string(res.records.size()) +
            " patterns hold\n";
  } catch (const maxplus::BudgetExceeded& e) {
    text += std::string("search skipped: ") + e.what() + "\n";
  }

  if (out) {
    std::ofstream os(*out);
    if (!os) throw maxplus::IoError("cannot open '" + *out + "' for writing");
    os << text;
    os.flush();
    if (!os) throw maxplus::IoError("write to '" + *out + "' failed");
    std::cout << "wrote report to " << *out << "\n";
  } else {
    std::cout << text;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"max-plus banded-matrix toolkit: generation, fast powers, verification, benchmarks"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a random banded matrix pair of files");
  int gen_m = 2;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--m", gen_m, "order parameter (matrix order is 2m+1)")->required();
  gen->add_option("--seed", gen_seed, "generator seed")->default_val(0);
  gen->add_option("--out", gen_out, "output path (compact form goes to <out>.honest)")
      ->required();

  auto* power = app.add_subcommand("power", "compute the (k+1)-st power X(k) of a matrix");
  std::string power_in;
  int power_k = 0;
  std::string power_method = "ghost";
  std::optional<std::string> power_out;
  power->add_option("--in", power_in, "input matrix file (dense or compact)")->required();
  power->add_option("--k", power_k, "iteration index; X(k) is the (k+1)-st power")->required();
  power->add_option("--method", power_method, "naive | ghost")->default_val("ghost");
  power->add_option("--out", power_out, "output file (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "run the full invariant suite");
  maxplus::VerifyOptions vopt;
  verify->add_option("--m-min", vopt.m_min, "smallest order parameter")->default_val(2);
  verify->add_option("--m-max", vopt.m_max, "largest order parameter")->default_val(6);
  verify->add_option("--seeds", vopt.seeds, "seeds per order parameter")->default_val(5);
  verify->add_flag("--self-test", vopt.self_test,
                   "inject a wrong frozen value to prove failures are detected");

  auto* bench = app.add_subcommand("bench", "time the plain product fold against the fast method");
  maxplus::BenchConfig bcfg;
  std::string bench_csv;
  std::optional<std::string> bench_plot;
  bench->add_option("--m", bcfg.ms, "order parameters to sweep")->required()->expected(-1);
  bench->add_option("--seed", bcfg.seeds, "seeds per order parameter (default 0)");
  bench->add_option("--beta", bcfg.beta, "periods to run: k_max = beta(2m+1)-1")->default_val(1);
  bench->add_option("--reps", bcfg.reps, "timed repetitions (median reported)")->default_val(3);
  bench->add_option("--warmup", bcfg.warmup, "discarded warmup runs")->default_val(1);
  bench->add_option("--csv", bench_csv, "output CSV path")->required();
  bench->add_option("--plot", bench_plot, "also emit a gnuplot script here");

  auto* dbench = app.add_subcommand(
      "decomp-bench", "time D-power methods: product fold, decomposition, banded fold");
  maxplus::BenchConfig dcfg;
  std::string dbench_csv;
  std::optional<std::string> dbench_plot;
  std::optional<maxplus::Weight> dbench_b;
  dbench->add_option("--m", dcfg.ms, "order parameters to sweep")->required()->expected(-1);
  dbench->add_option("--seed", dcfg.seeds, "seeds per order parameter (default 0)");
  dbench->add_option("--beta", dcfg.beta, "periods to run: k_max = beta(2m+1)-1")->default_val(1);
  dbench->add_option("--reps", dcfg.reps, "timed repetitions (median reported)")->default_val(3);
  dbench->add_option("--warmup", dcfg.warmup, "discarded warmup runs")->default_val(1);
  dbench->add_option("--b", dbench_b, "diagonal weight of D (defaults to m)");
  dbench->add_option("--csv", dbench_csv, "output CSV path")->required();
  dbench->add_option("--plot", dbench_plot, "also emit a gnuplot script here");

  auto* jet = app.add_subcommand("jetblack",
                                 "polynomial and automaton diagrams plus the pattern search");
  int jet_m = 2;
  std::uint64_t jet_seed = 0;
  std::string jet_variant = "run";
  std::uint64_t jet_budget = std::uint64_t(1) << 20;
  std::optional<std::string> jet_out;
  jet->add_option("--m", jet_m, "order parameter")->required();
  jet->add_option("--seed", jet_seed, "seed for the diagram matrix")->default_val(0);
  jet->add_option("--variant", jet_variant, "automaton reading: paper | swapped | run")
      ->default_val("run");
  jet->add_option("--budget", jet_budget, "pattern budget for the search (2^(2m+1) needed)")
      ->default_val(std::uint64_t(1) << 20);
  jet->add_option("--out", jet_out, "report file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_m, gen_seed, gen_out);
    if (power->parsed()) return cmd_power(power_in, power_k, power_method, power_out);
    if (verify->parsed()) return cmd_verify(vopt);
    if (bench->parsed()) {
      if (bcfg.seeds.empty()) bcfg.seeds.push_back(0);
      write_records(maxplus::run_power_bench(bcfg), bench_csv, bench_plot);
      return kOk;
    }
    if (dbench->parsed()) {
      if (dcfg.seeds.empty()) dcfg.seeds.push_back(0);
      write_records(maxplus::run_dpower_bench(dcfg, dbench_b), dbench_csv, dbench_plot);
      return kOk;
    }
    if (jet->parsed()) return cmd_jetblack(jet_m, jet_seed, jet_variant, jet_budget, jet_out);
  } catch (const maxplus::ChecksumMismatch& e) {
    std::cerr << "checksum abort: " << e.what() << "\n";
    return kChecksum;
  } catch (const maxplus::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const maxplus::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
