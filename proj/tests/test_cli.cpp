#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "maxplus/bench.hpp"
#include "maxplus/honest.hpp"
#include "maxplus/io.hpp"
#include "maxplus/matrix.hpp"

namespace {

std::string cli_path() {
  const char* p = std::getenv("MAXPLUS_CLI");
  REQUIRE(p != nullptr);
  return p;
}

int run_cli(const std::string& args, const std::string& capture = "") {
  std::string cmd = "\"" + cli_path() + "\" " + args;
  if (capture.empty())
    cmd += " > /dev/null 2>&1";
  else
    cmd += " > " + capture + " 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct TempFiles {
  std::vector<std::string> paths;
  std::string add(const std::string& p) {
    paths.push_back(p);
    return p;
  }
  ~TempFiles() {
    for (const std::string& p : paths) std::remove(p.c_str());
  }
};

}  // namespace

TEST_CASE("cli usage errors") {
  REQUIRE(run_cli("") == 2);
  REQUIRE(run_cli("--help") == 0);
  REQUIRE(run_cli("no-such-command") == 2);
  REQUIRE(run_cli("gen --m 2") == 2);
  REQUIRE(run_cli("gen --m 1 --out cli_never_written.txt") == 2);
  REQUIRE(run_cli("power --in cli_missing_file.txt --k 3 --method naive") == 3);
  REQUIRE(run_cli("jetblack --m 2 --variant bogus") == 2);
}

TEST_CASE("cli generation is deterministic and matches the library") {
  TempFiles tmp;
  const std::string a = tmp.add("cli_gen_a.txt");
  tmp.add(a + ".honest");
  const std::string b = tmp.add("cli_gen_b.txt");
  tmp.add(b + ".honest");

  REQUIRE(run_cli("gen --m 3 --seed 5 --out " + a) == 0);
  REQUIRE(run_cli("gen --m 3 --seed 5 --out " + b) == 0);
  REQUIRE(slurp(a) == slurp(b));
  REQUIRE(slurp(a + ".honest") == slurp(b + ".honest"));

  const maxplus::HonestMatrix h = maxplus::random_honest(3, 5);
  std::ostringstream want;
  maxplus::write_matrix(want, maxplus::to_dense(h));
  REQUIRE(slurp(a) == want.str());
  REQUIRE(maxplus::load_honest(a + ".honest") == h);
}

TEST_CASE("cli power methods agree byte for byte") {
  TempFiles tmp;
  const std::string in = tmp.add("cli_pow_in.txt");
  tmp.add(in + ".honest");
  REQUIRE(run_cli("gen --m 4 --seed 9 --out " + in) == 0);

  const std::string naive_out = tmp.add("cli_pow_naive.txt");
  const std::string ghost_dense = tmp.add("cli_pow_ghost_dense.txt");
  const std::string ghost_compact = tmp.add("cli_pow_ghost_compact.txt");
  REQUIRE(run_cli("power --in " + in + " --k 17 --method naive --out " + naive_out) == 0);
  REQUIRE(run_cli("power --in " + in + " --k 17 --method ghost --out " + ghost_dense) == 0);
  REQUIRE(run_cli("power --in " + in + ".honest --k 17 --method ghost --out " + ghost_compact) ==
          0);
  REQUIRE(slurp(naive_out) == slurp(ghost_dense));
  REQUIRE(slurp(naive_out) == slurp(ghost_compact));

  const std::string stdout_file = tmp.add("cli_pow_stdout.txt");
  REQUIRE(run_cli("power --in " + in + " --k 17", stdout_file) == 0);
  REQUIRE(slurp(stdout_file) == slurp(naive_out));
}

TEST_CASE("cli fast power rejects matrices without the band shape") {
  TempFiles tmp;
  const std::string bad = tmp.add("cli_bad_shape.txt");
  {
    std::ofstream os(bad);
    maxplus::write_matrix(os, maxplus::Matrix(5));
  }
  REQUIRE(run_cli("power --in " + bad + " --k 2 --method ghost") == 2);
  REQUIRE(run_cli("power --in " + bad + " --k 2 --method naive") == 0);
}

TEST_CASE("cli verification") {
  TempFiles tmp;
  const std::string log = tmp.add("cli_verify_log.txt");
  REQUIRE(run_cli("verify --m-min 2 --m-max 3 --seeds 2", log) == 0);
  const std::string text = slurp(log);
  REQUIRE(text.find("verify: ok") != std::string::npos);
  REQUIRE(text.find("FAIL") == std::string::npos);

  const std::string selflog = tmp.add("cli_verify_self.txt");
  REQUIRE(run_cli("verify --m-min 2 --m-max 3 --seeds 2 --self-test", selflog) == 1);
  REQUIRE(slurp(selflog).find("verify: FAILED") != std::string::npos);
}

TEST_CASE("cli benchmarks emit parseable artifacts") {
  TempFiles tmp;
  const std::string csv = tmp.add("cli_bench.csv");
  const std::string plot = tmp.add("cli_bench.gp");
  REQUIRE(run_cli("bench --m 2 3 --seed 1 --csv " + csv + " --plot " + plot) == 0);
  {
    std::ifstream is(csv);
    const std::vector<maxplus::BenchRecord> recs = maxplus::read_csv(is);
    REQUIRE(recs.size() == 4);
    REQUIRE(recs[0].method == "naive");
    REQUIRE(recs[1].method == "ghost");
    REQUIRE(recs[0].checksum == recs[1].checksum);
  }
  REQUIRE(slurp(plot).find("$bench << EOD") != std::string::npos);

  const std::string dcsv = tmp.add("cli_dbench.csv");
  REQUIRE(run_cli("decomp-bench --m 2 --b 3 --csv " + dcsv) == 0);
  {
    std::ifstream is(dcsv);
    const std::vector<maxplus::BenchRecord> recs = maxplus::read_csv(is);
    REQUIRE(recs.size() == 3);
    REQUIRE(recs[2].method == "three-term");
  }

  REQUIRE(run_cli("bench --m 1 --csv " + csv) == 2);
}

TEST_CASE("cli diagram reports") {
  TempFiles tmp;
  const std::string rep = tmp.add("cli_jet.txt");
  REQUIRE(run_cli("jetblack --m 2 --seed 0 --out " + rep) == 0);
  const std::string text = slurp(rep);
  REQUIRE(text.find("poly diagram") != std::string::npos);
  REQUIRE(text.find("verdict: pass") != std::string::npos);
  REQUIRE(text.find("patterns hold") != std::string::npos);
  REQUIRE(text.find("verdict: fail") == std::string::npos);

  const std::string paper = tmp.add("cli_jet_paper.txt");
  REQUIRE(run_cli("jetblack --m 2 --seed 0 --variant paper --out " + paper) == 0);
  REQUIRE(slurp(paper).find("verdict: fail") != std::string::npos);

  const std::string skipped = tmp.add("cli_jet_skip.txt");
  REQUIRE(run_cli("jetblack --m 3 --budget 1 --out " + skipped) == 0);
  REQUIRE(slurp(skipped).find("search skipped") != std::string::npos);
}
