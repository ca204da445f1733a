#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "maxplus/bench.hpp"
#include "maxplus/errors.hpp"
#include "maxplus/matrix.hpp"

using maxplus::BenchConfig;
using maxplus::BenchRecord;
using maxplus::Checksum;
using maxplus::Matrix;
using maxplus::Value;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path(name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("result folds") {
  REQUIRE(maxplus::checksum_of(Matrix(3)) == Checksum{0, 9});

  Matrix m(2);
  m.at(1, 1) = Value::of(5);
  m.at(2, 1) = Value::of(-2);
  const Checksum c = maxplus::checksum_of(m);
  REQUIRE(c.finite_sum == 3);
  REQUIRE(c.eps_count == 2);
  REQUIRE(c.str() == "3:2");

  m.at(1, 2) = Value::of(255);
  REQUIRE(maxplus::checksum_of(m).str() == "102:1");

  REQUIRE(Checksum::parse("102:1") == Checksum{258, 1});
  REQUIRE(Checksum::parse(Checksum{0xdeadbeef, 7}.str()) == Checksum{0xdeadbeef, 7});
  REQUIRE_THROWS_AS(Checksum::parse("123"), maxplus::ParseError);
  REQUIRE_THROWS_AS(Checksum::parse("xyz:1"), maxplus::ParseError);
  REQUIRE_THROWS_AS(Checksum::parse("12:3b"), maxplus::ParseError);
}

TEST_CASE("bench configuration checks") {
  BenchConfig cfg;
  cfg.ms = {2, 3};
  cfg.seeds = {0};
  REQUIRE_NOTHROW(cfg.validate());
  REQUIRE(cfg.k_max_for(2) == 4);
  REQUIRE(cfg.k_max_for(10) == 20);
  cfg.beta = 2;
  REQUIRE(cfg.k_max_for(2) == 9);
  REQUIRE(cfg.k_max_for(10) == 41);

  BenchConfig bad = cfg;
  bad.ms.clear();
  REQUIRE_THROWS_AS(bad.validate(), maxplus::BadLength);
  bad = cfg;
  bad.seeds.clear();
  REQUIRE_THROWS_AS(bad.validate(), maxplus::BadLength);
  bad = cfg;
  bad.ms.push_back(1);
  REQUIRE_THROWS_AS(bad.validate(), maxplus::BadOrder);
  bad = cfg;
  bad.beta = 0;
  REQUIRE_THROWS_AS(bad.validate(), maxplus::BadOrder);
  bad = cfg;
  bad.reps = 2;
  REQUIRE_THROWS_AS(bad.validate(), maxplus::BadOrder);
  bad = cfg;
  bad.warmup = 0;
  REQUIRE_THROWS_AS(bad.validate(), maxplus::BadOrder);
}

TEST_CASE("median helper") {
  REQUIRE(maxplus::detail::median_of({5, 1, 9}) == 5);
  REQUIRE(maxplus::detail::median_of({4, 2, 8, 6}) == 5);
  REQUIRE(maxplus::detail::median_of({7}) == 7);
}

TEST_CASE("power benchmark on small sizes") {
  BenchConfig cfg;
  cfg.ms = {2, 3};
  cfg.seeds = {42};
  const std::vector<BenchRecord> recs = maxplus::run_power_bench(cfg);
  REQUIRE(recs.size() == 4);
  for (std::size_t i = 0; i < recs.size(); i += 2) {
    REQUIRE(recs[i].method == "naive");
    REQUIRE(recs[i + 1].method == "ghost");
    REQUIRE(recs[i].checksum == recs[i + 1].checksum);
    REQUIRE(recs[i].median_ns >= 0);
    REQUIRE(recs[i + 1].median_ns >= 0);
    REQUIRE(recs[i].reps == 3);
  }
  REQUIRE(recs[0].m == 2);
  REQUIRE(recs[0].k_max == 4);
  REQUIRE(recs[2].m == 3);
  REQUIRE(recs[2].k_max == 6);
}

TEST_CASE("diagonal-plus-matrix benchmark on small sizes") {
  BenchConfig cfg;
  cfg.ms = {2};
  cfg.seeds = {7};
  const std::vector<BenchRecord> recs = maxplus::run_dpower_bench(cfg);
  REQUIRE(recs.size() == 3);
  REQUIRE(recs[0].method == "naive");
  REQUIRE(recs[1].method == "decomposed");
  REQUIRE(recs[2].method == "three-term");
  REQUIRE(recs[0].checksum == recs[1].checksum);
  REQUIRE(recs[0].checksum == recs[2].checksum);

  const std::vector<BenchRecord> shifted = maxplus::run_dpower_bench(cfg, 9);
  REQUIRE(shifted.size() == 3);
  REQUIRE(shifted[0].checksum != recs[0].checksum);
}

TEST_CASE("benchmark CSV round trip") {
  std::vector<BenchRecord> recs;
  recs.push_back(BenchRecord{2, 42, "naive", 4, 3, 123456, Checksum{0xab, 5}});
  recs.push_back(BenchRecord{10, 0, "three-term", 20, 5, 99, Checksum{0, 441}});

  std::ostringstream os;
  maxplus::write_csv(os, recs);
  const std::string text = os.str();
  REQUIRE(text.rfind("m,seed,method,k_max,reps,median_ns,checksum\n", 0) == 0);
  REQUIRE(text.find("2,42,naive,4,3,123456,ab:5\n") != std::string::npos);

  std::istringstream is(text);
  const std::vector<BenchRecord> back = maxplus::read_csv(is);
  REQUIRE(back.size() == 2);
  REQUIRE(back[0] == recs[0]);
  REQUIRE(back[1] == recs[1]);

  std::istringstream empty("");
  REQUIRE_THROWS_AS(maxplus::read_csv(empty), maxplus::ParseError);
  std::istringstream badhdr("m,seed,method\n");
  REQUIRE_THROWS_AS(maxplus::read_csv(badhdr), maxplus::ParseError);
  std::istringstream shortrow(std::string(maxplus::kCsvHeader) + "\n2,42,naive,4\n");
  REQUIRE_THROWS_AS(maxplus::read_csv(shortrow), maxplus::ParseError);
  std::istringstream badnum(std::string(maxplus::kCsvHeader) + "\nx,42,naive,4,3,1,0:0\n");
  REQUIRE_THROWS_AS(maxplus::read_csv(badnum), maxplus::ParseError);
}

TEST_CASE("plot script generation") {
  BenchConfig cfg;
  cfg.ms = {2, 3};
  cfg.seeds = {1, 2};
  const std::vector<BenchRecord> recs = maxplus::run_power_bench(cfg);

  TempFile csv("bench_plot_test.csv");
  {
    std::ofstream os(csv.path);
    maxplus::write_csv(os, recs);
  }
  TempFile plot("bench_plot_test.gp");
  maxplus::emit_plot_script(csv.path, plot.path);
  const std::string script = slurp(plot.path);
  REQUIRE(script.find("set logscale y") != std::string::npos);
  REQUIRE(script.find("title 'naive'") != std::string::npos);
  REQUIRE(script.find("title 'ghost'") != std::string::npos);
  REQUIRE(script.find("title 'naive - ghost'") != std::string::npos);
  REQUIRE(script.find("$bench << EOD") != std::string::npos);

  TempFile dcsv("bench_plot_test_d.csv");
  {
    BenchConfig dcfg;
    dcfg.ms = {2};
    dcfg.seeds = {1};
    std::ofstream os(dcsv.path);
    maxplus::write_csv(os, maxplus::run_dpower_bench(dcfg));
  }
  TempFile dplot("bench_plot_test_d.gp");
  maxplus::emit_plot_script(dcsv.path, dplot.path);
  const std::string dscript = slurp(dplot.path);
  REQUIRE(dscript.find("title 'naive'") != std::string::npos);
  REQUIRE(dscript.find("title 'decomposed'") != std::string::npos);
  REQUIRE(dscript.find("title 'three-term'") != std::string::npos);
  REQUIRE(dscript.find("naive - ghost") == std::string::npos);

  TempFile ecsv("bench_plot_test_e.csv");
  {
    std::ofstream os(ecsv.path);
    maxplus::write_csv(os, {});
  }
  TempFile eplot("bench_plot_test_e.gp");
  maxplus::emit_plot_script(ecsv.path, eplot.path);
  REQUIRE(slurp(eplot.path).find("no data") != std::string::npos);

  REQUIRE_THROWS_AS(maxplus::emit_plot_script("does_not_exist_anywhere.csv", eplot.path),
                    maxplus::IoError);
}
