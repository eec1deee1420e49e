#include <doctest.h>

#include "hiercache/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace {

struct Out {
  int code;
  std::string out;
  std::string err;
};

Out run(std::vector<std::string> args) {
  args.insert(args.begin(), "hiercache");
  std::ostringstream o, e;
  const int code = hiercache::cli::run(args, o, e);
  return {code, o.str(), e.str()};
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::size_t lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("simulate prints the worked example") {
  const auto r = run({"simulate", "--k1", "3", "--k2", "2", "--n", "6", "--t", "2", "--alpha",
                      "1/2", "--demands", "1,2,3,4,5,6"});
  CHECK(r.code == hiercache::cli::kOk);
  CHECK(has(r.out, "3.1667 (19/6)"));
  CHECK(has(r.out, "1.6000 (8/5)"));
  CHECK(has(r.out, "7.9667 (239/30)"));
  CHECK_FALSE(has(r.out, "FAIL"));
  CHECK(has(r.out, "user 6 (wants 6): DECODE OK"));
}

TEST_CASE("simulate in single-mirror mode") {
  const auto r = run({"simulate", "--k1", "1", "--k2", "4", "--n", "4", "--alpha", "1/2", "--m1",
                      "1", "--single-mirror", "--demands", "1,2,3,4"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "R1            2.5000 (5/2)"));
  CHECK(has(r.out, "R2            3.5000 (7/2)"));
  const auto bad = run({"simulate", "--k1", "2", "--k2", "2", "--n", "2", "--alpha", "1/2",
                        "--m1", "0", "--single-mirror"});
  CHECK(bad.code == hiercache::cli::kConfig);
}

TEST_CASE("exit codes") {
  const std::vector<std::string> base{"simulate", "--k1", "3", "--k2", "2", "--n", "3",
                                      "--t", "2", "--alpha", "1/2"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return run(a).code;
  };
  CHECK(with({"--demands", "1,2,3"}) == hiercache::cli::kDemand);
  CHECK(with({"--demands", "1,2,3,1,2,x"}) == hiercache::cli::kDemand);
  CHECK(with({"--demands", "1,1,1,1,1,1"}) == hiercache::cli::kDemand);
  CHECK(with({"--demands", "1,2,3,1,2,4"}) == hiercache::cli::kDemand);
  CHECK(with({"--file-bytes", "61"}) == hiercache::cli::kDivisibility);
  CHECK(with({"--demands", "1,2,1,3,2,2"}) == hiercache::cli::kOk);
  CHECK(run({"simulate", "--k1", "3", "--k2", "2", "--n", "7", "--t", "2", "--alpha", "1/2"}).code ==
        hiercache::cli::kConfig);
  CHECK(run({"simulate", "--k1", "3", "--k2", "2", "--n", "6", "--t", "9"}).code ==
        hiercache::cli::kConfig);
  CHECK(run({"region", "--k1", "2", "--k2", "2", "--n", "3", "--t", "1", "--alpha", "1/2"}).code ==
        hiercache::cli::kConfig);
  CHECK(run({"nosuch"}).code != 0);
}

TEST_CASE("seed order") {
  const std::vector<std::string> a{"simulate", "--k1", "2", "--k2", "2", "--n", "2", "--t", "1",
                                   "--alpha", "1/2"};
  auto b = a;
  b.insert(b.end(), {"--seed", "9"});
  const auto r = run(b);
  CHECK(has(r.out, "seed: 9 (--seed)"));
  ::setenv("HIERCACHE_SEED", "17", 1);
  CHECK(has(run(a).out, "seed: 17 (HIERCACHE_SEED)"));
  CHECK(has(run(b).out, "seed: 9 (--seed)"));
  ::unsetenv("HIERCACHE_SEED");
  CHECK(has(run(a).out, "seed: 1 (default)"));
}

TEST_CASE("sweep writes one row per grid point") {
  const auto r = run({"sweep", "--k1", "3", "--k2", "2", "--n", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("scheme,K1,K2,N,t,alpha,M1,M2,Mbar,R1,R2,Rbar,Rsum,Tconc,Tseq\n", 0) == 0);
  CHECK(lines(r.out) == 56);

  const auto again = run({"sweep", "--k1", "3", "--k2", "2", "--n", "6"});
  CHECK(again.out == r.out);

  const auto ex3 = run({"sweep", "--k1", "2", "--k2", "3", "--n", "6", "--ts", "2,3"});
  CHECK(has(ex3.out, "proposed,2,3,6,2,0.000000,0.000000,2.000000,12.000000"));
  CHECK(has(ex3.out, "proposed,2,3,6,3,0.000000,0.300000,2.700000,16.800000"));
  CHECK(has(ex3.out, ",2.550000,"));

  const auto rat = run({"sweep", "--k1", "3", "--k2", "2", "--n", "6", "--ts", "2", "--rational"});
  CHECK(has(rat.out, "proposed,3,2,6,2,1/2,11/30,4/5,59/10,19/6,8/5,239/30"));

  const auto path = temp_file("hiercache_sweep_test.csv");
  const auto f = run({"sweep", "--k1", "3", "--k2", "2", "--n", "6", "--out", path.string()});
  CHECK(f.code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == r.out);
  std::filesystem::remove(path);
}

TEST_CASE("sweep rows at alpha = 0 match the HPDA rows") {
  const auto r = run({"sweep", "--k1", "3", "--k2", "2", "--n", "6", "--ts", "3,4,5",
                      "--schemes", "proposed,kwc", "--rational"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::map<std::string, std::string> proposed, kwc;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    if (f.size() < 15) continue;
    const std::string tail = f[6] + "," + f[7] + "," + f[9] + "," + f[10];
    if (f[0] == "proposed" && f[5] == "0") proposed[f[4]] = tail;
    if (f[0] == "KWC") kwc[f[4]] = tail;
  }
  REQUIRE(proposed.size() == 3);
  for (const auto& [t, v] : proposed) CHECK(kwc[t] == v);
}

TEST_CASE("compare reproduces the table rows") {
  const auto r = run({"compare", "--k1", "3", "--k2", "2", "--n", "6", "--mbar", "7.2"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "ZWXWL         1.8000    0.3000    7.2000    2.1000    1.8500    7.6500"));
  CHECK(has(r.out, "2.6803"));
  CHECK(has(r.out, "7.1619"));
  const auto r2 = run({"compare", "--k1", "3", "--k2", "2", "--n", "3", "--mbar", "3.2"});
  CHECK(r2.code == 0);
  CHECK(has(r2.out, "1.9167"));
  CHECK(has(r2.out, "6.7167"));
  const auto low = run({"compare", "--k1", "3", "--k2", "2", "--n", "6", "--mbar", "100"});
  CHECK(low.code == hiercache::cli::kConfig);
}

TEST_CASE("region reports") {
  const auto r = run({"region", "--k1", "2", "--k2", "3", "--n", "6", "--alpha", "0.2"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "Region I\n"));
  const auto r2 = run({"region", "--k1", "3", "--k2", "2", "--n", "6", "--alpha", "1/2"});
  CHECK(has(r2.out, "Region II\n"));
}

TEST_CASE("verify summary") {
  const auto r = run({"verify", "--max-k", "4", "--theorem-max", "5"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "0 decode failures"));
  CHECK(has(r.out, "all checks passed"));
  const auto s = run({"verify", "--max-k", "4", "--theorem-max", "5", "--serial"});
  CHECK(s.out == r.out);
}

TEST_CASE("config file with command-line override") {
  const auto path = temp_file("hiercache_cfg_test.conf");
  {
    std::ofstream f(path);
    f << "# example\nk1 = 3\nk2=2\nn=6\nt=2\nalpha=1/3\n";
  }
  const auto r = run({"simulate", "--config", path.string(), "--alpha", "1/2"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "alpha=1/2"));
  const auto r2 = run({"simulate", "--config", path.string()});
  CHECK(has(r2.out, "alpha=1/3"));
  std::filesystem::remove(path);
  CHECK(run({"simulate", "--config", path.string()}).code == hiercache::cli::kInvariant);
}
