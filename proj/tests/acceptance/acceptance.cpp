// One PASS/FAIL line per acceptance criterion; details for every failed
// check are indented underneath. Exit status is the number of failures.

#include "fixtures.hpp"
#include "oracle_check.hpp"
#include "reference.hpp"

#include "hiercache/analytics.hpp"
#include "hiercache/baselines.hpp"
#include "hiercache/library.hpp"
#include "hiercache/scheme_hier.hpp"
#include "hiercache/scheme_single.hpp"
#include "hiercache/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace hiercache;
using testsupport::cfg;
using testsupport::q;

namespace {

double d(const Rational& x) { return to_double(x); }

class Criterion {
 public:
  explicit Criterion(std::string id) : id_(std::move(id)) {}

  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void exact(const Rational& got, const Rational& want, const std::string& what) {
    check(got == want, what + ": got " + to_fraction_string(got) + ", want " + to_fraction_string(want));
  }
  void printed(const Rational& got, const std::string& want, const std::string& what) {
    check(ref::near_printed(d(got), want),
          what + ": got " + to_decimal_string(got, 4) + ", printed " + want);
  }
  void within(const Rational& got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s << what << ": got " << to_decimal_string(got, 4) << ", want " << want << " +- " << tol;
    check(std::fabs(d(got) - want) <= tol + 1e-12, s.str());
  }
  void note(const std::string& text) { notes_.push_back(text); }

  bool report(const std::string& title, double seconds) const {
    const bool ok = failures_.empty();
    std::cout << (ok ? "PASS " : "FAIL ") << id_ << " " << title << " (" << checks_ << " checks, "
              << std::round(seconds * 1000) / 1000 << " s)\n";
    for (const auto& f : failures_) std::cout << "    - " << f << "\n";
    for (const auto& n : notes_) std::cout << "    note: " << n << "\n";
    return ok;
  }

 private:
  std::string id_;
  int checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SimulationResult run_hier(const HierConfig& c, const std::vector<int>& demands) {
  const auto lib = Library::random(c.n_files(), sim_file_bytes(c), testsupport::kLibrarySeed);
  return simulate_hier(c, lib, demands);
}

void example_one(Criterion& c) {
  const auto start = Clock::now();
  const auto conf = cfg(3, 2, 6, 2, "1/2");
  const auto res = run_hier(conf, {0, 1, 2, 3, 4, 5});
  const double secs = since(start);
  const auto p = composite(conf);
  c.exact(p.m1, q("11/30"), "M1");
  c.exact(p.m2, q("4/5"), "M2");
  c.exact(p.m_bar, q("5.9"), "Mbar");
  c.exact(p.r1, q("19/6"), "R1");
  c.exact(p.r2, q("8/5"), "R2");
  c.exact(p.r_bar, q("239/30"), "Rbar");
  c.exact(res.rates.r1, q("19/6"), "measured R1");
  c.exact(res.rates.r2_worst, q("8/5"), "measured R2");
  c.exact(res.mirror_cache_max, q("11/30"), "largest mirror cache");
  c.exact(res.user_cache_max, q("4/5"), "largest user cache");
  c.check(res.all_ok(), "every user decodes byte-exactly");
  c.check(secs < 1.0, "simulation under 1 s, took " + std::to_string(secs));
}

void example_two(Criterion& c) {
  const auto conf = cfg(3, 2, 3, 2, "1/2");
  const auto res = run_hier(conf, {0, 1, 0, 2, 1, 1});
  c.exact(rate_r1(conf), q("115/60"), "R1");
  c.exact(res.rates.r1, q("115/60"), "measured R1");
  const std::vector<Rational> want{q("8/5"), q("8/5"), q("16/15")};
  c.check(res.rates.r2_per_mirror.size() == 3, "three mirrors");
  for (std::size_t m = 0; m < want.size() && m < res.rates.r2_per_mirror.size(); ++m) {
    c.exact(res.rates.r2_per_mirror[m], want[m], "R2 of mirror " + std::to_string(m + 1));
  }
  c.exact(res.rates.r1 + 3 * res.rates.r2_worst, q("403/60"), "Rbar");
  c.printed(res.rates.r1 + 3 * res.rates.r2_worst, "6.7167", "Rbar printed");
  c.check(res.all_ok(), "every user decodes byte-exactly");
}

void table_one(Criterion& c) {
  const auto p = composite(cfg(3, 2, 6, 2, "18/49"));
  c.exact(p.m_bar, q("7.2"), "Mbar");
  c.check(to_decimal_string(p.r1, 3) == "2.680", "R1 to 3 places: " + to_decimal_string(p.r1, 3));
  c.check(to_decimal_string(p.r2, 3) == "1.494", "R2 to 3 places: " + to_decimal_string(p.r2, 3));
  c.check(to_decimal_string(p.r_bar, 3) == "7.162", "Rbar to 3 places: " + to_decimal_string(p.r_bar, 3));

  const Rational floor = q("0.01");
  const auto kt = knmd_optimal_tuple(2, 6, p.m1, p.m2, floor);
  const auto k = knmd_rates(3, 2, 6, p.m1, p.m2, kt.tuple);
  c.within(k.r1, 2.8759, 0.002, "KNMD R1");
  c.within(k.r2, 1.5323, 0.002, "KNMD R2");
  const auto z = zwxwll_best(3, 2, 6, p.m1, p.m2, floor);
  c.within(z.rates.r1, 2.857, 0.002, "ZWXWLL R1");
  c.within(z.rates.r2, 1.522, 0.002, "ZWXWLL R2");
  const auto w = wwcy_best(3, 2, 6, p.m1, p.m2, floor);
  c.within(w.rates.r1, 2.8765, 0.002, "WWCY R1");
  c.within(w.rates.r2, 1.5323, 0.002, "WWCY R2");

  const auto env = zwxwl_envelope(zwxwl_grid(3, 2, 6, GridKind::kAxes), p.m_bar);
  c.exact(env.r_bar, q("7.65"), "ZWXWL Rbar");
  const auto full = zwxwl_envelope(zwxwl_grid(3, 2, 6, GridKind::kFull), p.m_bar);
  c.note("ZWXWL over the full (M1, M2) grid: Rbar " + to_decimal_string(full.r_bar, 4));
}

void table_two(Criterion& c) {
  const auto p = composite(cfg(3, 2, 3, 2, "1/2"));
  c.exact(p.m_bar, q("3.2"), "Mbar");
  c.printed(p.r1, "1.917", "R1");
  c.printed(p.r2, "1.6", "R2");
  c.printed(p.r_bar, "6.717", "Rbar");

  const Rational floor = q("0.01");
  const auto kt = knmd_optimal_tuple(2, 3, p.m1, p.m2, floor);
  const auto k = knmd_rates(3, 2, 3, p.m1, p.m2, kt.tuple);
  c.printed(k.r1, "3.076", "KNMD R1");
  c.printed(k.r2, "1.623", "KNMD R2");
  c.printed(k.r1 + 3 * k.r2, "7.945", "KNMD Rbar");
  const auto z = zwxwll_best(3, 2, 3, p.m1, p.m2, floor);
  c.printed(z.rates.r1, "3.413", "ZWXWLL R1");
  c.printed(z.rates.r2, "1.618", "ZWXWLL R2");
  c.printed(z.rates.r1 + 3 * z.rates.r2, "8.267", "ZWXWLL Rbar");
  const auto w = wwcy_best(3, 2, 3, p.m1, p.m2, floor);
  c.printed(w.rates.r1, "3.07", "WWCY R1");
  c.printed(w.rates.r2, "1.623", "WWCY R2");
  c.printed(w.rates.r1 + 3 * w.rates.r2, "7.939", "WWCY Rbar");

  const auto env = zwxwl_envelope(zwxwl_grid(3, 2, 3, GridKind::kAxes), p.m_bar);
  c.printed(env.r1, "2.033", "ZWXWL R1");
  c.printed(env.r2, "1.95", "ZWXWL R2");
  c.printed(env.r_bar, "7.88", "ZWXWL Rbar");
}

void example_three(Criterion& c) {
  const auto conf = cfg(2, 3, 6, 3, "1/5");
  const auto reg = region_classify(conf);
  c.printed(reg.alpha_threshold, "0.303", "alpha threshold");
  c.check(reg.region == Region::kI, "Region I at alpha = 0.2, got " + to_string(reg.region));

  const auto p = composite(conf);
  c.exact(p.m1, q("0.34"), "M1");
  c.exact(p.m2, q("2.16"), "M2");
  c.exact(p.m_bar, q("13.64"), "Mbar");
  c.exact(p.r1, q("1.6"), "R1");
  c.exact(p.r2, q("1.32"), "R2");
  c.exact(p.r_bar, q("4.24"), "Rbar");

  const auto kt = knmd_optimal_tuple(3, 6, p.m1, p.m2, q("0.01"));
  const auto k = knmd_rates(2, 3, 6, p.m1, p.m2, kt.tuple);
  c.within(k.r1, 1.56, 0.002, "KNMD R1");
  c.within(k.r2, 1.312, 0.002, "KNMD R2");
  c.within(k.r1 + 2 * k.r2, 4.189, 0.002, "KNMD Rbar");

  Rational lambda;
  const auto s = memory_share_mbar(composite(conf.with_alpha(0).with_t(2)),
                                   composite(conf.with_alpha(0)), p.m_bar, &lambda);
  c.exact(lambda, make_rational(41, 120), "sharing weight");
  c.within(s.r1, 1.134, 0.005, "shared R1");
  c.within(s.r2, 1.141, 0.005, "shared R2");
  c.within(s.r_bar, 3.417, 0.005, "shared Rbar");
}

void single_mirror_case(Criterion& c, int k, int n, const std::string& alpha,
                        const Rational& rate, const std::vector<int>& demands) {
  const Rational a = q(alpha);
  const Rational top = single_m1_bound(n, a);
  for (int i = 0; i <= 4; ++i) {
    const Rational m1 = top * i / 4;
    const auto sc = make_single_config(k, n, a, m1);
    const std::string tag = "(K=" + std::to_string(k) + ", M1=" + to_fraction_string(m1) + ")";
    c.exact(single_rate_r1(sc), rate - m1, "R1 " + tag);
    c.exact(single_rate_r2(sc), rate, "R2 " + tag);
    const auto lib = Library::random(n, single_sim_file_bytes(sc), testsupport::kLibrarySeed);
    const auto res = simulate_single(sc, lib, demands);
    c.exact(res.rates.r1, rate - m1, "measured R1 " + tag);
    c.exact(res.rates.r2_worst, rate, "measured R2 " + tag);
    c.check(res.all_ok(), "every user decodes " + tag);
  }
}

void single_mirror(Criterion& c) {
  single_mirror_case(c, 4, 4, "1/2", q("7/2"), {0, 1, 2, 3});
  single_mirror_case(c, 6, 4, "2/3", q("32/9"), {0, 1, 1, 2, 0, 3});

  struct Point {
    const char* alpha;
    int k;
    int n;
  };
  const std::vector<Point> grid{{"1/2", 4, 4}, {"2/3", 6, 4}, {"1/3", 3, 2},  {"1/4", 5, 5},
                                {"1", 4, 1},   {"3/5", 8, 3}, {"1/10", 2, 2}, {"5/6", 7, 7},
                                {"2/7", 6, 6}, {"0", 5, 3}};
  for (const auto& pt : grid) {
    const Rational a = q(pt.alpha);
    c.exact(dominance_gap(pt.k, pt.n, a), a * pt.n / pt.k,
            std::string("dominance gap (") + pt.alpha + ", " + std::to_string(pt.k) + ", " +
                std::to_string(pt.n) + ")");
  }
}

void coding_delay_check(Criterion& c) {
  const auto conf = cfg(3, 2, 6, 2, "1/2");
  const auto cr2 = concurrent_r2(conf, 2);
  c.exact(cr2, q("23/15"), "concurrent R2");
  c.printed(cr2, "1.533", "concurrent R2 printed");
  const auto t_ours = coding_delay(rate_r1(conf), cr2, true);
  c.within(t_ours, 3.167, 0.002, "proposed T");

  // The printed WWCY delay is the beta -> 0 limit; 1e-6 stands in for it.
  const auto mp = memory_point(conf);
  const auto w = wwcy_best(3, 2, 6, mp.m1, mp.m2, q("1/1000000"));
  const auto t_wwcy = coding_delay(w.rates.r1, w.rates.r2, true);
  c.within(t_wwcy, 3.264, 0.002, "WWCY T");
  const auto w01 = wwcy_best(3, 2, 6, mp.m1, mp.m2, q("0.01"));
  c.note("WWCY T with beta floor 0.01: " +
         to_decimal_string(coding_delay(w01.rates.r1, w01.rates.r2, true), 4));
  c.check(t_ours < t_wwcy, "proposed delay below WWCY");
}

void kwc_identity(Criterion& c) {
  for (int k1 = 2; k1 <= 4; ++k1) {
    for (int k2 = 2; k2 <= 4; ++k2) {
      const int k = k1 * k2;
      for (int t = k2 + 1; t < k; ++t) {
        const auto kw = kwc_rates(k1, k2, t);
        const std::string tag = "(" + std::to_string(k1) + "," + std::to_string(k2) +
                                ",t=" + std::to_string(t) + ")";
        for (int n : {1, k2, k}) {
          const auto conf = cfg(k1, k2, n, t, "0");
          const auto mp = memory_point(conf);
          c.exact(rate_r1(conf), kw.r1, "R1 " + tag);
          c.exact(rate_r2_worst(conf), kw.r2, "R2 " + tag);
          c.exact(mp.m1, kw.m1_frac * n, "M1 " + tag);
          c.exact(mp.m2, kw.m2_frac * n, "M2 " + tag);
        }
        // Full simulation with every mirror facing K2 distinct files.
        const auto conf = cfg(k1, k2, k2, t, "0");
        std::vector<int> demands;
        for (int u = 0; u < k; ++u) demands.push_back(u % k2);
        const auto res = run_hier(conf, demands);
        c.exact(res.rates.r1, kw.r1, "measured R1 " + tag);
        c.exact(res.rates.r2_worst, kw.r2, "measured R2 " + tag);
        c.check(res.all_ok(), "decoding " + tag);
      }
    }
  }
}

void decode_totality(Criterion& c, double& budget_secs) {
  const auto start = Clock::now();
  const std::vector<std::string> alphas{"0", "1/3", "1/2", "1"};
  const int dims[3][3] = {{3, 2, 3}, {2, 2, 4}, {2, 3, 3}};
  VerifyStats total;
  std::uint64_t expected = 0;
  for (const auto& dm : dims) {
    const int k = dm[0] * dm[1];
    for (int t = 1; t <= k; ++t) {
      for (const auto& a : alphas) {
        const auto conf = cfg(dm[0], dm[1], dm[2], t, a);
        total.merge(verify_config_parallel(conf, testsupport::kLibrarySeed));
        expected += static_cast<std::uint64_t>(ref::surjections(k, dm[2]));
      }
    }
  }
  budget_secs = since(start);
  c.check(total.demand_vectors == expected,
          "demand vectors " + std::to_string(total.demand_vectors) + ", want " +
              std::to_string(expected));
  c.check(total.decode_failures == 0, std::to_string(total.decode_failures) + " decode failures");
  c.check(total.rate_mismatches == 0, std::to_string(total.rate_mismatches) + " rate mismatches");
  c.check(total.cache_violations == 0,
          std::to_string(total.cache_violations) + " cache violations");
  for (const auto& m : total.messages) c.check(false, m);
  c.check(budget_secs < 300, "under 5 min, took " + std::to_string(budget_secs));
  c.note(std::to_string(total.demand_vectors) + " demand vectors simulated");
}

void theorem_suite(Criterion& c, double& secs) {
  const auto start = Clock::now();
  const auto stats = verify_theorems(10);
  for (int k1 = 2; k1 <= 10; ++k1) {
    for (int k2 = 2; k2 <= 10; ++k2) {
      if (k1 == 2 && k2 == 2) continue;
      c.check(lemma1_holds(k1, k2), "Lemma 1 at (" + std::to_string(k1) + "," + std::to_string(k2) + ")");
    }
  }
  secs = since(start);
  c.check(stats.pairs == 81, "pairs checked: " + std::to_string(stats.pairs));
  for (const auto& v : stats.violations) c.check(false, v);
  c.check(secs < 10, "under 10 s, took " + std::to_string(secs));
}

void oracle_equivalence(Criterion& c) {
  const auto batch = testsupport::oracle_batch(240, 0xacce97);
  c.check(batch.instances >= 200, "instances: " + std::to_string(batch.instances));
  for (const auto& p : batch.problems) c.check(false, p);
  c.note(std::to_string(batch.hier_instances) + " two-layer and " +
         std::to_string(batch.single_instances) + " single-mirror instances");
}

}  // namespace

int main() {
  struct Entry {
    const char* id;
    const char* title;
    std::function<void(Criterion&)> body;
  };
  double unused = 0;
  const std::vector<Entry> entries{
      {"C1", "worked example, three mirrors, six files", example_one},
      {"C2", "worked example with repeated demands", example_two},
      {"C3", "comparison table at Mbar = 7.2", table_one},
      {"C4", "comparison table at Mbar = 3.2", table_two},
      {"C5", "region chain for K1 = 2, K2 = 3", example_three},
      {"C6", "single-mirror scheme", single_mirror},
      {"C7", "coding delay", coding_delay_check},
      {"C8", "identity with the HPDA scheme at alpha = 0", kwc_identity},
      {"C9", "decode totality", [&](Criterion& c) { decode_totality(c, unused); }},
      {"C10", "lemma and theorem predicates", [&](Criterion& c) { theorem_suite(c, unused); }},
      {"C11", "constructive decoding equals the GF(2) span", oracle_equivalence},
  };

  int failed = 0;
  for (const auto& e : entries) {
    Criterion c(e.id);
    const auto start = Clock::now();
    try {
      e.body(c);
    } catch (const std::exception& ex) {
      c.check(false, std::string("exception: ") + ex.what());
    }
    if (!c.report(e.title, since(start))) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << "\n";
  return failed;
}
