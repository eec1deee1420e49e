#include "hiercache/cli.hpp"

#include "hiercache/analytics.hpp"
#include "hiercache/baselines.hpp"
#include "hiercache/errors.hpp"
#include "hiercache/library.hpp"
#include "hiercache/model.hpp"
#include "hiercache/scheme_hier.hpp"
#include "hiercache/scheme_single.hpp"
#include "hiercache/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace hiercache::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct Options {
  int k1 = 0;
  int k2 = 0;
  int n = 0;
  int t = 0;
  std::string alpha = "0";
  std::string m1 = "0";
  std::uint64_t file_bytes = 0;
  std::string demands;
  std::uint64_t seed = 0;
  std::string out;
  bool single_mirror = false;
  std::string beta_floor = "1/100";
  bool rational = false;
  std::string mbar;
  std::string alpha_step = "1/10";
  std::string ts;
  std::string schemes = "proposed";
  int max_users = 5;
  int theorem_max = 10;
  bool serial = false;

  CLI::Option* t_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

std::string fmt(const Rational& v, bool rational, int places) {
  return rational ? to_fraction_string(v) : to_decimal_string(v, places);
}

std::string fmt_both(const Rational& v) {
  return to_decimal_string(v, 4) + " (" + to_fraction_string(v) + ")";
}

std::uint64_t resolve_seed(const Options& o, std::ostream& out) {
  std::uint64_t seed = kDefaultSeed;
  std::string origin = "default";
  if (o.seed_opt->count() > 0) {
    seed = o.seed;
    origin = "--seed";
  } else if (const char* env = std::getenv("HIERCACHE_SEED"); env != nullptr && *env != '\0') {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      throw RangeError("HIERCACHE_SEED is not an unsigned integer");
    }
    origin = "HIERCACHE_SEED";
  }
  out << "seed: " << seed << " (" << origin << ")\n";
  return seed;
}

std::vector<int> parse_demands(const std::string& text, int users, int n_files) {
  std::vector<int> d;
  for (const auto& item : split_csv(text)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw DemandError("demand '" + item + "' is not an integer");
    }
    if (used != item.size()) throw DemandError("demand '" + item + "' is not an integer");
    if (v < 1 || v > n_files) {
      throw DemandError("demand " + item + " outside [1, " + std::to_string(n_files) + "]");
    }
    d.push_back(v - 1);
  }
  if (static_cast<int>(d.size()) != users) {
    throw DemandError("expected " + std::to_string(users) + " demands, got " +
                      std::to_string(d.size()));
  }
  return d;
}

// Uniform over the allowed vectors by rejection.
std::vector<int> random_demands(int users, int n_files, bool surjective, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n_files - 1);
  while (true) {
    std::vector<int> d(static_cast<std::size_t>(users));
    for (int& v : d) v = pick(rng);
    if (!surjective) return d;
    if (std::set<int>(d.begin(), d.end()).size() == static_cast<std::size_t>(n_files)) return d;
  }
}

std::string join_demands(const std::vector<int>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i] + 1);
  return s;
}

class RateTable {
 public:
  explicit RateTable(std::ostream& out) : out_(out) {
    out_ << std::left << std::setw(14) << "quantity" << std::setw(24) << "measured"
         << "closed form\n";
  }
  void row(const std::string& name, const Rational& measured, const Rational& expected) {
    const bool same = measured == expected;
    ok_ = ok_ && same;
    out_ << std::left << std::setw(14) << name << std::setw(24) << fmt_both(measured)
         << fmt_both(expected) << (same ? "" : "  MISMATCH") << "\n";
  }
  bool ok() const { return ok_; }

 private:
  std::ostream& out_;
  bool ok_ = true;
};

int report_decode(const SimulationResult& res, std::ostream& out) {
  for (std::size_t k = 0; k < res.decoded_ok.size(); ++k) {
    out << "user " << k + 1 << " (wants " << res.profile.demands[k] + 1
        << "): " << (res.decoded_ok[k] ? "DECODE OK" : "DECODE FAIL") << "\n";
  }
  for (const auto& f : res.failures) out << "  " << f << "\n";
  return res.all_ok() ? kOk : kDecode;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(o, out);
  const Rational alpha = parse_rational(o.alpha);
  if (o.single_mirror) {
    if (o.k1 != 1) throw ConstraintError("--single-mirror needs --k1 1");
    const auto cfg = make_single_config(o.k2, o.n, alpha, parse_rational(o.m1));
    const std::uint64_t bytes = o.file_bytes != 0 ? o.file_bytes : single_sim_file_bytes(cfg);
    const auto demands = o.demands.empty()
                             ? random_demands(cfg.users(), cfg.n_files(), alpha != 0, seed)
                             : parse_demands(o.demands, cfg.users(), cfg.n_files());
    out << "single mirror: K=" << cfg.users() << " N=" << cfg.n_files()
        << " alpha=" << to_fraction_string(alpha) << " M1=" << to_fraction_string(cfg.m1())
        << " theta=" << to_fraction_string(cfg.theta()) << " F=" << bytes << " bytes\n"
        << "demands: " << join_demands(demands) << "\n";
    const Library lib = Library::random(cfg.n_files(), bytes, seed);
    const SimulationResult res = simulate_single(cfg, lib, demands);
    RateTable table(out);
    table.row("M1", res.mirror_cache_max, cfg.m1());
    table.row("M2", res.user_cache_max, cfg.m2());
    table.row("R1", res.rates.r1, single_rate_r1(cfg));
    table.row("R2", res.rates.r2_worst, single_rate_r2(cfg));
    table.row("Rbar", res.rates.r1 + res.rates.r2_worst,
              single_rate_r1(cfg) + single_rate_r2(cfg));
    const int code = report_decode(res, out);
    if (code != kOk) return code;
    return table.ok() ? kOk : kInvariant;
  }

  if (o.t_opt->count() == 0) throw RangeError("--t is required");
  const HierConfig cfg = validate_config({o.k1, o.k2, o.n, o.t, alpha});
  if (cfg.users() > kMaxSimUsers) throw RangeError("simulation supports at most 64 users");
  const std::uint64_t bytes = o.file_bytes != 0 ? o.file_bytes : sim_file_bytes(cfg);
  const auto demands =
      o.demands.empty()
          ? random_demands(cfg.users(), cfg.n_files(), cfg.has_layer1(), seed)
          : parse_demands(o.demands, cfg.users(), cfg.n_files());
  out << "K1=" << cfg.k1() << " K2=" << cfg.k2() << " N=" << cfg.n_files() << " t=" << cfg.t()
      << " alpha=" << to_fraction_string(cfg.alpha()) << " F=" << bytes << " bytes\n"
      << "demands: " << join_demands(demands) << "\n";
  const Library lib = Library::random(cfg.n_files(), bytes, seed);
  const SimulationResult res = simulate_hier(cfg, lib, demands);
  const MemoryPoint mem = memory_point(cfg);

  RateTable table(out);
  table.row("M1", res.mirror_cache_max, mem.m1);
  table.row("M2", res.user_cache_max, mem.m2);
  table.row("Mbar", res.mirror_cache_max * cfg.k1() + res.user_cache_max * cfg.users(),
            global_memory(cfg));
  table.row("R1", res.rates.r1, rate_r1(cfg));
  for (int m = 0; m < cfg.k1(); ++m) {
    const int t_m = res.profile.per_mirror_count[static_cast<std::size_t>(m)];
    table.row("R2[" + std::to_string(m + 1) + "]",
              res.rates.r2_per_mirror[static_cast<std::size_t>(m)], rate_r2(cfg, t_m));
  }
  out << "R2 (worst mirror) " << fmt_both(res.rates.r2_worst) << ", worst case over demands "
      << fmt_both(rate_r2_worst(cfg)) << "\n";
  out << "Rbar = R1 + K1*R2 " << fmt_both(res.rates.r1 + res.rates.r2_worst * cfg.k1()) << "\n";
  const int code = report_decode(res, out);
  if (code != kOk) return code;
  return table.ok() ? kOk : kInvariant;
}

const char* kCsvHeader = "scheme,K1,K2,N,t,alpha,M1,M2,Mbar,R1,R2,Rbar,Rsum,Tconc,Tseq";

void csv_row(std::ostream& os, const RatePoint& p, int k1, int k2, int n, const std::string& t,
             const std::string& alpha, bool rational) {
  auto f = [&](const Rational& v) { return fmt(v, rational, 6); };
  os << p.scheme << ',' << k1 << ',' << k2 << ',' << n << ',' << t << ',' << alpha << ','
     << f(p.m1) << ',' << f(p.m2) << ',' << f(p.m_bar) << ',' << f(p.r1) << ',' << f(p.r2) << ','
     << f(p.r_bar) << ',' << f(p.r_sum) << ',' << f(p.t_concurrent) << ',' << f(p.t_sequential)
     << '\n';
}

std::vector<Rational> alpha_grid(const Rational& step) {
  if (step <= 0 || step > 1) throw RangeError("--alpha-step must lie in (0, 1]");
  std::vector<Rational> out;
  for (Rational a = 0; a <= 1; a += step) out.push_back(a);
  if (out.back() != 1) out.push_back(1);
  return out;
}

int write_output(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(o.out, std::ios::binary);
  file << text;
  if (!file) {
    out << "cannot write " << o.out << "\n";
    return kInvariant;
  }
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const int k = o.k1 * o.k2;
  if (o.k1 < 1 || o.k2 < 1 || o.n < 1) throw RangeError("K1, K2 and N must be positive");
  std::vector<int> ts;
  if (!o.ts.empty()) {
    for (const auto& s : split_csv(o.ts)) ts.push_back(std::stoi(s));
  } else {
    for (int t = 1; t < std::max(k, 2); ++t) ts.push_back(t);
  }
  const auto alphas = alpha_grid(parse_rational(o.alpha_step));
  std::set<std::string> schemes;
  for (const auto& s : split_csv(o.schemes)) {
    if (s != "proposed" && s != "kwc" && s != "zwxwl") throw RangeError("unknown scheme " + s);
    schemes.insert(s);
  }

  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  if (schemes.count("proposed") != 0) {
    for (const auto& row : sweep_proposed(o.k1, o.k2, o.n, ts, alphas, true)) {
      csv_row(csv, row.point, o.k1, o.k2, o.n, std::to_string(row.t),
              fmt(row.alpha, o.rational, 6), o.rational);
    }
  }
  if (schemes.count("kwc") != 0) {
    for (int t : ts) {
      if (t <= o.k2 || t >= k) continue;
      const KwcPoint p = kwc_rates(o.k1, o.k2, t);
      const RatePoint rp =
          make_rate_point("KWC", o.k1, o.k2, p.m1_frac * o.n, p.m2_frac * o.n, p.r1, p.r2);
      csv_row(csv, rp, o.k1, o.k2, o.n, std::to_string(t), "", o.rational);
    }
  }
  if (schemes.count("zwxwl") != 0) {
    for (const auto& p : zwxwl_grid(o.k1, o.k2, o.n)) {
      csv_row(csv, p, o.k1, o.k2, o.n, "", "", o.rational);
    }
  }
  return write_output(o, csv.str(), out);
}

// Smallest t whose alpha-line reaches the target; alpha solved exactly.
HierConfig proposed_for_target(const Options& o, const Rational& target) {
  const int k = o.k1 * o.k2;
  std::vector<int> candidates;
  if (o.t_opt->count() > 0) {
    candidates.push_back(o.t);
  } else {
    for (int t = 1; t <= k; ++t) candidates.push_back(t);
  }
  for (int t : candidates) {
    const HierConfig base = validate_config({o.k1, o.k2, o.n, t, Rational(0)});
    const Rational m0 = global_memory(base);
    if (o.n > k) {
      if (m0 == target) return base;
      continue;
    }
    // Mbar moves linearly from m0 (alpha = 0) to 1 (alpha = 1).
    if (target < std::min(m0, Rational(1)) || target > std::max(m0, Rational(1))) continue;
    if (m0 == 1) return base;
    return base.with_alpha((m0 - target) / (m0 - 1));
  }
  throw RangeError("global memory " + to_decimal_string(target, 4) +
                   " is not reachable by the proposed scheme");
}

int cmd_compare(const Options& o, std::ostream& out) {
  if (o.mbar.empty()) throw RangeError("--mbar is required");
  const Rational target = parse_rational(o.mbar);
  const Rational beta_floor = parse_rational(o.beta_floor);
  if (beta_floor <= 0) throw RangeError("--beta-floor must be positive");
  const HierConfig cfg = proposed_for_target(o, target);
  const RatePoint proposed = composite(cfg);
  const Rational& m1 = proposed.m1;
  const Rational& m2 = proposed.m2;
  const int k1 = cfg.k1();
  const int k2 = cfg.k2();
  const int n = cfg.n_files();

  struct Row {
    std::optional<RatePoint> point;
    std::string note;
  };
  std::vector<Row> rows;
  auto guarded = [&](const std::string& name, auto&& compute) {
    try {
      rows.push_back(compute());
    } catch (const Error& e) {
      rows.push_back({std::nullopt, name + ": " + e.what()});
    }
  };
  guarded("KNMD", [&] {
    const KnmdChoice c = knmd_optimal_tuple(k2, n, m1, m2, beta_floor);
    const LayerRates r = knmd_rates(k1, k2, n, m1, m2, c.tuple);
    return Row{make_rate_point("KNMD", k1, k2, m1, m2, r.r1, r.r2),
               "region " + to_string(c.region) + ", split " + to_decimal_string(c.tuple.split, 4) +
                   ", beta " + to_decimal_string(c.tuple.beta, 4) +
                   (c.tuple.beta_floored ? " (floor)" : "")};
  });
  guarded("ZWXWL", [&] {
    const RatePoint p = zwxwl_envelope(zwxwl_grid(k1, k2, n, GridKind::kAxes), target);
    return Row{p, "memory sharing over grid points with M1 = 0 or M2 = 0"};
  });
  auto tuple_row = [&](const std::string& name, const TupleChoice& c) {
    return Row{make_rate_point(name, k1, k2, m1, m2, c.rates.r1, c.rates.r2),
               "tuple " + c.tuple.label + ", split " + to_decimal_string(c.tuple.split, 4) +
                   ", beta " + to_decimal_string(c.tuple.beta, 4) +
                   (c.tuple.beta_floored ? " (floor)" : "")};
  };
  guarded("ZWXWLL", [&] { return tuple_row("ZWXWLL", zwxwll_best(k1, k2, n, m1, m2, beta_floor)); });
  guarded("WWCY", [&] { return tuple_row("WWCY", wwcy_best(k1, k2, n, m1, m2, beta_floor)); });
  rows.push_back({proposed, "t=" + std::to_string(cfg.t()) + ", alpha=" +
                                to_fraction_string(cfg.alpha())});

  out << "K1=" << k1 << " K2=" << k2 << " N=" << n << " Mbar=" << to_decimal_string(target, 4)
      << " beta floor=" << to_fraction_string(beta_floor) << "\n";
  const int places = 4;
  out << std::left << std::setw(10) << "scheme";
  for (const char* h : {"M1", "M2", "Mbar", "R1", "R2", "Rbar"}) out << std::right << std::setw(10) << h;
  out << "  note\n";
  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  for (const auto& row : rows) {
    if (!row.point) {
      out << std::left << std::setw(10) << row.note.substr(0, row.note.find(':')) << "  n/a: "
          << row.note << "\n";
      continue;
    }
    const RatePoint& p = *row.point;
    out << std::left << std::setw(10) << p.scheme;
    for (const Rational* v : {&p.m1, &p.m2, &p.m_bar, &p.r1, &p.r2, &p.r_bar}) {
      out << std::right << std::setw(10) << fmt(*v, o.rational, places);
    }
    out << "  " << row.note << "\n";
    const bool is_proposed = p.scheme == "proposed";
    csv_row(csv, p, k1, k2, n, is_proposed ? std::to_string(cfg.t()) : "",
            is_proposed ? fmt(cfg.alpha(), o.rational, 6) : "", o.rational);
  }
  if (!o.out.empty()) return write_output(o, csv.str(), out);
  return kOk;
}

int cmd_region(const Options& o, std::ostream& out) {
  const int t = o.t_opt->count() > 0 ? o.t : o.k2;
  const HierConfig cfg = validate_config({o.k1, o.k2, o.n, t, parse_rational(o.alpha)});
  const RegionReport r = region_classify(cfg);
  out << "K1=" << cfg.k1() << " K2=" << cfg.k2() << " N=" << cfg.n_files() << " t=" << cfg.t()
      << " alpha=" << to_fraction_string(cfg.alpha()) << "\n";
  out << "A = " << fmt_both(r.region_a) << "\n";
  out << "B = " << (r.region_b ? fmt_both(*r.region_b) : std::string("unbounded")) << "\n";
  out << "threshold (A-K)/(A-1/K1) = " << fmt_both(r.alpha_threshold) << "\n";
  out << to_string(r.region) << "\n";
  if (r.theorem2_applies) out << "K1 > K2: Region II expected for every alpha\n";
  if (r.theorem3_applies) out << "K1 <= K2: Region III excluded\n";
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(o, out);
  const std::vector<Rational> alphas{0, make_rational(1, 3), make_rational(1, 2), 1};
  const auto grid = decode_grid(o.max_users, alphas);
  const VerifyStats stats = verify_grid(grid, seed, !o.serial);
  out << "decode: " << stats.instances << " configurations, " << stats.demand_vectors
      << " demand vectors, " << stats.decode_failures << " decode failures, "
      << stats.rate_mismatches << " rate mismatches, " << stats.cache_violations
      << " cache mismatches\n";
  for (const auto& m : stats.messages) out << "  " << m << "\n";
  const TheoremStats th = verify_theorems(o.theorem_max);
  out << "theorems: " << th.pairs << " (K1, K2) pairs, " << th.region_checks
      << " region checks, " << th.violations.size() << " violations\n";
  for (const auto& v : th.violations) out << "  " << v << "\n";
  if (stats.decode_failures > 0) return kDecode;
  if (!stats.ok() || !th.ok()) return kInvariant;
  out << "all checks passed\n";
  return kOk;
}

// Turns a flat key=value file into --key=value arguments.
std::vector<std::string> config_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RangeError("cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw RangeError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

// Config-file values go first so command-line flags override them.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  std::vector<std::string> out{args.empty() ? std::string("hiercache") : args[0]};
  if (!path) {
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  const auto extra = config_args(*path);
  if (!rest.empty()) out.push_back(rest.front());
  out.insert(out.end(), extra.begin(), extra.end());
  if (!rest.empty()) out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

void add_system(CLI::App* cmd, Options& o) {
  cmd->add_option("--k1", o.k1, "mirrors K1")->required();
  cmd->add_option("--k2", o.k2, "users per mirror K2")->required();
  cmd->add_option("--n", o.n, "library size N")->required();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Two-layer hierarchical coded caching: simulation and rate analysis", "hiercache"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.add_option("--config", "flat key=value file; flags on the command line win");

  auto* simulate = app.add_subcommand("simulate", "place, deliver and decode one demand vector");
  add_system(simulate, o);
  o.t_opt = simulate->add_option("--t", o.t, "placement parameter t");
  simulate->add_option("--alpha", o.alpha, "layer split p/q");
  simulate->add_option("--m1", o.m1, "mirror memory (single-mirror mode)");
  simulate->add_option("--file-bytes", o.file_bytes, "file size F; default: smallest valid");
  simulate->add_option("--demands", o.demands, "comma-separated 1-based file indices");
  o.seed_opt = simulate->add_option("--seed", o.seed, "seed for library bytes and demands");
  simulate->add_flag("--single-mirror", o.single_mirror, "use the single-mirror scheme (K1 = 1)");

  auto* sweep = app.add_subcommand("sweep", "CSV of rate points over a (t, alpha) grid");
  add_system(sweep, o);
  sweep->add_option("--ts", o.ts, "comma-separated t values; default 1..K-1");
  sweep->add_option("--alpha-step", o.alpha_step, "alpha grid step p/q");
  sweep->add_option("--schemes", o.schemes, "any of proposed,kwc,zwxwl");
  sweep->add_option("--out", o.out, "output path; default stdout");
  sweep->add_flag("--rational", o.rational, "print exact p/q values");

  auto* compare = app.add_subcommand("compare", "baseline table at a fixed global memory");
  add_system(compare, o);
  compare->add_option("--mbar", o.mbar, "target global memory")->required();
  auto* compare_t = compare->add_option("--t", o.t, "force t for the proposed row");
  compare->add_option("--beta-floor", o.beta_floor, "stand-in for beta = 0");
  compare->add_option("--out", o.out, "also write the rows as CSV");
  compare->add_flag("--rational", o.rational, "print exact p/q values");

  auto* region = app.add_subcommand("region", "memory region of the proposed scheme (t = K2)");
  add_system(region, o);
  region->add_option("--alpha", o.alpha, "layer split p/q")->required();
  auto* region_t = region->add_option("--t", o.t, "must equal K2");

  auto* verify = app.add_subcommand("verify", "exhaustive decode and theorem checks");
  verify->add_option("--max-k", o.max_users, "largest K1*K2 in the decode grid");
  verify->add_option("--theorem-max", o.theorem_max, "largest K1, K2 for the theorem grid");
  auto* verify_seed = verify->add_option("--seed", o.seed, "library seed");
  verify->add_flag("--serial", o.serial, "use the single-threaded kernel");

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const Error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kInvariant;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kConfig;
  }

  try {
    if (*simulate) return cmd_simulate(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*compare) {
      o.t_opt = compare_t;
      return cmd_compare(o, out);
    }
    if (*region) {
      o.t_opt = region_t;
      return cmd_region(o, out);
    }
    if (*verify) {
      o.seed_opt = verify_seed;
      return cmd_verify(o, out);
    }
  } catch (const DemandError& e) {
    err << "demand error: " << e.what() << "\n";
    return kDemand;
  } catch (const DivisibilityError& e) {
    err << "divisibility error: " << e.what() << "\n";
    return kDivisibility;
  } catch (const DecodeError& e) {
    err << "decode error: " << e.what() << "\n";
    return kDecode;
  } catch (const ReconstructError& e) {
    err << "decode error: " << e.what() << "\n";
    return kDecode;
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::out_of_range& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}

}  // namespace hiercache::cli
