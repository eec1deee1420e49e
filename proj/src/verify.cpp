#include "hiercache/verify.hpp"

#include "hiercache/library.hpp"
#include "hiercache/scheme_hier.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

namespace hiercache {

namespace {

BigInt lcm_big(const BigInt& a, const BigInt& b) { return a / gcd(a, b) * b; }

std::string describe(const HierConfig& cfg, const std::vector<int>& demands) {
  std::ostringstream os;
  os << "K1=" << cfg.k1() << " K2=" << cfg.k2() << " N=" << cfg.n_files() << " t=" << cfg.t()
     << " alpha=" << to_fraction_string(cfg.alpha()) << " d=(";
  for (std::size_t i = 0; i < demands.size(); ++i) os << (i ? "," : "") << demands[i] + 1;
  os << ")";
  return os.str();
}

void record(VerifyStats& stats, const HierConfig& cfg, const std::vector<int>& demands,
            const DemandCheck& c) {
  ++stats.demand_vectors;
  if (!c.decode_ok) ++stats.decode_failures;
  if (!c.rates_ok) ++stats.rate_mismatches;
  if (!c.caches_ok) ++stats.cache_violations;
  if (!c.ok() && stats.messages.size() < VerifyStats::kMaxMessages) {
    stats.messages.push_back(describe(cfg, demands) + ": " + c.detail);
  }
}

std::optional<HierConfig> try_config(long long k1, long long k2, long long n, long long t,
                                     const Rational& alpha) {
  try {
    return validate_config({k1, k2, n, t, alpha});
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

std::uint64_t sim_file_bytes(const HierConfig& cfg, std::uint64_t min_chunk_bytes) {
  const Rational l1 = cfg.alpha() / cfg.users();
  const Rational l2 = (1 - cfg.alpha()) / binom_q(cfg.users(), cfg.t());
  const BigInt base = lcm_big(denominator(l1), denominator(l2));
  // Smallest nonzero chunk in bytes at F = base.
  Rational smallest = 0;
  for (const Rational& frac : {l1, l2}) {
    if (frac == 0) continue;
    const Rational bytes = frac * Rational(base);
    if (smallest == 0 || bytes < smallest) smallest = bytes;
  }
  BigInt mult = 1;
  while (smallest * Rational(mult) < Rational(min_chunk_bytes)) ++mult;
  const BigInt bytes = base * mult;
  return bytes.convert_to<std::uint64_t>();
}

std::vector<std::vector<int>> enumerate_demands(int users, int n_files, bool surjective_only) {
  std::vector<std::vector<int>> out;
  std::vector<int> d(static_cast<std::size_t>(users), 0);
  while (true) {
    bool keep = true;
    if (surjective_only) {
      std::vector<bool> seen(static_cast<std::size_t>(n_files), false);
      for (int v : d) seen[static_cast<std::size_t>(v)] = true;
      keep = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
    if (keep) out.push_back(d);
    int pos = users - 1;
    while (pos >= 0 && d[static_cast<std::size_t>(pos)] == n_files - 1) {
      d[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++d[static_cast<std::size_t>(pos)];
  }
  return out;
}

DemandCheck check_demand(const HierConfig& cfg, const std::vector<int>& demands,
                         std::uint64_t seed) {
  DemandCheck c;
  const Library lib = Library::random(cfg.n_files(), sim_file_bytes(cfg), seed);
  const SimulationResult res = simulate_hier(cfg, lib, demands);
  auto note = [&](const std::string& what) {
    if (c.detail.empty()) c.detail = what;
  };
  if (!res.all_ok()) {
    c.decode_ok = false;
    note(res.failures.empty() ? "decode failed" : res.failures.front());
  }
  if (res.rates.r1 != rate_r1(cfg)) {
    c.rates_ok = false;
    note("R1 measured " + to_fraction_string(res.rates.r1) + " vs " +
         to_fraction_string(rate_r1(cfg)));
  }
  for (int m = 0; m < cfg.k1(); ++m) {
    const int t_m = res.profile.per_mirror_count[static_cast<std::size_t>(m)];
    const Rational expect = rate_r2(cfg, t_m);
    const Rational& got = res.rates.r2_per_mirror[static_cast<std::size_t>(m)];
    if (got != expect) {
      c.rates_ok = false;
      note("R2 of mirror " + std::to_string(m + 1) + " measured " + to_fraction_string(got) +
           " vs " + to_fraction_string(expect));
    }
  }
  if (res.rates.r2_worst > rate_r2_worst(cfg)) {
    c.rates_ok = false;
    note("worst mirror rate above the worst-case formula");
  }
  const MemoryPoint mem = memory_point(cfg);
  if (res.mirror_cache_max != mem.m1 || res.user_cache_max != mem.m2) {
    c.caches_ok = false;
    note("cache sizes (" + to_fraction_string(res.mirror_cache_max) + ", " +
         to_fraction_string(res.user_cache_max) + ") vs (" + to_fraction_string(mem.m1) + ", " +
         to_fraction_string(mem.m2) + ")");
  }
  return c;
}

void VerifyStats::merge(const VerifyStats& other) {
  instances += other.instances;
  demand_vectors += other.demand_vectors;
  decode_failures += other.decode_failures;
  rate_mismatches += other.rate_mismatches;
  cache_violations += other.cache_violations;
  for (const auto& m : other.messages) {
    if (messages.size() >= kMaxMessages) break;
    messages.push_back(m);
  }
}

VerifyStats verify_config_serial(const HierConfig& cfg, std::uint64_t seed) {
  VerifyStats stats;
  stats.instances = 1;
  for (const auto& d : enumerate_demands(cfg.users(), cfg.n_files(), true)) {
    record(stats, cfg, d, check_demand(cfg, d, seed));
  }
  return stats;
}

VerifyStats verify_config_parallel(const HierConfig& cfg, std::uint64_t seed) {
  const auto demands = enumerate_demands(cfg.users(), cfg.n_files(), true);
  std::vector<DemandCheck> checks(demands.size());
  const auto count = static_cast<std::int64_t>(demands.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      checks[idx] = check_demand(cfg, demands[idx], seed);
    } catch (const std::exception& e) {
      checks[idx] = DemandCheck{false, true, true, e.what()};
    }
  }
  VerifyStats stats;
  stats.instances = 1;
  for (std::size_t i = 0; i < demands.size(); ++i) record(stats, cfg, demands[i], checks[i]);
  return stats;
}

std::vector<HierConfig> decode_grid(int max_users, const std::vector<Rational>& alphas) {
  std::vector<HierConfig> out;
  for (int k1 = 1; k1 <= max_users; ++k1) {
    for (int k2 = 1; k1 * k2 <= max_users; ++k2) {
      const int k = k1 * k2;
      for (int n = 1; n <= k; ++n) {
        for (int t = 1; t <= k; ++t) {
          for (const Rational& a : alphas) {
            if (auto cfg = try_config(k1, k2, n, t, a)) out.push_back(*cfg);
          }
        }
      }
    }
  }
  return out;
}

VerifyStats verify_grid(const std::vector<HierConfig>& configs, std::uint64_t seed,
                        bool parallel) {
  VerifyStats total;
  for (const auto& cfg : configs) {
    total.merge(parallel ? verify_config_parallel(cfg, seed) : verify_config_serial(cfg, seed));
  }
  return total;
}

TheoremStats verify_theorems(int max_k) {
  TheoremStats st;
  std::vector<Rational> alphas;
  for (int i = 0; i <= 20; ++i) alphas.push_back(make_rational(i, 20));
  auto fail = [&](int k1, int k2, const std::string& what) {
    st.violations.push_back(what + " fails at K1=" + std::to_string(k1) +
                            " K2=" + std::to_string(k2));
  };
  for (int k1 = 2; k1 <= max_k; ++k1) {
    for (int k2 = 2; k2 <= max_k; ++k2) {
      ++st.pairs;
      const bool excluded = k1 == 2 && k2 == 2;
      if (!excluded && !lemma1_holds(k1, k2)) fail(k1, k2, "Lemma 1");
      if (!excluded && !lemma2_holds(k1, k2)) fail(k1, k2, "Lemma 2");
      if (!excluded && !lemma3_holds(k1, k2)) fail(k1, k2, "Lemma 3");
      if (!theorem2_holds(k1, k2)) fail(k1, k2, "Theorem 2");
      if (!excluded && !theorem3_holds(k1, k2)) fail(k1, k2, "Theorem 3");
      const RegionConstants c = region_constants(k1, k2);
      for (const Rational& a : alphas) {
        ++st.region_checks;
        const Region r = classify_alpha(c, a);
        if (k1 > k2 && r != Region::kII) fail(k1, k2, "Theorem 2 region");
        if (!excluded && r == Region::kIII) fail(k1, k2, "Corollary");
      }
    }
  }
  return st;
}

std::vector<SweepRow> sweep_proposed(int k1, int k2, int n_files, const std::vector<int>& ts,
                                     const std::vector<Rational>& alphas, bool parallel) {
  std::vector<std::optional<SweepRow>> slots(ts.size() * alphas.size());
  const auto count = static_cast<std::int64_t>(slots.size());
  auto fill = [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    const int t = ts[idx / alphas.size()];
    const Rational& a = alphas[idx % alphas.size()];
    if (auto cfg = try_config(k1, k2, n_files, t, a)) {
      slots[idx] = SweepRow{t, a, composite(*cfg)};
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) fill(i);
  } else {
    for (std::int64_t i = 0; i < count; ++i) fill(i);
  }
  std::vector<SweepRow> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

}  // namespace hiercache
