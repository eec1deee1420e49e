#pragma once

#include "hiercache/analytics.hpp"
#include "hiercache/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hiercache {

/// Smallest file size that splits into whole chunks of at least
/// `min_chunk_bytes` each.
std::uint64_t sim_file_bytes(const HierConfig& cfg, std::uint64_t min_chunk_bytes = 8);

/// Every demand vector in [N]^K (lexicographic), optionally only the ones
/// that cover all N files.
std::vector<std::vector<int>> enumerate_demands(int users, int n_files, bool surjective_only);

/// Outcome of one simulated demand vector.
struct DemandCheck {
  bool decode_ok = true;
  bool rates_ok = true;
  bool caches_ok = true;
  std::string detail;  ///< first problem, empty if none

  bool ok() const { return decode_ok && rates_ok && caches_ok; }
  friend bool operator==(const DemandCheck&, const DemandCheck&) = default;
};

/// Simulates one demand vector and compares rates and cache sizes with the
/// closed forms.
DemandCheck check_demand(const HierConfig& cfg, const std::vector<int>& demands,
                         std::uint64_t seed);

struct VerifyStats {
  std::uint64_t instances = 0;
  std::uint64_t demand_vectors = 0;
  std::uint64_t decode_failures = 0;
  std::uint64_t rate_mismatches = 0;
  std::uint64_t cache_violations = 0;
  std::vector<std::string> messages;  ///< capped at kMaxMessages

  static constexpr std::size_t kMaxMessages = 20;

  bool ok() const { return decode_failures == 0 && rate_mismatches == 0 && cache_violations == 0; }
  void merge(const VerifyStats& other);
  friend bool operator==(const VerifyStats&, const VerifyStats&) = default;
};

/// Every surjective demand vector of one configuration. The parallel
/// version splits the demand vectors across OpenMP threads and merges in
/// enumeration order, so both return identical stats.
VerifyStats verify_config_serial(const HierConfig& cfg, std::uint64_t seed);
VerifyStats verify_config_parallel(const HierConfig& cfg, std::uint64_t seed);

/// Every valid (K1, K2, N, t, alpha) with K1*K2 <= max_users, N <= K1*K2
/// and alpha from `alphas`.
std::vector<HierConfig> decode_grid(int max_users, const std::vector<Rational>& alphas);

VerifyStats verify_grid(const std::vector<HierConfig>& configs, std::uint64_t seed,
                        bool parallel);

struct TheoremStats {
  std::uint64_t pairs = 0;
  std::uint64_t region_checks = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Lemma 1-3, Theorems 2-3 and the corollary over 2 <= K1, K2 <= max_k,
/// skipping K1 = K2 = 2 where the statements exclude it; region checks use
/// alpha = 0, 1/20, ..., 1.
TheoremStats verify_theorems(int max_k);

struct SweepRow {
  int t = 0;
  Rational alpha = 0;
  RatePoint point;
};

/// Proposed-scheme rows for every (t, alpha); rows follow the order of the
/// loops t then alpha. Invalid combinations are skipped.
std::vector<SweepRow> sweep_proposed(int k1, int k2, int n_files, const std::vector<int>& ts,
                                      const std::vector<Rational>& alphas, bool parallel);

}  // namespace hiercache
