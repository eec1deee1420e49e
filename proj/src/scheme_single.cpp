#include "hiercache/scheme_single.hpp"

#include "hiercache/analytics.hpp"

#include <algorithm>
#include <set>

namespace hiercache {

namespace {

std::uint64_t exact_bytes(const Rational& bytes, const char* what) {
  if (!is_integer(bytes)) {
    throw DivisibilityError(std::string(what) + " is not a whole number of bytes");
  }
  const BigInt whole = numerator(bytes);
  return whole.convert_to<std::uint64_t>();
}

std::vector<int> demanded_files(const DemandProfile& profile) {
  const std::set<int> files(profile.demands.begin(), profile.demands.end());
  return {files.begin(), files.end()};
}

}  // namespace

Rational single_m1_bound(int n_files, const Rational& alpha) { return (1 - alpha) * n_files; }

Rational single_m1_bound_alt(int n_files, const Rational& alpha) {
  return (1 - alpha) * (1 - alpha) * n_files;
}

SingleMirrorConfig make_single_config(int users, int n_files, const Rational& alpha,
                                      const Rational& m1) {
  if (users < 1 || n_files < 1) throw RangeError("K and N must be positive");
  if (alpha < 0 || alpha > 1) throw RangeError("alpha must lie in [0, 1]");
  if (n_files > users && alpha != 0) {
    throw ConstraintError("N > K requires alpha = 0");
  }
  const Rational bound = single_m1_bound(n_files, alpha);
  if (m1 < 0 || m1 > bound) {
    throw RangeError("M1 must lie in [0, " + to_fraction_string(bound) + "]");
  }
  SingleMirrorConfig cfg;
  cfg.k_ = users;
  cfg.n_files_ = n_files;
  cfg.alpha_ = alpha;
  cfg.m1_ = m1;
  cfg.theta_ = bound == 0 ? Rational(0) : m1 / bound;
  return cfg;
}

std::uint64_t single_sim_file_bytes(const SingleMirrorConfig& cfg,
                                    std::uint64_t min_chunk_bytes) {
  const Rational l1 = cfg.alpha() / cfg.users();
  const Rational head = cfg.m1() / cfg.n_files();
  const Rational tail = 1 - cfg.alpha() - head;
  BigInt base = denominator(l1);
  base = base / gcd(base, BigInt(denominator(head))) * denominator(head);
  Rational smallest = 0;
  for (const Rational& frac : {l1, head, tail}) {
    if (frac == 0) continue;
    const Rational bytes = frac * Rational(base);
    if (smallest == 0 || bytes < smallest) smallest = bytes;
  }
  BigInt mult = 1;
  while (smallest * Rational(mult) < Rational(min_chunk_bytes)) ++mult;
  const BigInt bytes = base * mult;
  return bytes.convert_to<std::uint64_t>();
}

ChunkLayout single_layout(const SingleMirrorConfig& cfg, std::uint64_t file_bytes) {
  if (file_bytes == 0) throw RangeError("file size must be positive");
  const Rational f(file_bytes);
  const std::uint64_t l1 = exact_bytes(cfg.alpha() * f / cfg.users(), "alpha*F/K");
  const std::uint64_t head = exact_bytes(cfg.m1() * f / cfg.n_files(), "M1*F/N");
  return ChunkLayout::single_mirror(file_bytes, cfg.users(), l1, head);
}

Placement place_single(const SingleMirrorConfig& cfg, const Library& library) {
  const ChunkLayout layout = single_layout(cfg, library.file_bytes());
  Placement p;
  p.mirror_caches.resize(1);
  p.user_caches.resize(static_cast<std::size_t>(cfg.users()));
  if (layout.l1_chunk_bytes() > 0) {
    for (int k = 0; k < cfg.users(); ++k) {
      std::vector<ChunkId> gens;
      for (int n = 0; n < cfg.n_files(); ++n) gens.push_back(ChunkId::layer1(n, k));
      p.user_caches[static_cast<std::size_t>(k)].push_back(encode(library, layout, std::move(gens)));
    }
  }
  if (layout.length(ChunkId::head(0)) > 0) {
    for (int n = 0; n < cfg.n_files(); ++n) {
      p.mirror_caches[0].push_back(encode(library, layout, {ChunkId::head(n)}));
    }
  }
  return p;
}

TransmissionLog deliver_single(const SingleMirrorConfig& cfg, const Placement& placement,
                               const Library& library, const DemandProfile& profile) {
  const ChunkLayout layout = single_layout(cfg, library.file_bytes());
  TransmissionLog log;
  if (layout.l1_chunk_bytes() > 0) {
    log.server_msgs = layer1_server_messages(library, layout, profile);
  }
  const auto files = demanded_files(profile);
  const bool has_tail = layout.length(ChunkId::tail(0)) > 0;
  if (has_tail) {
    for (int n : files) {
      log.server_msgs.push_back({Step::kSM3, encode(library, layout, {ChunkId::tail(n)})});
    }
  }

  // The mirror only relays and serves; it never needs to decode anything.
  log.mirror_msgs.resize(1);
  auto& relay = log.mirror_msgs[0];
  std::map<ChunkId, const CodedSymbol*> tails;
  for (const auto& msg : log.server_msgs) {
    if (msg.step == Step::kSM1) relay.push_back({Step::kMU1, msg.symbol});
    if (msg.step == Step::kSM2) relay.push_back({Step::kMU2, msg.symbol});
    if (msg.step == Step::kSM3) tails.emplace(msg.symbol.generators().front(), &msg.symbol);
  }
  std::map<ChunkId, const CodedSymbol*> heads;
  for (const auto& s : placement.mirror_caches.at(0)) heads.emplace(s.generators().front(), &s);
  for (int n : files) {
    if (const auto h = heads.find(ChunkId::head(n)); h != heads.end()) {
      relay.push_back({Step::kMU3, *h->second});
    }
    if (has_tail) {
      const auto t = tails.find(ChunkId::tail(n));
      if (t == tails.end()) throw ReconstructError("mirror never received " + to_string(ChunkId::tail(n)));
      relay.push_back({Step::kMU3, *t->second});
    }
  }
  return log;
}

Bytes decode_single(const SingleMirrorConfig& cfg, int user, const Placement& placement,
                    std::span<const Transmission> mirror_msgs, const DemandProfile& profile,
                    std::uint64_t file_bytes) {
  const ChunkLayout layout = single_layout(cfg, file_bytes);
  const int want = profile.demands.at(static_cast<std::size_t>(user));
  const SymbolIndex received(mirror_msgs);
  std::map<ChunkId, Bytes> got;
  if (layout.l1_chunk_bytes() > 0) {
    const auto& cache = placement.user_caches.at(static_cast<std::size_t>(user));
    if (cache.empty()) throw DecodeError("user " + std::to_string(user + 1) + " has an empty cache");
    got = recover_layer1(user, cache.front(), received, profile, cfg.users(), FailureKind::kDecode);
  }
  for (const ChunkId& id : {ChunkId::head(want), ChunkId::tail(want)}) {
    if (layout.length(id) == 0) continue;
    const auto it = received.uncoded().find(id);
    if (it == received.uncoded().end()) {
      throw DecodeError("user " + std::to_string(user + 1) + " never receives " + to_string(id));
    }
    got.emplace(id, it->second);
  }
  return assemble_file(layout, want, got);
}

Rational single_rate_r2(const SingleMirrorConfig& cfg) {
  return cfg.n_files() * (1 - cfg.alpha() / cfg.users());
}

Rational single_rate_r1(const SingleMirrorConfig& cfg) { return single_rate_r2(cfg) - cfg.m1(); }

Rational dominance_gap(int users, int n_files, const Rational& alpha) {
  const HierConfig hier = validate_config({1, users, n_files, users, alpha});
  const int t_m = std::min(n_files, users);
  const Rational hier_rate = rate_r1(hier) + rate_r2(hier, t_m);
  const auto single = make_single_config(users, n_files, alpha, single_m1_bound(n_files, alpha));
  return hier_rate - (single_rate_r1(single) + single_rate_r2(single));
}

SimulationResult simulate_single(const SingleMirrorConfig& cfg, const Library& library,
                                 const std::vector<int>& demands) {
  if (library.size() != cfg.n_files()) {
    throw RangeError("library holds " + std::to_string(library.size()) + " files, expected " +
                     std::to_string(cfg.n_files()));
  }
  SimulationResult res;
  res.profile = build_demand_profile(1, cfg.users(), cfg.n_files(), cfg.alpha() != 0, demands);
  res.placement = place_single(cfg, library);
  res.log = deliver_single(cfg, res.placement, library, res.profile);
  for (const auto& c : res.placement.mirror_caches) {
    res.mirror_cache_max = std::max(res.mirror_cache_max, cache_size(c));
  }
  for (const auto& c : res.placement.user_caches) {
    res.user_cache_max = std::max(res.user_cache_max, cache_size(c));
  }
  res.decoded_ok.assign(static_cast<std::size_t>(cfg.users()), false);
  for (int k = 0; k < cfg.users(); ++k) {
    try {
      const Bytes file = decode_single(cfg, k, res.placement, res.log.mirror_msgs[0], res.profile,
                                       library.file_bytes());
      const bool ok = file == library.file(res.profile.demands[static_cast<std::size_t>(k)]);
      res.decoded_ok[static_cast<std::size_t>(k)] = ok;
      if (!ok) res.failures.push_back("user " + std::to_string(k + 1) + ": wrong bytes");
    } catch (const Error& e) {
      res.failures.push_back("user " + std::to_string(k + 1) + ": " + e.what());
    }
  }
  res.rates = measured_rates(res.log);
  return res;
}

}  // namespace hiercache
