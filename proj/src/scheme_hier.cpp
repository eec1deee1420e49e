#include "hiercache/scheme_hier.hpp"

#include <algorithm>

namespace hiercache {

namespace {

Rational l1_size(const HierConfig& cfg) { return cfg.alpha() / cfg.users(); }

Rational l2_size(const HierConfig& cfg) {
  return (1 - cfg.alpha()) / binom_q(cfg.users(), cfg.t());
}

bool covers(UserMask set, UserMask sub) { return (set & sub) == sub; }

void check_sim_size(const HierConfig& cfg) {
  if (cfg.users() > kMaxSimUsers) {
    throw RangeError("simulation supports at most " + std::to_string(kMaxSimUsers) + " users");
  }
}

const CodedSymbol* coded_entry_of(const std::vector<CodedSymbol>& cache, int user) {
  for (const auto& s : cache) {
    const ChunkId& g = s.generators().front();
    if (g.layer == Layer::kOne && g.slot == static_cast<std::uint64_t>(user)) return &s;
  }
  return nullptr;
}

}  // namespace

Rational cache_size(const std::vector<CodedSymbol>& cache) {
  Rational sum = 0;
  for (const auto& s : cache) sum += s.size_files();
  return sum;
}

Placement place(const HierConfig& cfg, const Library& library, const FilePartition& partition) {
  check_sim_size(cfg);
  const ChunkLayout layout = ChunkLayout::hierarchical(partition, cfg.t());
  const int n_files = cfg.n_files();
  Placement p;
  p.mirror_caches.resize(static_cast<std::size_t>(cfg.k1()));
  p.user_caches.resize(static_cast<std::size_t>(cfg.users()));

  for (int m = 0; m < cfg.k1(); ++m) {
    auto& cache = p.mirror_caches[static_cast<std::size_t>(m)];
    const UserMask sm = mirror_mask(cfg, m);
    if (cfg.has_layer1()) {
      for (int k : users_of_mirror(cfg, m)) {
        std::vector<ChunkId> gens;
        for (int n = 0; n < n_files; ++n) gens.push_back(ChunkId::layer1(n, k));
        cache.push_back(encode(library, layout, std::move(gens)));
      }
    }
    if (cfg.has_layer2() && cfg.t() >= cfg.k2()) {
      for (int n = 0; n < n_files; ++n) {
        for (UserMask s : layout.subsets().subsets()) {
          if (covers(s, sm)) cache.push_back(encode(library, layout, {ChunkId::layer2(n, s)}));
        }
      }
    }
  }

  if (cfg.has_layer2()) {
    for (int k = 0; k < cfg.users(); ++k) {
      const UserMask sm = mirror_mask(cfg, mirror_of_user(cfg, k));
      auto& cache = p.user_caches[static_cast<std::size_t>(k)];
      for (int n = 0; n < n_files; ++n) {
        for (UserMask s : layout.subsets().subsets()) {
          if ((s >> k & 1U) != 0 && !covers(s, sm)) {
            cache.push_back(encode(library, layout, {ChunkId::layer2(n, s)}));
          }
        }
      }
    }
  }
  return p;
}

std::vector<Transmission> server_deliver(const HierConfig& cfg, const Library& library,
                                         const FilePartition& partition,
                                         const DemandProfile& profile) {
  check_sim_size(cfg);
  const ChunkLayout layout = ChunkLayout::hierarchical(partition, cfg.t());
  std::vector<Transmission> out;
  if (cfg.has_layer1()) out = layer1_server_messages(library, layout, profile);
  if (cfg.has_layer2()) {
    for (UserMask s : k_subsets(cfg.users(), cfg.t() + 1)) {
      std::vector<ChunkId> gens;
      for (int member : mask_members(s)) {
        const int want = profile.demands[static_cast<std::size_t>(member)];
        gens.push_back(ChunkId::layer2(want, s & ~(UserMask{1} << member)));
      }
      out.push_back({Step::kSM3, encode(library, layout, std::move(gens)), s});
    }
  }
  return out;
}

MirrorKnowledge mirror_reconstruct(const HierConfig& cfg, int mirror,
                                   const std::vector<CodedSymbol>& mirror_cache,
                                   std::span<const Transmission> server_msgs,
                                   const DemandProfile& profile, const FilePartition& partition,
                                   const Library* truth) {
  check_sim_size(cfg);
  const ChunkLayout layout = ChunkLayout::hierarchical(partition, cfg.t());
  const SymbolIndex received(server_msgs);
  MirrorKnowledge known;

  if (cfg.has_layer1()) {
    for (int lambda : users_of_mirror(cfg, mirror)) {
      const CodedSymbol* entry = coded_entry_of(mirror_cache, lambda);
      if (entry == nullptr) {
        throw ReconstructError("mirror cache lacks the coded entry of user " +
                               std::to_string(lambda + 1));
      }
      auto got = recover_layer1(lambda, *entry, received, profile, cfg.users(),
                                FailureKind::kReconstruct);
      known.layer1.merge(got);
    }
    if (truth != nullptr) {
      for (const auto& [id, bytes] : known.layer1) {
        if (bytes != chunk_payload(*truth, layout, id)) {
          throw ReconstructError("mirror " + std::to_string(mirror + 1) + " rebuilt a wrong " +
                                 to_string(id));
        }
      }
    }
  }

  if (cfg.has_layer2()) {
    std::map<ChunkId, Bytes> cached;
    for (const auto& s : mirror_cache) {
      if (s.is_uncoded() && s.generators().front().layer == Layer::kTwo) {
        cached.emplace(s.generators().front(), s.payload());
      }
    }
    std::map<UserMask, const Transmission*> sm3;
    for (const auto& msg : server_msgs) {
      if (msg.step == Step::kSM3) sm3.emplace(msg.subset, &msg);
    }
    const UserMask sm = mirror_mask(cfg, mirror);
    for (UserMask s : k_subsets(cfg.users(), cfg.t() + 1)) {
      if ((s & sm) == 0) continue;
      const auto it = sm3.find(s);
      if (it == sm3.end()) {
        throw ReconstructError("no server symbol for a multicast group of mirror " +
                               std::to_string(mirror + 1));
      }
      const CodedSymbol& sym = it->second->symbol;
      Bytes payload = sym.payload();
      std::vector<ChunkId> kept;
      for (const ChunkId& g : sym.generators()) {
        const auto c = cached.find(g);
        if (c != cached.end()) {
          xor_into(payload, c->second);
        } else {
          kept.push_back(g);
        }
      }
      CodedSymbol fwd(kept, std::move(payload), sym.size_files());
      if (truth != nullptr && fwd.payload() != encode(*truth, layout, kept).payload()) {
        throw ReconstructError("stripped multicast symbol does not match its generators");
      }
      known.forwarded.emplace(s, std::move(fwd));
    }
  }
  return known;
}

std::vector<Transmission> mirror_deliver(const HierConfig& cfg, int mirror,
                                         const MirrorKnowledge& known,
                                         const std::vector<CodedSymbol>& mirror_cache,
                                         const DemandProfile& profile) {
  std::vector<Transmission> out;
  const auto& files = profile.per_mirror_files.at(static_cast<std::size_t>(mirror));
  if (cfg.has_layer1()) {
    for (int n : files) {
      for (int i = 0; i < cfg.users(); ++i) {
        const ChunkId id = ChunkId::layer1(n, i);
        const auto it = known.layer1.find(id);
        if (it == known.layer1.end()) {
          throw ReconstructError("mirror " + std::to_string(mirror + 1) + " lacks " + to_string(id));
        }
        out.push_back({Step::kMU1, CodedSymbol({id}, it->second, l1_size(cfg))});
      }
    }
  }
  if (cfg.has_layer2()) {
    // k_subsets order, so the log follows subset rank rather than mask value.
    for (UserMask s : k_subsets(cfg.users(), cfg.t() + 1)) {
      const auto it = known.forwarded.find(s);
      if (it != known.forwarded.end()) out.push_back({Step::kMU2, it->second, s});
    }
    for (int n : files) {
      for (const auto& sym : mirror_cache) {
        const ChunkId& g = sym.generators().front();
        if (sym.is_uncoded() && g.layer == Layer::kTwo && g.file == n) {
          out.push_back({Step::kMU3, sym});
        }
      }
    }
  }
  return out;
}

std::map<ChunkId, Bytes> user_decode_chunks(const HierConfig& cfg, int user,
                                            const std::vector<CodedSymbol>& user_cache,
                                            std::span<const Transmission> mirror_msgs,
                                            const DemandProfile& profile,
                                            const FilePartition& partition) {
  check_sim_size(cfg);
  const ChunkLayout layout = ChunkLayout::hierarchical(partition, cfg.t());
  const int want = profile.demands.at(static_cast<std::size_t>(user));

  std::map<ChunkId, Bytes> side;
  for (const auto& s : user_cache) side.emplace(s.generators().front(), s.payload());
  std::map<UserMask, const CodedSymbol*> multicast;
  for (const auto& msg : mirror_msgs) {
    if (msg.step == Step::kMU2) {
      multicast.emplace(msg.subset, &msg.symbol);
    } else {
      side.emplace(msg.symbol.generators().front(), msg.symbol.payload());
    }
  }

  std::map<ChunkId, Bytes> got;
  auto take = [&](const ChunkId& id) {
    const auto it = side.find(id);
    if (it == side.end()) {
      throw DecodeError("user " + std::to_string(user + 1) + " never receives " + to_string(id));
    }
    got.emplace(id, it->second);
  };

  if (cfg.has_layer1()) {
    for (int i = 0; i < cfg.users(); ++i) take(ChunkId::layer1(want, i));
  }
  if (cfg.has_layer2()) {
    const UserMask me = UserMask{1} << user;
    for (UserMask s : layout.subsets().subsets()) {
      const ChunkId id = ChunkId::layer2(want, s);
      if ((s & me) != 0) {
        take(id);
        continue;
      }
      const auto it = multicast.find(s | me);
      if (it == multicast.end()) {
        throw DecodeError("user " + std::to_string(user + 1) + " has no multicast for " +
                          to_string(id));
      }
      auto payload = peel(*it->second, id, side);
      if (!payload || !it->second->contains(id)) {
        throw DecodeError("user " + std::to_string(user + 1) + " cannot peel " + to_string(id));
      }
      got.emplace(id, std::move(*payload));
    }
  }
  return got;
}

Bytes user_decode(const HierConfig& cfg, int user, const std::vector<CodedSymbol>& user_cache,
                  std::span<const Transmission> mirror_msgs, const DemandProfile& profile,
                  const FilePartition& partition) {
  const auto chunks = user_decode_chunks(cfg, user, user_cache, mirror_msgs, profile, partition);
  const ChunkLayout layout = ChunkLayout::hierarchical(partition, cfg.t());
  return assemble_file(layout, profile.demands.at(static_cast<std::size_t>(user)), chunks);
}

MeasuredRates measured_rates(const TransmissionLog& log) {
  MeasuredRates r;
  r.r1 = total_size(log.server_msgs);
  for (const auto& msgs : log.mirror_msgs) {
    r.r2_per_mirror.push_back(total_size(msgs));
    r.r2_worst = std::max(r.r2_worst, r.r2_per_mirror.back());
  }
  return r;
}

bool SimulationResult::all_ok() const {
  return failures.empty() &&
         std::all_of(decoded_ok.begin(), decoded_ok.end(), [](bool b) { return b; });
}

SimulationResult simulate_hier(const HierConfig& cfg, const Library& library,
                               const std::vector<int>& demands) {
  check_sim_size(cfg);
  if (library.size() != cfg.n_files()) {
    throw RangeError("library holds " + std::to_string(library.size()) + " files, expected " +
                     std::to_string(cfg.n_files()));
  }
  const FilePartition partition = make_partition(cfg, library.file_bytes());
  SimulationResult res;
  res.profile = build_demand_profile(cfg, demands);
  res.placement = place(cfg, library, partition);
  res.log.server_msgs = server_deliver(cfg, library, partition, res.profile);
  res.decoded_ok.assign(static_cast<std::size_t>(cfg.users()), false);

  for (const auto& c : res.placement.mirror_caches) {
    res.mirror_cache_max = std::max(res.mirror_cache_max, cache_size(c));
  }
  for (const auto& c : res.placement.user_caches) {
    res.user_cache_max = std::max(res.user_cache_max, cache_size(c));
  }

  res.log.mirror_msgs.resize(static_cast<std::size_t>(cfg.k1()));
  for (int m = 0; m < cfg.k1(); ++m) {
    const auto& lambda = res.placement.mirror_caches[static_cast<std::size_t>(m)];
    auto& msgs = res.log.mirror_msgs[static_cast<std::size_t>(m)];
    try {
      const auto known =
          mirror_reconstruct(cfg, m, lambda, res.log.server_msgs, res.profile, partition, &library);
      msgs = mirror_deliver(cfg, m, known, lambda, res.profile);
    } catch (const Error& e) {
      res.failures.push_back("mirror " + std::to_string(m + 1) + ": " + e.what());
      continue;
    }
    for (int k : users_of_mirror(cfg, m)) {
      try {
        const Bytes file = user_decode(cfg, k, res.placement.user_caches[static_cast<std::size_t>(k)],
                                       msgs, res.profile, partition);
        const bool ok = file == library.file(res.profile.demands[static_cast<std::size_t>(k)]);
        res.decoded_ok[static_cast<std::size_t>(k)] = ok;
        if (!ok) res.failures.push_back("user " + std::to_string(k + 1) + ": wrong bytes");
      } catch (const Error& e) {
        res.failures.push_back("user " + std::to_string(k + 1) + ": " + e.what());
      }
    }
  }
  res.rates = measured_rates(res.log);
  return res;
}

}  // namespace hiercache
