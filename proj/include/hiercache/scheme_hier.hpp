#pragma once

#include "hiercache/delivery.hpp"
#include "hiercache/library.hpp"
#include "hiercache/model.hpp"

#include <map>
#include <vector>

namespace hiercache {

struct Placement {
  std::vector<std::vector<CodedSymbol>> mirror_caches;  ///< Lambda_m
  std::vector<std::vector<CodedSymbol>> user_caches;    ///< Z_k
};

/// Cache contents in file units.
Rational cache_size(const std::vector<CodedSymbol>& cache);

/// Largest simulated system; subsets are stored as 64-bit masks.
inline constexpr int kMaxSimUsers = kMaxMaskUsers;

/// Layer-1 slot k of mirror m holds XOR_n W1[n,k]; layer-2 chunks W2[n,S]
/// with S covering all of S_m sit at the mirror and the rest of S's members
/// keep them.
Placement place(const HierConfig& cfg, const Library& library, const FilePartition& partition);

/// SM1, SM2 (skipped at alpha = 0) and SM3 (skipped at alpha = 1).
std::vector<Transmission> server_deliver(const HierConfig& cfg, const Library& library,
                                         const FilePartition& partition,
                                         const DemandProfile& profile);

/// What mirror m has worked out from its cache and the server broadcast.
struct MirrorKnowledge {
  std::map<ChunkId, Bytes> layer1;             ///< W1[n,i] for n in D_m
  std::map<UserMask, CodedSymbol> forwarded;   ///< MU2 symbol per (t+1)-set
};

/// Rebuilds everything mirror m forwards. SM3 terms W2[d_s, S\{s}] that the
/// mirror caches itself (S\{s} covering S_m) are XORed out, since the users
/// of m do not hold them; those users get them uncoded in MU3 instead.
/// When `truth` is given every recovered layer-1 chunk is compared byte for
/// byte. Throws ReconstructError.
MirrorKnowledge mirror_reconstruct(const HierConfig& cfg, int mirror,
                                   const std::vector<CodedSymbol>& mirror_cache,
                                   std::span<const Transmission> server_msgs,
                                   const DemandProfile& profile, const FilePartition& partition,
                                   const Library* truth = nullptr);

std::vector<Transmission> mirror_deliver(const HierConfig& cfg, int mirror,
                                         const MirrorKnowledge& known,
                                         const std::vector<CodedSymbol>& mirror_cache,
                                         const DemandProfile& profile);

/// Every chunk of W_{d_k} recovered by user k. Throws DecodeError.
std::map<ChunkId, Bytes> user_decode_chunks(const HierConfig& cfg, int user,
                                            const std::vector<CodedSymbol>& user_cache,
                                            std::span<const Transmission> mirror_msgs,
                                            const DemandProfile& profile,
                                            const FilePartition& partition);

/// The demanded file, assembled. Throws DecodeError.
Bytes user_decode(const HierConfig& cfg, int user, const std::vector<CodedSymbol>& user_cache,
                  std::span<const Transmission> mirror_msgs, const DemandProfile& profile,
                  const FilePartition& partition);

struct MeasuredRates {
  Rational r1 = 0;
  std::vector<Rational> r2_per_mirror;
  Rational r2_worst = 0;
};

MeasuredRates measured_rates(const TransmissionLog& log);

struct SimulationResult {
  DemandProfile profile;
  Placement placement;
  TransmissionLog log;
  MeasuredRates rates;
  Rational mirror_cache_max = 0;  ///< largest Lambda_m, files
  Rational user_cache_max = 0;    ///< largest Z_k, files
  std::vector<bool> decoded_ok;   ///< per user, byte-exact match
  std::vector<std::string> failures;

  bool all_ok() const;
};

/// Place, deliver over both hops and decode every user. Decode problems are
/// reported in the result instead of thrown.
SimulationResult simulate_hier(const HierConfig& cfg, const Library& library,
                               const std::vector<int>& demands);

}  // namespace hiercache
