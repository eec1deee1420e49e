#pragma once

#include "hiercache/library.hpp"
#include "hiercache/model.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hiercache {

/// Delivery step that produced a transmission. SM = server to mirrors,
/// MU = mirror to users.
enum class Step { kSM1, kSM2, kSM3, kMU1, kMU2, kMU3 };

std::string to_string(Step step);

struct Transmission {
  Step step;
  CodedSymbol symbol;
  UserMask subset = 0;  ///< the (t+1)-set behind an SM3/MU2 symbol, else 0
};

struct TransmissionLog {
  std::vector<Transmission> server_msgs;
  std::vector<std::vector<Transmission>> mirror_msgs;  ///< one list per mirror
};

/// Sum of symbol sizes in file units.
Rational total_size(std::span<const Transmission> msgs);

/// Received symbols looked up by their generator set.
class SymbolIndex {
 public:
  SymbolIndex() = default;
  explicit SymbolIndex(std::span<const Transmission> msgs);

  void add(const CodedSymbol& symbol);
  /// Null if no received symbol has exactly these (sorted) generators.
  const CodedSymbol* find(const std::vector<ChunkId>& generators) const;
  /// Uncoded symbols keyed by their single generator.
  const std::map<ChunkId, Bytes>& uncoded() const { return uncoded_; }

 private:
  std::map<std::vector<ChunkId>, const CodedSymbol*> by_generators_;
  std::map<ChunkId, Bytes> uncoded_;
};

/// XORs every generator except `target` out of `symbol`. Returns nullopt if
/// one of them is neither in `known` nor in `extra`.
std::optional<Bytes> peel(const CodedSymbol& symbol, const ChunkId& target,
                          const std::map<ChunkId, Bytes>& known,
                          const std::map<ChunkId, Bytes>* extra = nullptr);

/// Layer-1 server steps shared by both schemes: SM1 sends W1[n,i] for every
/// user i and file n != d_i; SM2 pairs each user outside the base set with
/// the base member demanding the same file.
std::vector<Transmission> layer1_server_messages(const Library& library, const ChunkLayout& layout,
                                                 const DemandProfile& profile);

enum class FailureKind { kReconstruct, kDecode };

/// Rebuilds W1[d_lambda, j] for every j from the coded entry
/// XOR_n W1[n, lambda] plus the SM1/SM2 symbols in `received`. Follows the
/// two cases on whether lambda is in the base set. Throws ReconstructError
/// or DecodeError (per `failure`) if a required symbol is missing.
std::map<ChunkId, Bytes> recover_layer1(int lambda, const CodedSymbol& coded_entry,
                                        const SymbolIndex& received,
                                        const DemandProfile& profile, int users,
                                        FailureKind failure);

}  // namespace hiercache
