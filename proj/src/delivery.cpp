#include "hiercache/delivery.hpp"

#include <algorithm>
#include <tuple>

namespace hiercache {

namespace {

[[noreturn]] void fail(FailureKind kind, const std::string& what) {
  if (kind == FailureKind::kReconstruct) {
    throw ReconstructError(what);
  }
  throw DecodeError(what);
}

}  // namespace

std::string to_string(Step step) {
  switch (step) {
    case Step::kSM1: return "SM1";
    case Step::kSM2: return "SM2";
    case Step::kSM3: return "SM3";
    case Step::kMU1: return "MU1";
    case Step::kMU2: return "MU2";
    case Step::kMU3: return "MU3";
  }
  return "?";
}

Rational total_size(std::span<const Transmission> msgs) {
  Rational sum = 0;
  for (const auto& m : msgs) sum += m.symbol.size_files();
  return sum;
}

SymbolIndex::SymbolIndex(std::span<const Transmission> msgs) {
  for (const auto& m : msgs) add(m.symbol);
}

void SymbolIndex::add(const CodedSymbol& symbol) {
  by_generators_.emplace(symbol.generators(), &symbol);
  if (symbol.is_uncoded()) {
    uncoded_.emplace(symbol.generators().front(), symbol.payload());
  }
}

const CodedSymbol* SymbolIndex::find(const std::vector<ChunkId>& generators) const {
  const auto it = by_generators_.find(generators);
  return it == by_generators_.end() ? nullptr : it->second;
}

std::optional<Bytes> peel(const CodedSymbol& symbol, const ChunkId& target,
                          const std::map<ChunkId, Bytes>& known,
                          const std::map<ChunkId, Bytes>* extra) {
  Bytes out = symbol.payload();
  for (const ChunkId& g : symbol.generators()) {
    if (g == target) continue;
    auto it = known.find(g);
    if (it == known.end()) {
      if (extra == nullptr) return std::nullopt;
      it = extra->find(g);
      if (it == extra->end()) return std::nullopt;
    }
    xor_into(out, it->second);
  }
  return out;
}

std::vector<Transmission> layer1_server_messages(const Library& library, const ChunkLayout& layout,
                                                 const DemandProfile& profile) {
  std::vector<Transmission> out;
  const int users = layout.users();
  const int n_files = library.size();
  for (int n = 0; n < n_files; ++n) {
    for (int i = 0; i < users; ++i) {
      if (profile.demands[static_cast<std::size_t>(i)] != n) {
        out.push_back({Step::kSM1, encode(library, layout, {ChunkId::layer1(n, i)})});
      }
    }
  }
  std::vector<std::pair<int, int>> outside;  // (file, user)
  for (int i = 0; i < users; ++i) {
    if (!profile.in_base(i)) outside.emplace_back(profile.demands[static_cast<std::size_t>(i)], i);
  }
  std::sort(outside.begin(), outside.end());
  for (const auto& [file, i] : outside) {
    const int partner = profile.base_partner(i);
    out.push_back({Step::kSM2, encode(library, layout,
                                      {ChunkId::layer1(file, i), ChunkId::layer1(file, partner)})});
  }
  return out;
}

std::map<ChunkId, Bytes> recover_layer1(int lambda, const CodedSymbol& coded_entry,
                                        const SymbolIndex& received,
                                        const DemandProfile& profile, int users,
                                        FailureKind failure) {
  const int file = profile.demands.at(static_cast<std::size_t>(lambda));
  const auto& sm1 = received.uncoded();
  std::map<ChunkId, Bytes> got;

  // W1[d_lambda, lambda] from the coded entry and the other files' chunks.
  const ChunkId own = ChunkId::layer1(file, lambda);
  auto own_payload = peel(coded_entry, own, sm1);
  if (!own_payload) {
    fail(failure, "cannot strip coded entry of user " + std::to_string(lambda + 1));
  }
  got.emplace(own, std::move(*own_payload));

  // Chunks at positions whose user wants a different file arrive uncoded.
  for (int j = 0; j < users; ++j) {
    if (profile.demands[static_cast<std::size_t>(j)] == file) continue;
    const ChunkId id = ChunkId::layer1(file, j);
    const auto it = sm1.find(id);
    if (it == sm1.end()) {
      fail(failure, "missing uncoded " + to_string(id));
    }
    got.emplace(id, it->second);
  }

  auto unlock = [&](int j, int anchor) {
    std::vector<ChunkId> key{ChunkId::layer1(file, j), ChunkId::layer1(file, anchor)};
    std::sort(key.begin(), key.end());
    const CodedSymbol* pair = received.find(key);
    if (pair == nullptr) {
      fail(failure, "missing pair symbol for " + to_string(key.front()) + "+" +
                        to_string(key.back()));
    }
    auto payload = peel(*pair, ChunkId::layer1(file, j), got);
    if (!payload) {
      fail(failure, "pair symbol not peelable");
    }
    got.emplace(ChunkId::layer1(file, j), std::move(*payload));
  };

  const auto& same_demand = profile.demanders.at(static_cast<std::size_t>(file));
  int anchor = lambda;
  if (!profile.in_base(lambda)) {
    anchor = profile.base_partner(lambda);
    unlock(anchor, lambda);
  }
  for (int j : same_demand) {
    if (j == lambda || j == anchor) continue;
    unlock(j, anchor);
  }
  return got;
}

}  // namespace hiercache
