#pragma once

#include "hiercache/combinatorics.hpp"
#include "hiercache/model.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace hiercache {

/// dst ^= src; both spans must have equal length.
void xor_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src);

/// N equally sized files held by the server.
class Library {
 public:
  explicit Library(std::vector<Bytes> files);

  /// Pseudorandom bytes from a fixed 64-bit seed (mt19937_64).
  static Library random(int n_files, std::uint64_t file_bytes, std::uint64_t seed);

  int size() const { return static_cast<int>(files_.size()); }
  std::uint64_t file_bytes() const { return file_bytes_; }
  const Bytes& file(int n) const { return files_.at(static_cast<std::size_t>(n)); }

 private:
  std::vector<Bytes> files_;
  std::uint64_t file_bytes_ = 0;
};

/// Where each mini-subfile lives inside a file: the layer-1 chunks come
/// first in user order, then the layer-2 part.
class ChunkLayout {
 public:
  /// Two-layer scheme: layer-2 chunks ordered by lexicographic rank of S.
  static ChunkLayout hierarchical(const FilePartition& partition, int t);
  /// Single-mirror scheme: layer-2 part split into a cached head and a tail.
  static ChunkLayout single_mirror(std::uint64_t file_bytes, int users,
                                   std::uint64_t l1_chunk_bytes, std::uint64_t head_bytes);

  std::uint64_t file_bytes() const { return file_bytes_; }
  int users() const { return users_; }
  std::uint64_t l1_chunk_bytes() const { return l1_bytes_; }
  std::uint64_t l2_chunk_bytes() const { return l2_bytes_; }
  const SubsetIndex& subsets() const { return subsets_; }

  /// Byte offset and length of `id` within its file.
  std::pair<std::uint64_t, std::uint64_t> locate(const ChunkId& id) const;
  std::uint64_t length(const ChunkId& id) const { return locate(id).second; }

  /// Every non-empty chunk of file n in layout order.
  std::vector<ChunkId> chunks_of_file(int n) const;

 private:
  std::uint64_t file_bytes_ = 0;
  int users_ = 0;
  std::uint64_t l1_bytes_ = 0;
  std::uint64_t l2_bytes_ = 0;
  std::uint64_t head_bytes_ = 0;
  bool single_ = false;
  SubsetIndex subsets_;
};

/// Ground-truth payload of one chunk.
Bytes chunk_payload(const Library& library, const ChunkLayout& layout, const ChunkId& id);

/// XOR of the generators' ground-truth payloads, sized in file units.
CodedSymbol encode(const Library& library, const ChunkLayout& layout,
                   std::vector<ChunkId> generators);

/// Concatenates the recovered chunks of file n in layout order. Throws
/// DecodeError naming the first missing chunk.
Bytes assemble_file(const ChunkLayout& layout, int n, const std::map<ChunkId, Bytes>& chunks);

}  // namespace hiercache
