#include "hiercache/library.hpp"

#include <random>
#include <stdexcept>

namespace hiercache {

void xor_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  if (dst.size() != src.size()) {
    throw std::invalid_argument("xor_into: length mismatch");
  }
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] ^= src[i];
  }
}

Library::Library(std::vector<Bytes> files) : files_(std::move(files)) {
  if (files_.empty()) {
    throw RangeError("library needs at least one file");
  }
  file_bytes_ = files_.front().size();
  for (const auto& f : files_) {
    if (f.size() != file_bytes_) {
      throw RangeError("library files must have equal size");
    }
  }
}

Library Library::random(int n_files, std::uint64_t file_bytes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Bytes> files(static_cast<std::size_t>(n_files), Bytes(file_bytes));
  for (auto& f : files) {
    for (std::uint64_t i = 0; i < file_bytes; i += 8) {
      std::uint64_t word = rng();
      for (std::uint64_t j = i; j < std::min(i + 8, file_bytes); ++j) {
        f[j] = static_cast<std::uint8_t>(word & 0xFFU);
        word >>= 8U;
      }
    }
  }
  return Library(std::move(files));
}

ChunkLayout ChunkLayout::hierarchical(const FilePartition& partition, int t) {
  ChunkLayout layout;
  layout.file_bytes_ = partition.file_bytes;
  layout.users_ = partition.users;
  layout.l1_bytes_ = partition.l1_chunk_bytes;
  layout.l2_bytes_ = partition.l2_chunk_bytes;
  if (partition.l2_chunk_bytes > 0) {
    layout.subsets_ = SubsetIndex(partition.users, t);
  }
  return layout;
}

ChunkLayout ChunkLayout::single_mirror(std::uint64_t file_bytes, int users,
                                       std::uint64_t l1_chunk_bytes, std::uint64_t head_bytes) {
  ChunkLayout layout;
  layout.file_bytes_ = file_bytes;
  layout.users_ = users;
  layout.l1_bytes_ = l1_chunk_bytes;
  layout.head_bytes_ = head_bytes;
  layout.single_ = true;
  if (l1_chunk_bytes * static_cast<std::uint64_t>(users) + head_bytes > file_bytes) {
    throw RangeError("single-mirror layout exceeds the file size");
  }
  return layout;
}

std::pair<std::uint64_t, std::uint64_t> ChunkLayout::locate(const ChunkId& id) const {
  const std::uint64_t layer1_total = l1_bytes_ * static_cast<std::uint64_t>(users_);
  switch (id.layer) {
    case Layer::kOne:
      if (id.slot >= static_cast<std::uint64_t>(users_) || l1_bytes_ == 0) {
        throw std::out_of_range("layer-1 chunk not in layout");
      }
      return {id.slot * l1_bytes_, l1_bytes_};
    case Layer::kTwo:
      if (single_ || l2_bytes_ == 0) {
        throw std::out_of_range("layer-2 chunk not in layout");
      }
      return {layer1_total + subsets_.rank(id.slot) * l2_bytes_, l2_bytes_};
    case Layer::kTwoSegment:
      if (!single_) {
        throw std::out_of_range("segment chunk not in layout");
      }
      if (id.slot == 0) {
        return {layer1_total, head_bytes_};
      }
      return {layer1_total + head_bytes_, file_bytes_ - layer1_total - head_bytes_};
  }
  throw std::out_of_range("unknown layer");
}

std::vector<ChunkId> ChunkLayout::chunks_of_file(int n) const {
  std::vector<ChunkId> out;
  if (l1_bytes_ > 0) {
    for (int i = 0; i < users_; ++i) out.push_back(ChunkId::layer1(n, i));
  }
  if (single_) {
    if (head_bytes_ > 0) out.push_back(ChunkId::head(n));
    if (length(ChunkId::tail(n)) > 0) out.push_back(ChunkId::tail(n));
  } else if (l2_bytes_ > 0) {
    for (UserMask s : subsets_.subsets()) out.push_back(ChunkId::layer2(n, s));
  }
  return out;
}

Bytes chunk_payload(const Library& library, const ChunkLayout& layout, const ChunkId& id) {
  const auto [offset, len] = layout.locate(id);
  const Bytes& file = library.file(id.file);
  return Bytes(file.begin() + static_cast<std::ptrdiff_t>(offset),
               file.begin() + static_cast<std::ptrdiff_t>(offset + len));
}

CodedSymbol encode(const Library& library, const ChunkLayout& layout,
                   std::vector<ChunkId> generators) {
  if (generators.empty()) {
    throw std::invalid_argument("encode: no generators");
  }
  Bytes payload = chunk_payload(library, layout, generators.front());
  for (std::size_t g = 1; g < generators.size(); ++g) {
    const Bytes other = chunk_payload(library, layout, generators[g]);
    xor_into(payload, other);
  }
  Rational size(BigInt(payload.size()), BigInt(layout.file_bytes()));
  return CodedSymbol(std::move(generators), std::move(payload), std::move(size));
}

Bytes assemble_file(const ChunkLayout& layout, int n, const std::map<ChunkId, Bytes>& chunks) {
  Bytes out;
  out.reserve(layout.file_bytes());
  for (const ChunkId& id : layout.chunks_of_file(n)) {
    const auto it = chunks.find(id);
    if (it == chunks.end()) {
      throw DecodeError("missing chunk " + to_string(id));
    }
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  if (out.size() != layout.file_bytes()) {
    throw DecodeError("assembled file has wrong size");
  }
  return out;
}

}  // namespace hiercache
