#pragma once

#include "hiercache/combinatorics.hpp"
#include "hiercache/errors.hpp"
#include "hiercache/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Conventions: users, files and mirrors are 0-based in the API. Text output
// (CLI, symbol names) is 1-based.

namespace hiercache {

/// Unvalidated parameters, e.g. straight from the command line.
struct RawConfig {
  long long k1 = 0;
  long long k2 = 0;
  long long n_files = 0;
  long long t = 0;
  Rational alpha = 0;
};

/// Validated system parameters of the two-layer network. Construct through
/// validate_config().
class HierConfig {
 public:
  int k1() const { return k1_; }
  int k2() const { return k2_; }
  int users() const { return k1_ * k2_; }
  int n_files() const { return n_files_; }
  int t() const { return t_; }
  const Rational& alpha() const { return alpha_; }

  bool has_layer1() const { return alpha_ != 0; }
  bool has_layer2() const { return alpha_ != 1; }

  /// Same system with a different split fraction; revalidated.
  HierConfig with_alpha(const Rational& alpha) const;
  HierConfig with_t(int t) const;

  friend bool operator==(const HierConfig&, const HierConfig&) = default;

 private:
  friend HierConfig validate_config(const RawConfig& raw);
  HierConfig() = default;

  int k1_ = 0;
  int k2_ = 0;
  int n_files_ = 0;
  int t_ = 0;
  Rational alpha_ = 0;
};

/// Throws RangeError if t is outside [1, K1*K2], alpha outside [0, 1] or a
/// count is non-positive; ConstraintError if N > K1*K2 with alpha != 0.
HierConfig validate_config(const RawConfig& raw);

enum class Layer : std::uint8_t {
  kOne = 1,         ///< W^1_{n,i}: slot is the user index i
  kTwo = 2,         ///< W^2_{n,S}: slot is the user mask S
  kTwoSegment = 3,  ///< single-mirror W^2_n split: slot 0 = cached head, 1 = tail
};

/// One mini-subfile of one library file.
struct ChunkId {
  Layer layer = Layer::kOne;
  int file = 0;
  std::uint64_t slot = 0;

  static ChunkId layer1(int file, int user) {
    return {Layer::kOne, file, static_cast<std::uint64_t>(user)};
  }
  static ChunkId layer2(int file, UserMask subset) { return {Layer::kTwo, file, subset}; }
  static ChunkId head(int file) { return {Layer::kTwoSegment, file, 0}; }
  static ChunkId tail(int file) { return {Layer::kTwoSegment, file, 1}; }

  friend auto operator<=>(const ChunkId&, const ChunkId&) = default;
};

/// Human-readable 1-based name, e.g. "W1[2,3]" or "W2[1,{1,3}]".
std::string to_string(const ChunkId& id);

/// Exact byte sizes of the mini-subfiles of one file.
struct FilePartition {
  std::uint64_t file_bytes = 0;
  std::uint64_t l1_chunk_bytes = 0;  ///< 0 when alpha = 0
  std::uint64_t l2_chunk_bytes = 0;  ///< 0 when alpha = 1
  int users = 0;
  std::uint64_t l2_chunks = 0;  ///< C(K, t)

  std::uint64_t layer1_bytes() const { return l1_chunk_bytes * static_cast<std::uint64_t>(users); }
};

/// Throws DivisibilityError if alpha*F/K or (1-alpha)*F/C(K,t) is not an
/// integer, RangeError if file_bytes == 0.
FilePartition make_partition(const HierConfig& cfg, std::uint64_t file_bytes);

using Bytes = std::vector<std::uint8_t>;

/// XOR of equally sized chunk payloads together with the chunks it mixes.
class CodedSymbol {
 public:
  CodedSymbol() = default;
  /// Generators are sorted; throws std::invalid_argument if empty or repeated.
  CodedSymbol(std::vector<ChunkId> generators, Bytes payload, Rational size_files);

  const std::vector<ChunkId>& generators() const { return generators_; }
  const Bytes& payload() const { return payload_; }
  const Rational& size_files() const { return size_files_; }
  bool is_uncoded() const { return generators_.size() == 1; }
  bool contains(const ChunkId& id) const;

 private:
  std::vector<ChunkId> generators_;
  Bytes payload_;
  Rational size_files_ = 0;
};

/// Demand vector with the derived sets used by delivery.
struct DemandProfile {
  std::vector<int> demands;                     ///< d_k per user
  std::vector<int> base_set;                    ///< sorted users; empty if unused
  std::vector<std::vector<int>> per_mirror_files;  ///< D_m, ascending
  std::vector<int> per_mirror_count;            ///< t_m = |D_m|
  std::vector<std::vector<int>> demanders;      ///< D^(n), ascending users
  bool surjective = false;

  bool in_base(int user) const;
  /// For a user outside the base set: the base member demanding the same file.
  int base_partner(int user) const;
};

/// Users S_m attached to mirror m. Throws RangeError if m is not in [0, K1).
std::vector<int> users_of_mirror(const HierConfig& cfg, int mirror);
UserMask mirror_mask(const HierConfig& cfg, int mirror);
int mirror_of_user(const HierConfig& cfg, int user);

/// The base set is the first occurrence of each file. Throws RangeError on
/// entries outside [0, N), DemandError on a wrong length or, when alpha > 0,
/// on a demand vector that leaves some file undemanded.
DemandProfile build_demand_profile(const HierConfig& cfg, const std::vector<int>& demands);

/// Shared worker: groups users into `k1` mirrors of `k2` users.
DemandProfile build_demand_profile(int k1, int k2, int n_files, bool require_surjective,
                                   const std::vector<int>& demands);

}  // namespace hiercache
