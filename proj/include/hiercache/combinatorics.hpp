#pragma once

#include "hiercache/rational.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace hiercache {

/// Bit i set means user i (0-based) belongs to the set.
using UserMask = std::uint64_t;

inline constexpr int kMaxMaskUsers = 64;

/// C(n, k) with C(n, k) = 0 for k < 0 or k > n.
BigInt binom(long long n, long long k);

/// C(n, k) as an exact rational; convenient inside closed forms.
Rational binom_q(long long n, long long k);

/// C(n, k) as 64-bit; throws std::overflow_error when it does not fit.
std::uint64_t binom_u64(long long n, long long k);

int popcount(UserMask mask);

/// Ascending member indices of `mask`.
std::vector<int> mask_members(UserMask mask);

UserMask mask_of(const std::vector<int>& members);

/// Mask of the contiguous range [first, first + count).
UserMask range_mask(int first, int count);

/// All k-subsets of {0..n-1} in lexicographic order of their sorted index
/// lists. Requires n <= 64.
std::vector<UserMask> k_subsets(int n, int k);

/// Position of each k-subset within k_subsets(n, k).
class SubsetIndex {
 public:
  SubsetIndex() = default;
  SubsetIndex(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return subsets_.size(); }
  const std::vector<UserMask>& subsets() const { return subsets_; }
  UserMask at(std::size_t rank) const { return subsets_.at(rank); }
  /// Throws std::out_of_range for masks that are not k-subsets of [n].
  std::size_t rank(UserMask subset) const;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<UserMask> subsets_;
  std::unordered_map<UserMask, std::size_t> rank_;
};

}  // namespace hiercache
