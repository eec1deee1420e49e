#include "hiercache/combinatorics.hpp"

#include <bit>
#include <stdexcept>

namespace hiercache {

BigInt binom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

Rational binom_q(long long n, long long k) { return Rational(binom(n, k)); }

std::uint64_t binom_u64(long long n, long long k) {
  const BigInt value = binom(n, k);
  if (value > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return value.convert_to<std::uint64_t>();
}

int popcount(UserMask mask) { return std::popcount(mask); }

std::vector<int> mask_members(UserMask mask) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

UserMask mask_of(const std::vector<int>& members) {
  UserMask mask = 0;
  for (int m : members) {
    if (m < 0 || m >= kMaxMaskUsers) {
      throw std::out_of_range("mask member out of range");
    }
    mask |= UserMask{1} << m;
  }
  return mask;
}

UserMask range_mask(int first, int count) {
  UserMask mask = 0;
  for (int i = 0; i < count; ++i) mask |= UserMask{1} << (first + i);
  return mask;
}

std::vector<UserMask> k_subsets(int n, int k) {
  if (n < 0 || n > kMaxMaskUsers) {
    throw std::out_of_range("k_subsets supports at most 64 elements");
  }
  std::vector<UserMask> out;
  if (k < 0 || k > n) {
    return out;
  }
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(mask_of(idx));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

SubsetIndex::SubsetIndex(int n, int k) : n_(n), k_(k), subsets_(k_subsets(n, k)) {
  rank_.reserve(subsets_.size());
  for (std::size_t i = 0; i < subsets_.size(); ++i) {
    rank_.emplace(subsets_[i], i);
  }
}

std::size_t SubsetIndex::rank(UserMask subset) const {
  const auto it = rank_.find(subset);
  if (it == rank_.end()) {
    throw std::out_of_range("subset not indexed");
  }
  return it->second;
}

}  // namespace hiercache
