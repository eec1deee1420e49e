#pragma once

#include "hiercache/model.hpp"
#include "hiercache/rational.hpp"

#include <cstdint>
#include <string>

namespace testsupport {

// Library seed used across the byte-level tests.
inline constexpr std::uint64_t kLibrarySeed = 0x5eed0001;

inline hiercache::HierConfig cfg(int k1, int k2, int n, int t, const std::string& alpha) {
  return hiercache::validate_config({k1, k2, n, t, hiercache::parse_rational(alpha)});
}

inline hiercache::Rational q(const std::string& s) { return hiercache::parse_rational(s); }

}  // namespace testsupport
