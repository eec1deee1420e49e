#pragma once

#include "hiercache/model.hpp"

#include <array>
#include <optional>
#include <string>

namespace hiercache {

/// One operating point of a scheme, all in file units.
struct RatePoint {
  std::string scheme;
  Rational m1 = 0;
  Rational m2 = 0;
  Rational m_bar = 0;  ///< K1*M1 + K1*K2*M2
  Rational r1 = 0;
  Rational r2 = 0;
  Rational r_bar = 0;  ///< R1 + K1*R2
  Rational r_sum = 0;
  Rational t_concurrent = 0;
  Rational t_sequential = 0;
};

/// Fills in the derived fields from (M1, M2, R1, R2).
RatePoint make_rate_point(std::string scheme, int k1, int k2, Rational m1, Rational m2,
                          Rational r1, Rational r2);

struct MemoryPoint {
  Rational m1 = 0;
  Rational m2 = 0;
};

MemoryPoint memory_point(const HierConfig& cfg);

/// M2 on the straight line traced by (M1, M2) as alpha runs over [0, 1] for
/// fixed t. Throws RangeError if m1 lies off that segment, DegenerateError
/// if the segment is a single point.
Rational m2_from_m1(int k1, int k2, int n_files, int t, const Rational& m1);

Rational global_memory(const HierConfig& cfg);
Rational rate_r1(const HierConfig& cfg);
/// Rate of a mirror whose users ask for t_m distinct files. RangeError
/// unless 1 <= t_m <= K2.
Rational rate_r2(const HierConfig& cfg, int t_m);
/// Worst mirror: t_m = K2.
Rational rate_r2_worst(const HierConfig& cfg);
RatePoint composite(const HierConfig& cfg);

/// R2 when the cache-resident MU3 chunks go out while the server is still
/// transmitting, so they no longer add to the mirror's own slot.
Rational concurrent_r2(const HierConfig& cfg, int t_m);

/// max(R1, R2) for concurrent hops, R1 + R2 otherwise.
Rational coding_delay(const Rational& r1, const Rational& r2, bool concurrent);

struct ConvexWeights {
  Rational xi = 0;
  Rational eta = 0;
};

struct SharedPoint {
  RatePoint point;
  ConvexWeights weights;  ///< on points[0] and points[1]; the rest on points[2]
};

/// Splits every file over three achievable schemes so that the cache sizes
/// hit (m1, m2); the rates mix with the same weights. Collinear triples are
/// handled along the segment they span. Throws HullError if the target is
/// outside the hull, DegenerateError if all three points coincide.
SharedPoint memory_share(const std::array<RatePoint, 3>& points, const Rational& m1,
                         const Rational& m2);

/// Two-point sharing at a given global memory. `lambda` receives the weight
/// on `b`. Throws HullError outside [a.m_bar, b.m_bar].
RatePoint memory_share_mbar(const RatePoint& a, const RatePoint& b, const Rational& m_bar,
                            Rational* lambda = nullptr);

enum class Region { kI, kII, kIII };

std::string to_string(Region region);

struct RegionReport {
  Rational region_a = 0;
  std::optional<Rational> region_b;  ///< empty when C(K,K2) = K*K1 (B unbounded)
  Rational alpha_threshold = 0;
  Region region = Region::kI;
  bool theorem2_applies = false;  ///< K1 > K2 >= 2
  bool theorem3_applies = false;  ///< 2 <= K1 <= K2, not K1 = K2 = 2
};

/// Only defined for t = K2 (ScopeError otherwise).
RegionReport region_classify(const HierConfig& cfg);

/// Region constants for a (K1, K2) pair, independent of alpha and N.
struct RegionConstants {
  Rational a = 0;
  std::optional<Rational> b;
  Rational threshold = 0;
};
RegionConstants region_constants(int k1, int k2);
Region classify_alpha(const RegionConstants& c, const Rational& alpha);

/// C(K, K2) > K*K2.
bool lemma1_holds(int k1, int k2);
/// C(K, K2) <= K*K1 implies K1 > K2.
bool lemma2_holds(int k1, int k2);
/// K1 <= K2 implies C(K, K2) > K*K1.
bool lemma3_holds(int k1, int k2);
/// K1 > K2 implies a negative threshold.
bool theorem2_holds(int k1, int k2);
/// K1 <= K2 implies B > 1 (or B unbounded).
bool theorem3_holds(int k1, int k2);

}  // namespace hiercache
