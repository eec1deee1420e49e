#pragma once

#include "hiercache/analytics.hpp"
#include "hiercache/rational.hpp"

#include <string>
#include <vector>

namespace hiercache {

enum class Baseline { kKNMD, kZWXWL, kZWXWLL, kWWCY, kKWC, kLZX };

std::string to_string(Baseline scheme);

/// Default stand-in for a prescribed beta of 0.
Rational default_beta_floor();

struct LayerRates {
  Rational r1 = 0;
  Rational r2 = 0;
};

/// Memory split of a two-part baseline: `split` is the fraction of each
/// file handled by the first sub-scheme, `beta` the share of user memory it
/// gets.
struct SplitTuple {
  std::string label;
  Rational split = 0;
  Rational beta = 0;
  bool beta_floored = false;  ///< beta was 0 and got replaced by the floor
};

/// Decentralized single-layer rate [((1-q)/q)(1-(1-q)^k)]^+. Throws
/// SingularError at q = 0, RangeError for q outside (0, 1].
Rational r_decentralized(const Rational& q, int k);

LayerRates knmd_rates(int k1, int k2, int n_files, const Rational& m1, const Rational& m2,
                      const SplitTuple& tuple);

enum class KnmdRegion { kI, kII, kIII };
std::string to_string(KnmdRegion region);

/// Region by M1 + K2*M2 against N and M1 against N/4.
KnmdRegion knmd_region(int k2, int n_files, const Rational& m1, const Rational& m2);

struct KnmdChoice {
  SplitTuple tuple;
  KnmdRegion region;
};

KnmdChoice knmd_optimal_tuple(int k2, int n_files, const Rational& m1, const Rational& m2,
                              const Rational& beta_floor);

/// Joint caching rates at one grid point.
LayerRates zwxwl_rates(int k1, int k2, int n_files, const Rational& m1, const Rational& m2);

enum class GridKind {
  kFull,  ///< every (M1, M2) with M1 in {0, N/K1, .., N}, M2 in {0, N/K2, .., N}
  kAxes,  ///< only the points with M1 = 0 or M2 = 0
};

/// Grid points of the joint caching scheme.
std::vector<RatePoint> zwxwl_grid(int k1, int k2, int n_files, GridKind kind = GridKind::kFull);

/// Memory sharing along the lower hull of `grid` in the (Mbar, Rbar)
/// plane. Throws HullError outside the grid's span.
RatePoint zwxwl_envelope(const std::vector<RatePoint>& grid, const Rational& m_bar);

LayerRates zwxwll_rates(int k1, int k2, int n_files, const Rational& m1, const Rational& m2,
                        const SplitTuple& tuple);
LayerRates wwcy_rates(int k1, int k2, int n_files, const Rational& m1, const Rational& m2,
                      const SplitTuple& tuple);

/// M1 + K2*M2 >= N.
bool in_regime_one(int k2, int n_files, const Rational& m1, const Rational& m2);

/// Tuples prescribed for the point's regime.
std::vector<SplitTuple> zwxwll_menu(int k2, int n_files, const Rational& m1, const Rational& m2,
                                    const Rational& beta_floor);
std::vector<SplitTuple> wwcy_menu(int k2, int n_files, const Rational& m1, const Rational& m2,
                                  const Rational& beta_floor);

struct TupleChoice {
  LayerRates rates;
  SplitTuple tuple;
};

/// Lowest R2 over the menu, ties broken on R1. Tuples whose rate is
/// singular at this point are skipped; SingularError if none is left.
TupleChoice zwxwll_best(int k1, int k2, int n_files, const Rational& m1, const Rational& m2,
                        const Rational& beta_floor);
TupleChoice wwcy_best(int k1, int k2, int n_files, const Rational& m1, const Rational& m2,
                      const Rational& beta_floor);

/// Scheme built on hierarchical placement delivery arrays, parameter t.
struct KwcPoint {
  Rational r1 = 0;
  Rational r2 = 0;
  Rational m1_frac = 0;  ///< M1 / N
  Rational m2_frac = 0;  ///< M2 / N
};

KwcPoint kwc_rates(int k1, int k2, int t);

/// Memory sharing over t = 0 and K2 < t < K. Throws HullError outside.
RatePoint kwc_envelope(int k1, int k2, int n_files, const Rational& m_bar);

/// One mirror with two users, 2*M2 <= N (ScopeError otherwise).
LayerRates lzx_rates(int n_files, const Rational& m1, const Rational& m2);

}  // namespace hiercache
