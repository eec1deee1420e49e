#include "hiercache/baselines.hpp"

#include "hiercache/combinatorics.hpp"
#include "hiercache/envelope.hpp"
#include "hiercache/errors.hpp"

#include <optional>

namespace hiercache {

namespace {

// w * f(), where a zero weight switches the sub-scheme off entirely (its
// rate expression may be singular there).
template <class F>
Rational weighted(const Rational& w, F&& f) {
  if (w == 0) return 0;
  return w * f();
}

// Second-layer rate shared by the KNMD-style schemes.
Rational split_r2(int k2, int n, const Rational& m2, const SplitTuple& s) {
  const Rational& a = s.split;
  return weighted(a, [&] { return r_decentralized(s.beta * m2 / (a * n), k2); }) +
         weighted(1 - a, [&] { return r_decentralized((1 - s.beta) * m2 / ((1 - a) * n), k2); });
}

Rational private_part(int k, int n, const Rational& m2, const SplitTuple& s) {
  return weighted(1 - s.split, [&] {
    return r_decentralized((1 - s.beta) * m2 / ((1 - s.split) * n), k);
  });
}

SplitTuple floored(std::string label, Rational split, const Rational& beta_floor) {
  return {std::move(label), std::move(split), beta_floor, true};
}

template <class Rates>
TupleChoice pick(const std::vector<SplitTuple>& menu, Rates&& rates) {
  std::optional<TupleChoice> best;
  for (const SplitTuple& t : menu) {
    LayerRates r;
    try {
      r = rates(t);
    } catch (const SingularError&) {
      continue;
    } catch (const RangeError&) {
      continue;
    }
    if (!best || r.r2 < best->rates.r2 || (r.r2 == best->rates.r2 && r.r1 < best->rates.r1)) {
      best = TupleChoice{r, t};
    }
  }
  if (!best) throw SingularError("no prescribed tuple has a finite rate at this memory point");
  return *best;
}

RatePoint share_on_hull(const std::vector<RatePoint>& pts, const Rational& m_bar,
                        const std::string& scheme) {
  std::vector<Point2> xy;
  for (const auto& p : pts) xy.emplace_back(p.m_bar, p.r_bar);
  const HullBracket b = hull_bracket(xy, m_bar);
  RatePoint out = b.lo == b.hi ? pts[b.lo] : memory_share_mbar(pts[b.lo], pts[b.hi], m_bar);
  out.scheme = scheme;
  return out;
}

}  // namespace

std::string to_string(Baseline scheme) {
  switch (scheme) {
    case Baseline::kKNMD: return "KNMD";
    case Baseline::kZWXWL: return "ZWXWL";
    case Baseline::kZWXWLL: return "ZWXWLL";
    case Baseline::kWWCY: return "WWCY";
    case Baseline::kKWC: return "KWC";
    case Baseline::kLZX: return "LZX";
  }
  return "?";
}

std::string to_string(KnmdRegion region) {
  switch (region) {
    case KnmdRegion::kI: return "I";
    case KnmdRegion::kII: return "II";
    case KnmdRegion::kIII: return "III";
  }
  return "?";
}

Rational default_beta_floor() { return make_rational(1, 100); }

Rational r_decentralized(const Rational& q, int k) {
  if (q == 0) throw SingularError("r(q, k) is singular at q = 0");
  if (q < 0 || q > 1) throw RangeError("r(q, k) needs 0 < q <= 1, got " + to_decimal_string(q, 6));
  const Rational v = (1 - q) / q * (1 - pow(1 - q, static_cast<unsigned>(k)));
  return v > 0 ? v : Rational(0);
}

LayerRates knmd_rates(int k1, int k2, int n_files, const Rational& m1, const Rational& m2,
                      const SplitTuple& tuple) {
  const Rational& a = tuple.split;
  LayerRates out;
  out.r1 = weighted(a, [&] { return k2 * r_decentralized(m1 / (a * n_files), k1); }) +
           private_part(k1 * k2, n_files, m2, tuple);
  out.r2 = split_r2(k2, n_files, m2, tuple);
  return out;
}

bool in_regime_one(int k2, int n_files, const Rational& m1, const Rational& m2) {
  return m1 + m2 * k2 >= n_files;
}

KnmdRegion knmd_region(int k2, int n_files, const Rational& m1, const Rational& m2) {
  if (!in_regime_one(k2, n_files, m1, m2)) return KnmdRegion::kII;
  return m1 <= Rational(n_files) / 4 ? KnmdRegion::kI : KnmdRegion::kIII;
}

KnmdChoice knmd_optimal_tuple(int k2, int n_files, const Rational& m1, const Rational& m2,
                              const Rational& beta_floor) {
  const KnmdRegion region = knmd_region(k2, n_files, m1, m2);
  switch (region) {
    case KnmdRegion::kI:
      return {{"I", m1 / n_files, m1 / n_files, false}, region};
    case KnmdRegion::kII:
      return {floored("II", m1 / (m1 + m2 * k2), beta_floor), region};
    case KnmdRegion::kIII:
      break;
  }
  return {{"III", m1 / n_files, make_rational(1, 4), false}, region};
}

LayerRates zwxwl_rates(int k1, int k2, int n_files, const Rational& m1, const Rational& m2) {
  const Rational q1 = m1 / n_files;
  const Rational q2 = m2 / n_files;
  LayerRates out;
  out.r1 = Rational(k1) * k2 * (1 - q1) * (1 - q2) / (1 + k1 * q1);
  out.r2 = k2 * (1 - q2) / (1 + k2 * q2);
  return out;
}

std::vector<RatePoint> zwxwl_grid(int k1, int k2, int n_files, GridKind kind) {
  std::vector<RatePoint> out;
  for (int i = 0; i <= k1; ++i) {
    for (int j = 0; j <= k2; ++j) {
      if (kind == GridKind::kAxes && i != 0 && j != 0) continue;
      const Rational m1 = make_rational(static_cast<long long>(i) * n_files, k1);
      const Rational m2 = make_rational(static_cast<long long>(j) * n_files, k2);
      const LayerRates r = zwxwl_rates(k1, k2, n_files, m1, m2);
      out.push_back(make_rate_point("ZWXWL", k1, k2, m1, m2, r.r1, r.r2));
    }
  }
  return out;
}

RatePoint zwxwl_envelope(const std::vector<RatePoint>& grid, const Rational& m_bar) {
  return share_on_hull(grid, m_bar, "ZWXWL");
}

LayerRates zwxwll_rates(int k1, int k2, int n_files, const Rational& m1, const Rational& m2,
                        const SplitTuple& tuple) {
  const Rational& a = tuple.split;
  LayerRates out;
  out.r1 = weighted(a,
                    [&] {
                      return k2 * (1 - tuple.beta * m2 / (a * n_files)) *
                             r_decentralized(m1 / (a * n_files), k1);
                    }) +
           private_part(k1 * k2, n_files, m2, tuple);
  out.r2 = split_r2(k2, n_files, m2, tuple);
  return out;
}

LayerRates wwcy_rates(int k1, int k2, int n_files, const Rational& m1, const Rational& m2,
                      const SplitTuple& tuple) {
  const Rational& a = tuple.split;
  LayerRates out;
  out.r1 = weighted(a,
                    [&] {
                      return r_decentralized(m1 / (a * n_files), k1) *
                             r_decentralized(tuple.beta * m2 / (a * n_files), k2);
                    }) +
           private_part(k1 * k2, n_files, m2, tuple);
  out.r2 = split_r2(k2, n_files, m2, tuple);
  return out;
}

std::vector<SplitTuple> zwxwll_menu(int k2, int n_files, const Rational& m1, const Rational& m2,
                                    const Rational& beta_floor) {
  const Rational q1 = m1 / n_files;
  if (in_regime_one(k2, n_files, m1, m2)) {
    return {{"I", q1, q1, false},
            floored("II", m1 / (m1 + m2 * k2), beta_floor),
            {"III", 1, 1, false}};
  }
  return {{"I", q1, q1, false}, {"II", q1, make_rational(1, 2), false}};
}

// One tuple per regime: tuple I in regime I, tuple II otherwise.
std::vector<SplitTuple> wwcy_menu(int k2, int n_files, const Rational& m1, const Rational& m2,
                                  const Rational& beta_floor) {
  if (in_regime_one(k2, n_files, m1, m2)) return {{"I", m1 / n_files, m1 / n_files, false}};
  return {floored("II", m1 / (m1 + m2 * k2), beta_floor)};
}

TupleChoice zwxwll_best(int k1, int k2, int n_files, const Rational& m1, const Rational& m2,
                        const Rational& beta_floor) {
  return pick(zwxwll_menu(k2, n_files, m1, m2, beta_floor),
              [&](const SplitTuple& t) { return zwxwll_rates(k1, k2, n_files, m1, m2, t); });
}

TupleChoice wwcy_best(int k1, int k2, int n_files, const Rational& m1, const Rational& m2,
                      const Rational& beta_floor) {
  return pick(wwcy_menu(k2, n_files, m1, m2, beta_floor),
              [&](const SplitTuple& t) { return wwcy_rates(k1, k2, n_files, m1, m2, t); });
}

KwcPoint kwc_rates(int k1, int k2, int t) {
  const long long k = static_cast<long long>(k1) * k2;
  const Rational ckt = binom_q(k, t);
  const Rational resident = binom_q(k - k2, t - k2);
  KwcPoint p;
  p.r1 = make_rational(k - t, t + 1);
  p.r2 = p.r1 - binom_q(k - k2, t + 1) / ckt + resident * k2 / ckt;
  p.m1_frac = resident / ckt;
  p.m2_frac = (binom_q(k - 1, t - 1) - resident) / ckt;
  return p;
}

RatePoint kwc_envelope(int k1, int k2, int n_files, const Rational& m_bar) {
  std::vector<RatePoint> pts;
  const int k = k1 * k2;
  for (int t = 0; t < k; ++t) {
    if (t != 0 && t <= k2) continue;
    const KwcPoint p = kwc_rates(k1, k2, t);
    pts.push_back(make_rate_point("KWC", k1, k2, p.m1_frac * n_files, p.m2_frac * n_files, p.r1,
                                  p.r2));
  }
  return share_on_hull(pts, m_bar, "KWC");
}

LayerRates lzx_rates(int n_files, const Rational& m1, const Rational& m2) {
  const Rational n(n_files);
  if (2 * m2 > n) throw ScopeError("two-user single-mirror rates need 2*M2 <= N");
  const Rational a = m2 / n;
  const Rational b = 1 - 2 * m2 / n;
  const Rational n2 = n * n;
  LayerRates out;
  if (m1 <= n * b) {
    out.r1 = ((2 * n - 1) * (n - m1) - (3 * n - 2) * m2) / n2;
    out.r2 = ((2 * n - 1) * n - (3 * n - 2) * m2) / n2;
  } else if (m1 <= n * b + n * a) {
    out.r1 = 1 - (m1 + m2) / n;
    out.r2 = (n * (n - m2) + (n - 1) * m1) / n2;
  } else if (m1 < n * b + (2 * n - 1) * a) {
    out.r1 = 0;
    out.r2 = ((3 * n - 1) * (n - m2) - n * m1) / n2;
  } else {
    out.r1 = 0;
    out.r2 = (n * (2 * n - 1) - (3 * n - 2) * m2) / n2;
  }
  return out;
}

}  // namespace hiercache
