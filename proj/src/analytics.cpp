#include "hiercache/analytics.hpp"

#include "hiercache/combinatorics.hpp"

#include <algorithm>

namespace hiercache {

namespace {

MemoryPoint memory_at(int k1, int k2, int n_files, int t, const Rational& alpha) {
  const long long k = static_cast<long long>(k1) * k2;
  const Rational ckt = binom_q(k, t);
  const Rational resident = binom_q(k - k2, t - k2);
  MemoryPoint p;
  p.m1 = alpha * k2 / k + (1 - alpha) * resident * n_files / ckt;
  p.m2 = (1 - alpha) * (binom_q(k - 1, t - 1) - resident) * n_files / ckt;
  return p;
}

struct Vec2 {
  Rational x;
  Rational y;
};

Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

RatePoint mix(const std::array<RatePoint, 3>& pts, const std::array<Rational, 3>& w) {
  RatePoint out;
  out.scheme = "shared";
  for (std::size_t i = 0; i < 3; ++i) {
    out.m1 += w[i] * pts[i].m1;
    out.m2 += w[i] * pts[i].m2;
    out.m_bar += w[i] * pts[i].m_bar;
    out.r1 += w[i] * pts[i].r1;
    out.r2 += w[i] * pts[i].r2;
    out.r_bar += w[i] * pts[i].r_bar;
    out.r_sum += w[i] * pts[i].r_sum;
  }
  out.t_concurrent = std::max(out.r1, out.r2);
  out.t_sequential = out.r_sum;
  return out;
}

bool in_unit(const Rational& v) { return v >= 0 && v <= 1; }

}  // namespace

RatePoint make_rate_point(std::string scheme, int k1, int k2, Rational m1, Rational m2,
                          Rational r1, Rational r2) {
  RatePoint p;
  p.scheme = std::move(scheme);
  p.m_bar = m1 * k1 + m2 * k1 * k2;
  p.r_bar = r1 + r2 * k1;
  p.r_sum = r1 + r2;
  p.t_concurrent = coding_delay(r1, r2, true);
  p.t_sequential = p.r_sum;
  p.m1 = std::move(m1);
  p.m2 = std::move(m2);
  p.r1 = std::move(r1);
  p.r2 = std::move(r2);
  return p;
}

MemoryPoint memory_point(const HierConfig& cfg) {
  return memory_at(cfg.k1(), cfg.k2(), cfg.n_files(), cfg.t(), cfg.alpha());
}

Rational m2_from_m1(int k1, int k2, int n_files, int t, const Rational& m1) {
  const MemoryPoint lo = memory_at(k1, k2, n_files, t, 0);
  const MemoryPoint hi = memory_at(k1, k2, n_files, t, 1);
  if (lo.m1 == hi.m1) {
    if (m1 != lo.m1) throw RangeError("M1 off the memory line");
    if (lo.m2 != hi.m2) throw DegenerateError("M1 does not determine M2 for this t");
    return lo.m2;
  }
  const Rational alpha = (m1 - lo.m1) / (hi.m1 - lo.m1);
  if (!in_unit(alpha)) {
    throw RangeError("M1 = " + to_decimal_string(m1, 4) + " is outside [" +
                     to_decimal_string(std::min(lo.m1, hi.m1), 4) + ", " +
                     to_decimal_string(std::max(lo.m1, hi.m1), 4) + "]");
  }
  return lo.m2 + alpha * (hi.m2 - lo.m2);
}

Rational global_memory(const HierConfig& cfg) {
  const MemoryPoint p = memory_point(cfg);
  return p.m1 * cfg.k1() + p.m2 * cfg.users();
}

Rational rate_r1(const HierConfig& cfg) {
  const long long k = cfg.users();
  const Rational& a = cfg.alpha();
  return a * cfg.n_files() * (k - 1) / k + (1 - a) * make_rational(k - cfg.t(), cfg.t() + 1);
}

Rational rate_r2(const HierConfig& cfg, int t_m) {
  if (t_m < 1 || t_m > cfg.k2()) {
    throw RangeError("t_m must lie in [1, K2]");
  }
  const long long k = cfg.users();
  const int k2 = cfg.k2();
  const int t = cfg.t();
  const Rational& a = cfg.alpha();
  const Rational untouched = binom_q(k - k2, t + 1) - binom_q(k - k2, t - k2) * t_m;
  return a * t_m + (1 - a) * (make_rational(k - t, t + 1) - untouched / binom_q(k, t));
}

Rational rate_r2_worst(const HierConfig& cfg) { return rate_r2(cfg, cfg.k2()); }

RatePoint composite(const HierConfig& cfg) {
  const MemoryPoint p = memory_point(cfg);
  return make_rate_point("proposed", cfg.k1(), cfg.k2(), p.m1, p.m2, rate_r1(cfg),
                         rate_r2_worst(cfg));
}

Rational concurrent_r2(const HierConfig& cfg, int t_m) {
  const long long k = cfg.users();
  const Rational resident =
      (1 - cfg.alpha()) * t_m * binom_q(k - cfg.k2(), cfg.t() - cfg.k2()) / binom_q(k, cfg.t());
  return rate_r2(cfg, t_m) - resident;
}

Rational coding_delay(const Rational& r1, const Rational& r2, bool concurrent) {
  return concurrent ? std::max(r1, r2) : r1 + r2;
}

SharedPoint memory_share(const std::array<RatePoint, 3>& points, const Rational& m1,
                         const Rational& m2) {
  const Vec2 a{points[0].m1, points[0].m2};
  const Vec2 b{points[1].m1, points[1].m2};
  const Vec2 c{points[2].m1, points[2].m2};
  const Vec2 target{m1, m2};
  const Vec2 u = a - c;
  const Vec2 v = b - c;
  const Vec2 w = target - c;
  const Rational det = cross(u, v);

  std::array<Rational, 3> weights;
  if (det != 0) {
    const Rational xi = cross(w, v) / det;
    const Rational eta = cross(u, w) / det;
    if (xi < 0 || eta < 0 || xi + eta > 1) {
      throw HullError("target memory point lies outside the triangle");
    }
    weights = {xi, eta, 1 - xi - eta};
  } else {
    const std::array<Vec2, 3> p{a, b, c};
    std::size_t i0 = 0;
    std::size_t i1 = 0;
    Rational best = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        const Vec2 d = p[j] - p[i];
        if (dot(d, d) > best) {
          best = dot(d, d);
          i0 = i;
          i1 = j;
        }
      }
    }
    if (best == 0) throw DegenerateError("all three memory points coincide");
    const Vec2 d = p[i1] - p[i0];
    const Vec2 e = target - p[i0];
    if (cross(d, e) != 0) throw HullError("target memory point is off the shared segment");
    const Rational lambda = dot(d, e) / dot(d, d);
    if (!in_unit(lambda)) throw HullError("target memory point is off the shared segment");
    weights = {0, 0, 0};
    weights[i0] = 1 - lambda;
    weights[i1] = lambda;
  }
  return {mix(points, weights), {weights[0], weights[1]}};
}

RatePoint memory_share_mbar(const RatePoint& a, const RatePoint& b, const Rational& m_bar,
                            Rational* lambda) {
  if (a.m_bar == b.m_bar) throw DegenerateError("both points have the same global memory");
  const Rational l = (m_bar - a.m_bar) / (b.m_bar - a.m_bar);
  if (!in_unit(l)) throw HullError("global memory outside the shared segment");
  if (lambda != nullptr) *lambda = l;
  return mix({a, b, b}, {1 - l, l, 0});
}

std::string to_string(Region region) {
  switch (region) {
    case Region::kI: return "Region I";
    case Region::kII: return "Region II";
    case Region::kIII: return "Region III";
  }
  return "?";
}

RegionConstants region_constants(int k1, int k2) {
  const long long k = static_cast<long long>(k1) * k2;
  const Rational c = binom_q(k, k2);
  RegionConstants out;
  out.a = Rational(k2) * k2 - Rational(k) * (k2 - 1) / c;
  const Rational kk1 = Rational(k) * k1;
  if (c != kk1) out.b = kk1 / 4 * (c - 4) / (c - kk1);
  const Rational den = out.a - make_rational(1, k1);
  if (den == 0) throw DegenerateError("region threshold undefined (A = 1/K1)");
  out.threshold = (out.a - k) / den;
  return out;
}

Region classify_alpha(const RegionConstants& c, const Rational& alpha) {
  if (alpha > c.threshold) return Region::kII;
  if (!c.b || alpha <= *c.b) return Region::kI;
  return Region::kIII;
}

RegionReport region_classify(const HierConfig& cfg) {
  if (cfg.t() != cfg.k2()) {
    throw ScopeError("region classification needs t = K2");
  }
  const RegionConstants c = region_constants(cfg.k1(), cfg.k2());
  RegionReport r;
  r.region_a = c.a;
  r.region_b = c.b;
  r.alpha_threshold = c.threshold;
  r.region = classify_alpha(c, cfg.alpha());
  r.theorem2_applies = cfg.k1() > cfg.k2() && cfg.k2() >= 2;
  r.theorem3_applies = cfg.k1() >= 2 && cfg.k1() <= cfg.k2() && !(cfg.k1() == 2 && cfg.k2() == 2);
  return r;
}

bool lemma1_holds(int k1, int k2) {
  const long long k = static_cast<long long>(k1) * k2;
  return binom(k, k2) > BigInt(k) * k2;
}

bool lemma2_holds(int k1, int k2) {
  const long long k = static_cast<long long>(k1) * k2;
  return !(binom(k, k2) <= BigInt(k) * k1) || k1 > k2;
}

bool lemma3_holds(int k1, int k2) {
  const long long k = static_cast<long long>(k1) * k2;
  return k1 > k2 || binom(k, k2) > BigInt(k) * k1;
}

bool theorem2_holds(int k1, int k2) {
  if (k1 <= k2) return true;
  return region_constants(k1, k2).threshold < 0;
}

bool theorem3_holds(int k1, int k2) {
  if (k1 > k2) return true;
  const RegionConstants c = region_constants(k1, k2);
  return !c.b || *c.b > 1;
}

}  // namespace hiercache
