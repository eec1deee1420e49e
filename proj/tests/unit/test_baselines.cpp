#include <doctest.h>

#include "fixtures.hpp"
#include "reference.hpp"

#include "hiercache/analytics.hpp"
#include "hiercache/baselines.hpp"

#include <cmath>

using namespace hiercache;
using testsupport::cfg;
using testsupport::q;

namespace {

double d(const Rational& x) { return to_double(x); }

// The displayed rate formulas transcribed once more in doubles, term by
// term, without sharing code with the library.
namespace oracle {

double r(double qq, int k) {
  const double v = k * (1 - qq) * (1.0 / (k * qq)) * (1 - std::pow(1 - qq, k));
  return v > 0 ? v : 0;
}

struct Pair {
  double r1;
  double r2;
};

Pair knmd(int k1, int k2, double n, double m1, double m2, double a, double b) {
  return {a * k2 * r(m1 / (a * n), k1) + (1 - a) * r((1 - b) * m2 / ((1 - a) * n), k1 * k2),
          a * r(b * m2 / (a * n), k2) + (1 - a) * r((1 - b) * m2 / ((1 - a) * n), k2)};
}

Pair zwxwll(int k1, int k2, double n, double m1, double m2, double a, double b) {
  const double x = m1 / (a * n);
  const double y = b * m2 / (a * n);
  const double z = (1 - b) * m2 / ((1 - a) * n);
  const double r1 = a * k2 * (1 - x) * (1 - y) * (a * n / m1) * (1 - std::pow(1 - x, k1)) +
                    (1 - a) * (1 - z) * ((1 - a) * n / ((1 - b) * m2)) *
                        (1 - std::pow(1 - z, k1 * k2));
  const double r2 = a * (1 - y) * (a * n / (b * m2)) * (1 - std::pow(1 - y, k2)) +
                    (1 - a) * (1 - z) * ((1 - a) * n / ((1 - b) * m2)) * (1 - std::pow(1 - z, k2));
  return {r1, r2};
}

Pair wwcy(int k1, int k2, double n, double m1, double m2, double a, double b) {
  return {a * r(m1 / (a * n), k1) * r(b * m2 / (a * n), k2) +
              (1 - a) * r((1 - b) * m2 / ((1 - a) * n), k1 * k2),
          a * r(b * m2 / (a * n), k2) + (1 - a) * r((1 - b) * m2 / ((1 - a) * n), k2)};
}

}  // namespace oracle

SplitTuple tuple(const std::string& label, const Rational& a, const Rational& b) {
  return {label, a, b, false};
}

}  // namespace

TEST_CASE("decentralized rate") {
  CHECK(r_decentralized(q("0.4"), 3) == q("1.176"));
  for (int k = 1; k <= 8; ++k) CHECK(r_decentralized(1, k) == 0);
  CHECK(std::abs(d(r_decentralized(q("0.198"), 6)) - oracle::r(0.198, 6)) < 1e-12);
  CHECK(std::abs(oracle::r(0.198, 6) - 2.972662) < 1e-6);
  CHECK_THROWS_AS(r_decentralized(0, 3), SingularError);
  CHECK_THROWS_AS(r_decentralized(q("1.5"), 3), RangeError);
  CHECK_THROWS_AS(r_decentralized(q("-0.5"), 3), RangeError);
}

TEST_CASE("rate formulas agree with the double transcription") {
  const Rational n = 6;
  for (const char* m1s : {"0.3", "0.3755", "1.2", "3"}) {
    for (const char* m2s : {"0.5", "1.0122", "2.245"}) {
      for (const char* as : {"0.2", "1/2", "0.8"}) {
        for (const char* bs : {"0.01", "0.3", "0.9"}) {
          const Rational m1 = q(m1s), m2 = q(m2s), a = q(as), b = q(bs);
          if (m1 / (a * n) > 1 || b * m2 / (a * n) > 1 || (1 - b) * m2 / ((1 - a) * n) > 1) {
            continue;
          }
          const auto t = tuple("x", a, b);
          const auto k = knmd_rates(3, 2, 6, m1, m2, t);
          const auto ok = oracle::knmd(3, 2, 6, d(m1), d(m2), d(a), d(b));
          CHECK(d(k.r1) == doctest::Approx(ok.r1).epsilon(1e-12));
          CHECK(d(k.r2) == doctest::Approx(ok.r2).epsilon(1e-12));

          const auto z = zwxwll_rates(3, 2, 6, m1, m2, t);
          const auto oz = oracle::zwxwll(3, 2, 6, d(m1), d(m2), d(a), d(b));
          CHECK(d(z.r1) == doctest::Approx(oz.r1).epsilon(1e-12));
          CHECK(d(z.r2) == doctest::Approx(oz.r2).epsilon(1e-12));

          const auto w = wwcy_rates(3, 2, 6, m1, m2, t);
          const auto ow = oracle::wwcy(3, 2, 6, d(m1), d(m2), d(a), d(b));
          CHECK(d(w.r1) == doctest::Approx(ow.r1).epsilon(1e-12));
          CHECK(d(w.r2) == doctest::Approx(ow.r2).epsilon(1e-12));
          // Same second layer.
          CHECK(w.r2 == k.r2);
        }
      }
    }
  }
}

TEST_CASE("KNMD regions and tuples") {
  const auto c1 = knmd_optimal_tuple(2, 6, q("0.3755"), q("1.0122"), default_beta_floor());
  CHECK(c1.region == KnmdRegion::kII);
  CHECK(ref::near_printed(d(c1.tuple.split), "0.1565"));
  CHECK(c1.tuple.beta == q("0.01"));
  CHECK(c1.tuple.beta_floored);

  const auto c3 = knmd_optimal_tuple(3, 6, q("0.105"), q("2.245"), default_beta_floor());
  CHECK(c3.region == KnmdRegion::kI);
  CHECK(c3.tuple.split == q("0.105") / 6);
  CHECK(c3.tuple.beta == q("0.105") / 6);
  CHECK_FALSE(c3.tuple.beta_floored);

  const auto top = knmd_optimal_tuple(2, 6, q("6"), q("0"), default_beta_floor());
  CHECK(top.region == KnmdRegion::kIII);
  CHECK(top.tuple.split == 1);
  CHECK(top.tuple.beta == q("1/4"));
}

TEST_CASE("KNMD at the region-I point of the two-mirror example") {
  const Rational m1 = q("0.34"), m2 = q("2.16");
  const auto ch = knmd_optimal_tuple(3, 6, m1, m2, default_beta_floor());
  CHECK(ch.region == KnmdRegion::kI);
  const auto r = knmd_rates(2, 3, 6, m1, m2, ch.tuple);
  CHECK(ref::near_printed(d(r.r1), "1.56"));
  CHECK(ref::near_printed(d(r.r2), "1.312"));
}

TEST_CASE("baselines at the three-file table point") {
  const auto p = composite(cfg(3, 2, 3, 2, "1/2"));
  const auto floor = default_beta_floor();
  const auto kt = knmd_optimal_tuple(2, 3, p.m1, p.m2, floor);
  const auto k = knmd_rates(3, 2, 3, p.m1, p.m2, kt.tuple);
  CHECK(ref::near_printed(d(k.r1), "3.076"));
  CHECK(ref::near_printed(d(k.r2), "1.623"));
  const auto z = zwxwll_best(3, 2, 3, p.m1, p.m2, floor);
  CHECK(ref::near_printed(d(z.rates.r1), "3.413"));
  CHECK(ref::near_printed(d(z.rates.r2), "1.618"));
  const auto w = wwcy_best(3, 2, 3, p.m1, p.m2, floor);
  CHECK(ref::near_printed(d(w.rates.r1), "3.07"));
  CHECK(ref::near_printed(d(w.rates.r2), "1.623"));
}

TEST_CASE("ZWXWLL and WWCY in regime I") {
  const Rational m1 = q("0.105"), m2 = q("2.245");
  CHECK(in_regime_one(3, 6, m1, m2));
  const auto z = zwxwll_best(2, 3, 6, m1, m2, default_beta_floor());
  CHECK(ref::near_printed(d(z.rates.r1), "1.5445"));
  CHECK(ref::near_printed(d(z.rates.r2), "1.2626"));
  const auto w = wwcy_best(2, 3, 6, m1, m2, default_beta_floor());
  CHECK(ref::near_printed(d(w.rates.r1), "1.5445"));
  CHECK(ref::near_printed(d(w.rates.r2), "1.2626"));
}

TEST_CASE("tuple selection is never worse than a menu entry") {
  for (const char* m1s : {"0.2", "0.3755", "0.9", "2"}) {
    for (const char* m2s : {"0.4", "1.0122", "2", "3"}) {
      const Rational m1 = q(m1s), m2 = q(m2s);
      const auto floor = default_beta_floor();
      const auto best = zwxwll_best(3, 2, 6, m1, m2, floor);
      for (const auto& t : zwxwll_menu(2, 6, m1, m2, floor)) {
        try {
          const auto r = zwxwll_rates(3, 2, 6, m1, m2, t);
          CHECK(best.rates.r2 <= r.r2);
        } catch (const Error&) {
        }
      }
      const auto wb = wwcy_best(3, 2, 6, m1, m2, floor);
      for (const auto& t : wwcy_menu(2, 6, m1, m2, floor)) {
        try {
          CHECK(wb.rates.r2 <= wwcy_rates(3, 2, 6, m1, m2, t).r2);
        } catch (const Error&) {
        }
      }
    }
  }
  CHECK(zwxwll_menu(2, 6, q("0.3755"), q("1.0122"), default_beta_floor()).size() == 2);
  CHECK(zwxwll_menu(3, 6, q("0.105"), q("2.245"), default_beta_floor()).size() == 3);
}

TEST_CASE("rates are non-negative and do not grow with memory") {
  const auto t = tuple("x", q("1/2"), q("1/2"));
  // Steps keep every memory fraction inside (0, 1].
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      const Rational m1 = make_rational(i, 2), m2 = make_rational(j, 2);
      const auto a = knmd_rates(3, 2, 6, m1, m2, t);
      const auto b1 = knmd_rates(3, 2, 6, m1 + make_rational(1, 2), m2, t);
      const auto b2 = knmd_rates(3, 2, 6, m1, m2 + make_rational(1, 2), t);
      CHECK(a.r1 >= 0);
      CHECK(a.r2 >= 0);
      CHECK(b1.r1 <= a.r1);
      CHECK(b1.r2 <= a.r2);
      CHECK(b2.r1 <= a.r1);
      CHECK(b2.r2 <= a.r2);
      const auto w = wwcy_rates(3, 2, 6, m1, m2, t);
      const auto w1 = wwcy_rates(3, 2, 6, m1 + make_rational(1, 2), m2, t);
      CHECK(w.r1 >= 0);
      CHECK(w1.r1 <= w.r1);
      const auto z = zwxwl_rates(3, 2, 6, m1, m2);
      const auto z1 = zwxwl_rates(3, 2, 6, m1 + make_rational(1, 2), m2);
      const auto z2 = zwxwl_rates(3, 2, 6, m1, m2 + make_rational(1, 2));
      CHECK(z.r1 >= 0);
      CHECK(z1.r1 <= z.r1);
      CHECK(z2.r1 <= z.r1);
      CHECK(z2.r2 <= z.r2);
    }
  }
}

TEST_CASE("joint caching grid and envelope") {
  const auto r = zwxwl_rates(3, 2, 6, 2, 0);
  CHECK(r.r1 == 2);
  CHECK(r.r2 == 2);

  const auto axes = zwxwl_grid(3, 2, 6, GridKind::kAxes);
  CHECK(axes.size() == 3 + 2 + 1);
  const auto full = zwxwl_grid(3, 2, 6, GridKind::kFull);
  CHECK(full.size() == 12);

  const auto e = zwxwl_envelope(axes, q("7.2"));
  CHECK(e.r_bar == q("7.65"));
  CHECK(e.m1 == q("1.8"));
  CHECK(e.m2 == q("0.3"));
  // The interior point (M1, M2) = (2, 3) lies below that segment.
  CHECK(zwxwl_envelope(full, q("7.2")).r_bar < q("7.65"));

  const auto e2 = zwxwl_envelope(zwxwl_grid(3, 2, 3, GridKind::kAxes), q("3.2"));
  CHECK(ref::near_printed(d(e2.r_bar), "7.88"));
  CHECK_THROWS_AS(zwxwl_envelope(axes, q("100")), HullError);
}

TEST_CASE("HPDA-based rates match the alpha = 0 line") {
  for (int k1 = 2; k1 <= 4; ++k1) {
    for (int k2 = 2; k2 <= 4; ++k2) {
      const int k = k1 * k2;
      for (int t = k2 + 1; t < k; ++t) {
        const auto c = cfg(k1, k2, k, t, "0");
        const auto kw = kwc_rates(k1, k2, t);
        const auto mp = memory_point(c);
        CHECK(kw.r1 == rate_r1(c));
        CHECK(kw.r2 == rate_r2_worst(c));
        CHECK(kw.m1_frac == mp.m1 / k);
        CHECK(kw.m2_frac == mp.m2 / k);
      }
    }
  }
  CHECK(kwc_rates(3, 2, 5).r1 == make_rational(1, 6));
  CHECK(to_decimal_string(kwc_envelope(3, 2, 6, q("5.9")).r_bar, 3) == "8.743");
}

TEST_CASE("two-user single-mirror rates") {
  const auto corner = lzx_rates(2, 0, q("1/2"));
  CHECK(corner.r1 + corner.r2 == 2);
  const auto c1 = lzx_rates(2, q("1/2"), q("1/2"));
  CHECK(c1.r1 == (3 * q("1.5") - 4 * q("0.5")) / 4);
  CHECK(c1.r2 == (3 * 2 - 4 * q("0.5")) / 4);
  const auto c4 = lzx_rates(2, 2, q("1/2"));
  CHECK(c4.r1 == 0);
  CHECK(c4.r2 == (2 * 3 - 4 * q("0.5")) / 4);
  CHECK_THROWS_AS(lzx_rates(2, 0, 2), ScopeError);
}
