#include <gtest/gtest.h>

#include "hk/hk_core.hpp"

using namespace hk;

namespace {

Ideal ideal(const RingSpecPtr& r, std::vector<std::string> gens) { return Ideal::parse(r, gens); }
Rational R(long long a, long long b = 1) { return Rational(a, b); }

struct Fixture {
  RingSpecPtr plane = RingSpec::make(2, {"x", "y"});
  RingSpecPtr line3 = RingSpec::make(3, {"x"});
  RingSpecPtr line2 = RingSpec::make(2, {"x"});
  RingSpecPtr cusp = RingSpec::make(2, {"x", "y"}, {3, 2}, {"x^2 - y^3"});
};

}  // namespace

TEST(HLevel, Examples) {
  Fixture f;
  auto m = Ideal::maximal(f.plane);
  auto a = h_level(m, m, 1, R(1));
  EXPECT_EQ(a.raw, 3u);
  EXPECT_EQ(a.normalized, R(3, 4));
  auto b = h_level(ideal(f.line3, {"x^2"}), ideal(f.line3, {"x^3"}), 1, R(1));
  EXPECT_EQ(b.raw, 6u);
  EXPECT_EQ(b.normalized, R(2));
  EXPECT_EQ(h_level(m, m, 3, R(-1)).raw, 0u);
  EXPECT_EQ(h_level(m, m, 3, R(0)).raw, 0u);
}

TEST(HLevel, InfiniteColengthIsDomainError) {
  Fixture f;
  EXPECT_THROW(h_level(ideal(f.plane, {"x"}), ideal(f.plane, {"x^2"}), 1, R(1)), DomainError);
}

TEST(HLevel, ZeroIdealJumpsAtZero) {
  Fixture f;
  auto m = Ideal::maximal(f.plane);
  EXPECT_EQ(h_level(Ideal::zero(f.plane), m, 2, R(0)).raw, 0u);
  EXPECT_EQ(h_level(Ideal::zero(f.plane), m, 2, R(1, 4)).raw, 16u);
}

TEST(HEstimate, Examples) {
  Fixture f;
  auto m = Ideal::maximal(f.plane);
  auto e = h_estimate(m, m, R(1, 2), level_range(2, 6));
  EXPECT_LE(abs(e.value - R(1, 8)), R(2, 64));
  EXPECT_EQ(e.model, "C/q");
  auto dvr = h_estimate(ideal(f.line3, {"x^2"}), ideal(f.line3, {"x^3"}), R(1), level_range(1, 4));
  EXPECT_EQ(dvr.value, R(2));
  EXPECT_EQ(dvr.model, "exact");
  for (auto s : {R(1, 4), R(1), R(5, 2)}) {
    auto split = h_estimate(ideal(f.plane, {"x"}), ideal(f.plane, {"y"}), s, level_range(2, 5));
    EXPECT_EQ(split.value, s);
  }
}

TEST(HEstimate, ErrorBoundCoversEveryLevel) {
  Fixture f;
  auto m = Ideal::maximal(f.plane);
  for (auto s : {R(1, 3), R(3, 4), R(5, 4)}) {
    auto e = h_estimate(m, m, s, level_range(2, 6));
    for (std::size_t i = 0; i < e.levels.size(); ++i) {
      double q = std::pow(2.0, e.levels[i]);
      EXPECT_LE(std::fabs(to_double(e.samples[i] - e.value)), e.error_bound * 64.0 / q * (1 + 1e-12));
    }
  }
}

TEST(Density, Examples) {
  Fixture f;
  auto x = ideal(f.line2, {"x"});
  for (int j = -16; j <= 24; ++j) {
    Rational s = R(j, 16);
    bool inside = s > R(-1, 8) && s <= R(7, 8);
    EXPECT_EQ(density_level(x, x, 3, s), inside ? R(1) : R(0)) << j;
  }
  auto m = Ideal::maximal(f.plane);
  EXPECT_LE(abs(density_level(m, m, 6, R(1, 2)) - R(1, 2)), R(1, 32));
  EXPECT_EQ(density_level(m, m, 4, R(5)), R(0));
}

TEST(GradedDensity, Examples) {
  Fixture f;
  auto m = Ideal::maximal(f.plane);
  EXPECT_EQ(graded_density_level(m, 1, R(1, 2)), R(1));
  EXPECT_EQ(graded_density_level(m, 1, R(1)), R(1, 2));
  EXPECT_EQ(graded_density_level(m, 1, R(-1)), R(0));
  // Slices add up to l(R/J^[q]).
  auto cm = Ideal::maximal(f.cusp);
  Rational total = 0;
  for (int deg = 0; deg < 40; ++deg) total += graded_density_level(cm, 2, R(deg, 4));
  EXPECT_EQ(total, R(static_cast<long long>(*ideal_colength(frobenius_power(cm, 4)))));
}

TEST(HilbertKunz, Examples) {
  Fixture f;
  auto m = Ideal::maximal(f.plane);
  auto e = hilbert_kunz(ideal_power(m, 2), level_range(0, 5));
  EXPECT_EQ(e.value, R(3));
  EXPECT_TRUE(e.exact());
  EXPECT_EQ(hilbert_kunz(m, level_range(1, 4)).value, R(1));
  auto cusp = hilbert_kunz(Ideal::maximal(f.cusp), level_range(2, 6));
  EXPECT_LE(abs(cusp.value - R(2)), R(1, 16));
  auto hs = hilbert_samuel(Ideal::maximal(f.cusp), 8);
  EXPECT_EQ(hs.value, R(2));
}

TEST(HilbertSamuel, Examples) {
  Fixture f;
  auto m = Ideal::maximal(f.plane);
  auto e = hilbert_samuel(m, 6);
  EXPECT_EQ(e.value, R(1));
  EXPECT_TRUE(e.exact());
  EXPECT_EQ(hilbert_samuel(ideal(f.plane, {"x^2", "y"}), 6).value, R(2));
  EXPECT_EQ(hilbert_samuel(Ideal::maximal(f.cusp), 6).value, R(2));
  EXPECT_THROW(hilbert_samuel(m, 3), ConfigError);
}

TEST(FThreshold, Examples) {
  Fixture f;
  auto m = Ideal::maximal(f.plane);
  auto c = f_threshold_level(m, ideal_power(m, 2), 2);
  EXPECT_EQ(c.value, 10);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_FALSE(contains(frobenius_power(ideal_power(m, 2), 4), Ideal(f.plane, {*c.witness})));
  auto x = ideal(f.line2, {"x"});
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(f_threshold_level(x, x, n).value, (1 << n) - 1);
  EXPECT_THROW(f_threshold_level(ideal(f.plane, {"x"}), ideal(f.plane, {"y"}), 1), NotBounded);
}

TEST(FThreshold, PolynomialRouteMatchesMonomialRoute) {
  // A linear change of variables keeps the threshold.
  auto r = RingSpec::make(3, {"x", "y"});
  auto m = Ideal::maximal(r);
  auto mixed = ideal(r, {"x+y", "x-y"});
  for (int n = 1; n <= 3; ++n) {
    EXPECT_EQ(f_threshold_level(mixed, ideal_power(m, 2), n).value, f_threshold_level(m, ideal_power(m, 2), n).value);
  }
  auto cusp = RingSpec::make(2, {"x", "y"}, {3, 2}, {"x^2 - y^3"});
  auto cm = Ideal::maximal(cusp);
  for (int n = 1; n <= 3; ++n) {
    auto sp = stable_point_level(cm, cm, n);
    EXPECT_EQ(sp.t, sp.threshold + 1);
  }
}

TEST(FLimbus, Examples) {
  Fixture f;
  EXPECT_EQ(f_limbus_level(ideal(f.line3, {"x^2"}), ideal(f.line3, {"x^3"}), 1).value, 5);
  auto x = ideal(f.line2, {"x"});
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(f_limbus_level(x, x, n).value, (1 << n) + 1);
  auto l = f_limbus_level(ideal(f.plane, {"y"}), ideal(f.plane, {"x"}), 2);
  EXPECT_TRUE(l.not_in_radical);
  EXPECT_EQ(l.value, 0);
}

TEST(StablePoint, Examples) {
  Fixture f;
  auto m = Ideal::maximal(f.plane);
  for (int n = 1; n <= 5; ++n) {
    auto sp = stable_point_level(m, m, n);
    EXPECT_EQ(sp.t, 2 * static_cast<std::int64_t>(sp.q) - 1);
    EXPECT_EQ(sp.t, sp.threshold + 1);
  }
  EXPECT_EQ(stable_point_level(m, m, 2).ratio, R(7, 4));
  EXPECT_EQ(stable_point_level(ideal(f.line3, {"x^2"}), ideal(f.line3, {"x^3"}), 1).t, 5);
}

TEST(LevelProperties, MonotonePlateauHeadTelescoping) {
  Fixture f;
  auto m = Ideal::maximal(f.plane);
  struct Case {
    Ideal I, J;
  };
  std::vector<Case> cases{{m, m}, {ideal(f.plane, {"x^2", "y"}), m}, {m, ideal(f.plane, {"x^3", "y^2"})},
                          {Ideal::maximal(f.cusp), Ideal::maximal(f.cusp)}};
  for (const auto& c : cases) {
    for (int n = 1; n <= 3; ++n) {
      auto q = level_q(c.I, n);
      auto table = length_table(c.I, c.J, q);
      auto frob = *table->frobenius_length();
      auto sp = stable_point_level(c.I, c.J, n);
      std::uint64_t prev = 0;
      for (std::int64_t t = 0; t <= sp.t + 5; ++t) {
        auto v = table->raw(t);
        EXPECT_GE(v, prev);
        prev = v;
        if (t >= sp.t) {
          EXPECT_EQ(v, frob);
        }
      }
      auto b = f_limbus_level(c.I, c.J, n);
      // Below the limbus J^[q] is absorbed by I^t; at b_n it no longer is.
      for (std::int64_t t = 1; t < b.value; ++t)
        EXPECT_EQ(Colength(table->raw(t)), ideal_colength(ideal_power(c.I, t)));
      EXPECT_LT(Colength(table->raw(b.value)), ideal_colength(ideal_power(c.I, b.value)));
      // Telescoping of the density numerators.
      for (std::int64_t a = 0; a < 6; ++a) {
        BigInt sum = 0;
        for (std::int64_t j = a; j < a + 7; ++j) sum += BigInt(table->raw(j + 1)) - BigInt(table->raw(j));
        EXPECT_EQ(sum, BigInt(table->raw(a + 7)) - BigInt(table->raw(a)));
      }
    }
  }
}

TEST(LevelProperties, PowerComparisonSandwich) {
  Fixture f;
  auto m = Ideal::maximal(f.plane);
  auto I = ideal(f.plane, {"x^2", "x*y", "y^3"});
  auto mu = static_cast<std::int64_t>(I.num_generators());
  for (int n = 1; n <= 3; ++n) {
    auto q = static_cast<std::int64_t>(level_q(I, n));
    auto table = length_table(I, m, static_cast<std::uint64_t>(q));
    for (std::int64_t s = 1; s <= 3; ++s) {
      auto frob_pow = *ideal_colength(ideal_sum(frobenius_power(ideal_power(I, s), q), frobenius_power(m, q)));
      EXPECT_LE(table->raw(s * q), frob_pow);
      EXPECT_GE(table->raw(q * (mu + s - 1)), frob_pow);
    }
  }
}
