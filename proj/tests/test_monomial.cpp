#include <gtest/gtest.h>

#include <random>

#include "hk/hk_core.hpp"
#include "oracles.hpp"

using namespace hk;

namespace {

MonomialIdeal mi(std::initializer_list<std::vector<std::uint64_t>> gens, std::size_t n) {
  std::vector<Monomial> ms;
  for (const auto& g : gens) ms.emplace_back(g);
  return minimalize(ms, n);
}

std::vector<oracle::Exps> exps(const MonomialIdeal& m) {
  std::vector<oracle::Exps> out;
  for (const auto& g : m.gens()) out.emplace_back(g.exponents().begin(), g.exponents().end());
  return out;
}

MonomialIdeal random_ideal(std::mt19937_64& rng, std::size_t n, std::uint64_t max_exp, bool primary) {
  std::uniform_int_distribution<std::uint64_t> e(0, max_exp), pure(1, max_exp);
  std::uniform_int_distribution<int> count(1, 6);
  std::vector<Monomial> gens;
  if (primary)
    for (std::size_t v = 0; v < n; ++v) gens.push_back(Monomial::variable(n, v, pure(rng)));
  for (int k = count(rng); k > 0; --k) {
    std::vector<std::uint64_t> x(n);
    for (auto& v : x) v = e(rng);
    gens.emplace_back(x);
  }
  return minimalize(gens, n);
}

}  // namespace

TEST(Minimalize, Examples) {
  EXPECT_EQ(mi({{2, 0}, {3, 0}, {0, 1}}, 2), mi({{2, 0}, {0, 1}}, 2));
  EXPECT_EQ(mi({{2, 1}, {1, 2}}, 2).size(), 2u);
  EXPECT_TRUE(minimalize({}, 2).is_zero());
}

TEST(Minimalize, AntichainGeneratingSameIdeal) {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 1 + it % 4;
    std::vector<Monomial> gens;
    std::uniform_int_distribution<std::uint64_t> e(0, 4);
    for (int k = 0; k < 8; ++k) {
      std::vector<std::uint64_t> x(n);
      for (auto& v : x) v = e(rng);
      gens.emplace_back(x);
    }
    auto m = minimalize(gens, n);
    for (const auto& a : m.gens())
      for (const auto& b : m.gens())
        if (!(a == b)) {
          EXPECT_FALSE(a.divides(b));
        }
    for (const auto& g : gens) EXPECT_TRUE(m.contains(g));
  }
}

TEST(Membership, Examples) {
  auto m = mi({{2, 0}, {0, 2}}, 2);
  EXPECT_TRUE(membership(m, Monomial({2, 1})));
  EXPECT_FALSE(membership(m, Monomial({1, 1})));
  EXPECT_FALSE(membership(MonomialIdeal(2), Monomial({0, 0})));
}

TEST(Staircase, Examples) {
  EXPECT_EQ(staircase_colength(mi({{3, 0}, {0, 4}}, 2)), Colength(12));
  EXPECT_EQ(staircase_colength(mi({{3, 0}, {1, 1}, {0, 2}}, 2)), Colength(4));
  EXPECT_EQ(staircase_colength(mi({{2, 1}}, 2)), std::nullopt);
  EXPECT_EQ(staircase_colength(MonomialIdeal::unit(3)), Colength(0));
  EXPECT_EQ(staircase_colength(MonomialIdeal(1)), std::nullopt);
}

TEST(Staircase, AgreesWithBoxScan) {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 400; ++it) {
    std::size_t n = 1 + it % 3;
    auto m = random_ideal(rng, n, 12, it % 5 != 0);
    EXPECT_EQ(staircase_colength(m), oracle::naive_colength(exps(m), n)) << m.to_string();
  }
}

TEST(Staircase, FrobeniusScalesByQToTheM) {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 1 + it % 3;
    auto m = random_ideal(rng, n, 5, true);
    auto base = staircase_colength(m);
    for (std::uint64_t q : {2, 3, 4, 9}) {
      std::uint64_t qm = 1;
      for (std::size_t i = 0; i < n; ++i) qm *= q;
      EXPECT_EQ(staircase_colength(m.frobenius(q)), Colength(*base * qm));
    }
  }
}

TEST(Staircase, MonotoneUnderInclusion) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 100; ++it) {
    auto a = random_ideal(rng, 3, 6, true);
    auto b = a + random_ideal(rng, 3, 6, false);
    ASSERT_TRUE(b.contains(a));
    EXPECT_GE(*staircase_colength(a), *staircase_colength(b));
  }
}

TEST(Staircase, LargeCountsUse128BitAccumulation) {
  auto m = mi({{100000, 0, 0}, {0, 100000, 0}, {0, 0, 1000}}, 3);
  EXPECT_EQ(staircase_colength(m), Colength(10'000'000'000'000ull));
  auto huge = mi({{1ull << 32, 0, 0}, {0, 1ull << 32, 0}, {0, 0, 1ull << 32}}, 3);
  EXPECT_THROW(staircase_colength(huge), OverflowError);
}

TEST(Staircase, CachedMatchesDirect) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 50; ++it) {
    auto m = random_ideal(rng, 3, 8, true);
    EXPECT_EQ(cached_staircase_colength(m), staircase_colength(m));
    EXPECT_EQ(cached_staircase_colength(m), staircase_colength(m));
  }
}
