#include <gtest/gtest.h>

#include <random>

#include "hk/hk_core.hpp"
#include "oracles.hpp"

using namespace hk;

namespace {

std::vector<Polynomial> parse_all(const PolyContextPtr& ctx, std::initializer_list<const char*> texts) {
  std::vector<Polynomial> out;
  for (auto t : texts) out.push_back(parse_polynomial(t, ctx));
  return out;
}

oracle::Poly to_oracle(const Polynomial& f) {
  oracle::Poly out;
  for (const auto& t : f.terms()) {
    auto e = t.monomial.exponents();
    out[oracle::Exps(e.begin(), e.end())] = t.coeff;
  }
  return out;
}

}  // namespace

TEST(Buchberger, LexExample) {
  auto ctx = make_context(PrimeField(2), MonomialOrder::lex(2), {"x", "y"});
  auto gb = buchberger(parse_all(ctx, {"x^2 - y", "y^2 - x"}), ctx);
  std::vector<Polynomial> expected = parse_all(ctx, {"x + y^2", "y^4 + y"});
  ASSERT_EQ(gb.elements().size(), 2u);
  EXPECT_EQ(gb.elements()[0], expected[0]);
  EXPECT_EQ(gb.elements()[1], expected[1]);
  EXPECT_EQ(colength(gb), Colength(4));
  EXPECT_TRUE(satisfies_buchberger_criterion(gb));
}

TEST(Buchberger, MonomialAndPrincipalInputs) {
  auto ctx = make_context(PrimeField(3), MonomialOrder::grevlex(2), {"x", "y"});
  auto gb = buchberger(parse_all(ctx, {"x^2", "x*y", "y^2"}), ctx);
  EXPECT_EQ(gb.elements().size(), 3u);
  EXPECT_EQ(colength(gb), Colength(3));
  for (auto ord : {MonomialOrder::lex(2), MonomialOrder::grevlex(2), MonomialOrder::grevlex(2, {3, 2})}) {
    auto c = make_context(PrimeField(3), ord, {"x", "y"});
    auto g = buchberger(parse_all(c, {"x^2 - y^3"}), c);
    ASSERT_EQ(g.elements().size(), 1u);
    EXPECT_EQ(g.elements()[0].monic(), parse_polynomial("x^2 - y^3", c).monic());
  }
}

TEST(Buchberger, BudgetIsReported) {
  auto ctx = make_context(PrimeField(2), MonomialOrder::grevlex(3), {"x", "y", "z"});
  Budget tiny;
  tiny.max_basis = 2;
  EXPECT_THROW(buchberger(parse_all(ctx, {"x^2 + y*z", "y^2 + x*z", "z^2 + x*y"}), ctx, tiny), BudgetExceeded);
}

TEST(NormalForm, Examples) {
  auto ctx = make_context(PrimeField(5), MonomialOrder::grevlex(2, {3, 2}), {"x", "y"});
  auto gb = buchberger(parse_all(ctx, {"x^2 - y^3"}), ctx);
  auto x2 = parse_polynomial("x^2", ctx);
  // x^2 and y^3 tie in weighted degree; the reverse-lex tiebreak makes x^2 lead.
  EXPECT_EQ(normal_form(x2, gb), parse_polynomial("y^3", ctx));
  EXPECT_EQ(normal_form(parse_polynomial("1", ctx), gb), parse_polynomial("1", ctx));
  auto in_ideal = parse_polynomial("x^3*y - x*y^4 + 2*x^2 - 2*y^3", ctx);
  EXPECT_TRUE(normal_form(in_ideal, gb).is_zero());
}

TEST(NormalForm, IdempotentAndLinear) {
  auto ctx = make_context(PrimeField(7), MonomialOrder::grevlex(3), {"x", "y", "z"});
  auto gb = buchberger(parse_all(ctx, {"x^2 + y*z", "y^3 - x*z^2", "z^4 + x*y"}), ctx);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> e(0, 5), c(0, 6);
  for (int it = 0; it < 100; ++it) {
    std::vector<Term> a, b;
    for (int k = 0; k < 4; ++k) {
      a.push_back({Monomial({e(rng), e(rng), e(rng)}), c(rng)});
      b.push_back({Monomial({e(rng), e(rng), e(rng)}), c(rng)});
    }
    auto f = Polynomial::from_terms(ctx, a), g = Polynomial::from_terms(ctx, b);
    auto nf = normal_form(f, gb);
    EXPECT_EQ(normal_form(nf, gb), nf);
    EXPECT_EQ(normal_form(f + g, gb), nf + normal_form(g, gb));
    for (const auto& t : nf.terms()) EXPECT_FALSE(gb.leading().contains(t.monomial));
  }
}

TEST(Colength, Examples) {
  MonomialIdeal m = minimalize({Monomial({2, 0}), Monomial({1, 1}), Monomial({0, 2})}, 2);
  EXPECT_EQ(staircase_colength(m), Colength(3));
  EXPECT_EQ(staircase_colength(minimalize({Monomial({1, 0})}, 2)), std::nullopt);
}

TEST(Colength, OrderIndependence) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint64_t> e(0, 3), c(1, 4);
  int checked = 0;
  for (int it = 0; it < 60; ++it) {
    auto lexc = make_context(PrimeField(5), MonomialOrder::lex(3), {"x", "y", "z"});
    auto grc = make_context(PrimeField(5), MonomialOrder::grevlex(3), {"x", "y", "z"});
    std::vector<Polynomial> gens;
    for (std::size_t v = 0; v < 3; ++v) gens.push_back(Polynomial::monomial(lexc, Monomial::variable(3, v, 3 + e(rng))));
    for (int k = 0; k < 2; ++k) {
      std::vector<Term> ts;
      for (int j = 0; j < 3; ++j) ts.push_back({Monomial({e(rng), e(rng), e(rng)}), c(rng)});
      gens.push_back(Polynomial::from_terms(lexc, ts));
    }
    auto a = colength(buchberger(gens, lexc));
    std::vector<Polynomial> gg;
    for (const auto& g : gens) gg.push_back(g.with_context(grc));
    auto b = colength(buchberger(gg, grc));
    EXPECT_EQ(a, b);
    ++checked;
  }
  EXPECT_EQ(checked, 60);
}

TEST(Dimension, Examples) {
  EXPECT_EQ(dimension(minimalize({Monomial({2, 0}), Monomial({0, 2})}, 2), 2), 0);
  EXPECT_EQ(dimension(minimalize({Monomial({1, 1})}, 2), 2), 1);
  EXPECT_EQ(dimension(MonomialIdeal(3), 3), 3);
  EXPECT_EQ(dimension(MonomialIdeal::unit(2), 2), -1);
}

TEST(GradedSlice, Examples) {
  MonomialIdeal m = minimalize({Monomial({2, 0}), Monomial({0, 2})}, 2);
  std::vector<std::uint64_t> w{1, 1};
  EXPECT_EQ(graded_slice_length(m, 1, w), 2u);
  EXPECT_EQ(graded_slice_length(m, 2, w), 1u);
  EXPECT_EQ(graded_slice_length(m, 3, w), 0u);
  EXPECT_EQ(graded_slice_length(m, -1, w), 0u);
  EXPECT_EQ(graded_slice_length(m, 0, w), 1u);
}

TEST(GradedSlice, SumsToColength) {
  MonomialIdeal m = minimalize({Monomial({5, 0, 0}), Monomial({0, 4, 0}), Monomial({0, 0, 3}), Monomial({1, 1, 1})}, 3);
  std::vector<std::uint64_t> w{3, 2, 1};
  std::uint64_t total = 0;
  for (std::int64_t d = 0; d < 60; ++d) total += graded_slice_length(m, d, w);
  EXPECT_EQ(Colength(total), staircase_colength(m));
}

TEST(Membership, AgreesWithLinearAlgebraOracle) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::uint64_t> coef(0, 2);
  auto ctx = make_context(PrimeField(3), MonomialOrder::grevlex(3), {"x", "y", "z"});
  auto random_homog = [&](std::uint64_t d) {
    std::vector<Term> ts;
    for (const auto& e : oracle::monomials_of_degree(3, d))
      if (auto c = coef(rng); c && rng() % 3 == 0) ts.push_back({Monomial(e), c});
    return Polynomial::from_terms(ctx, ts);
  };
  int members = 0;
  for (int it = 0; it < 40; ++it) {
    std::vector<Polynomial> gens{random_homog(2), random_homog(2), random_homog(3)};
    auto gb = buchberger(gens, ctx);
    std::vector<oracle::Poly> og;
    for (const auto& g : gens) og.push_back(to_oracle(g));
    for (std::uint64_t d = 2; d <= 5; ++d) {
      Polynomial f = rng() % 2 ? random_homog(d) : gens[0] * random_homog(d - 2) + gens[1] * random_homog(d - 2);
      bool lib = normal_form(f, gb).is_zero();
      bool ref = oracle::linear_algebra_member(to_oracle(f), og, 3, d, 3);
      EXPECT_EQ(lib, ref) << f.to_string();
      members += lib;
    }
  }
  EXPECT_GT(members, 10);
}
