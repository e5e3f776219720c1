#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hk/job.hpp"

namespace hk {

namespace verify_detail {

struct Case {
  std::string name;
  RingSpecPtr ring;
  std::vector<std::string> I, J;
};

inline std::vector<Case> example_bank() {
  auto plane = RingSpec::make(2, {"x", "y"});
  auto plane3 = RingSpec::make(3, {"x", "y"});
  auto space = RingSpec::make(2, {"x", "y", "z"});
  auto cusp = RingSpec::make(2, {"x", "y"}, {3, 2}, {"x^2 - y^3"});
  auto node = RingSpec::make(3, {"x", "y"}, {1, 1}, {"x*y"});
  return {
      {"dvr p=3 (x^2),(x^3)", RingSpec::make(3, {"x"}), {"x^2"}, {"x^3"}},
      {"dvr p=2 (x),(x)", RingSpec::make(2, {"x"}), {"x"}, {"x"}},
      {"plane m,m", plane, {"x", "y"}, {"x", "y"}},
      {"plane m,m^2", plane, {"x", "y"}, {"x^2", "x*y", "y^2"}},
      {"plane p=3 (x^2,y),(x,y^3)", plane3, {"x^2", "y"}, {"x", "y^3"}},
      {"space m,(x^2,y*z,y^3,z^3)", space, {"x", "y", "z"}, {"x^2", "y*z", "y^3", "z^3"}},
      {"cusp m,m", cusp, {"x", "y"}, {"x", "y"}},
      {"node m,m", node, {"x", "y"}, {"x", "y"}},
      {"plane (x+y, x*y),m", plane, {"x + y", "x*y"}, {"x", "y"}},
  };
}

struct Outcome {
  std::string name;
  bool passed;
  std::string detail;
};

using Check = std::function<std::string()>;  // empty string on success

inline Outcome run_check(const std::string& name, const Check& fn) {
  try {
    auto msg = fn();
    return {name, msg.empty(), msg.empty() ? "ok" : msg};
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

inline std::string level_properties(const Case& c, int n) {
  Ideal I = Ideal::parse(c.ring, c.I), J = Ideal::parse(c.ring, c.J);
  auto q = level_q(I, n);
  auto table = length_table(I, J, q);
  auto frob = *table->frobenius_length();
  auto sp = stable_point_level(I, J, n);
  if (table->raw(0) != 0) return "raw(0) != 0";
  std::uint64_t prev = 0;
  for (std::int64_t t = 1; t <= sp.t + 3; ++t) {
    auto v = table->raw(t);
    if (v < prev) return "raw not monotone at t=" + std::to_string(t);
    if (t >= sp.t && v != frob) return "plateau broken at t=" + std::to_string(t);
    prev = v;
  }
  // Telescoping: the Frobenius-Poincare sum at y = 0 is the plateau.
  double fp0 = frobenius_poincare_level(I, J, n, 0.0).value.real();
  double ehk = to_double(Rational(BigInt(frob)) / q_power(q, c.ring->dim()));
  if (std::abs(fp0 - ehk) > 1e-12 * std::max(1.0, ehk)) return "F_n(0) differs from the e_HK level value";
  auto boij = boij_ratios(I, J, n, sp.t + 1);
  if (!boij.non_increasing()) return "Boij ratios increase at j=" + std::to_string(*boij.violation);
  std::vector<Rational> grid;
  for (std::int64_t j = 1; j <= sp.t + 1; ++j) grid.push_back(Rational(j, BigInt(q)));
  auto conv = convex_functional(I, J, n, Rational(1, BigInt(q)), grid);
  if (!conv.convex()) return "convexity slopes increase at j=" + std::to_string(*conv.violation);
  return "";
}

inline std::vector<std::pair<std::string, Check>> closed_form_checks() {
  std::vector<std::pair<std::string, Check>> out;
  out.emplace_back("dvr closed form min{2 ceil(sq), 3q}", [] {
    auto ring = RingSpec::make(3, {"x"});
    auto I = Ideal::parse(ring, {"x^2"}), J = Ideal::parse(ring, {"x^3"});
    for (int n = 1; n <= 4; ++n) {
      auto q = static_cast<std::int64_t>(level_q(ring->characteristic(), n));
      for (std::int64_t j = 0; j <= 3 * q; ++j) {
        auto raw = static_cast<std::int64_t>(h_level(I, J, n, Rational(j, q)).raw);
        if (raw != std::min(2 * j, 3 * q)) return "mismatch at n=" + std::to_string(n) + " j=" + std::to_string(j);
      }
    }
    auto e = h_estimate(I, J, 1, level_range(1, 4));
    return e.value == 2 && e.exact() ? std::string() : "h(1) estimate is not exactly 2";
  });
  out.emplace_back("piecewise density of (x),(x)", [] {
    auto ring = RingSpec::make(2, {"x"});
    auto x = Ideal::parse(ring, {"x"});
    for (int n = 1; n <= 6; ++n) {
      auto q = static_cast<std::int64_t>(level_q(2, n));
      for (std::int64_t j = -2; j <= q + 2; ++j) {
        Rational s(j, q);
        Rational expected = (s > Rational(-1, q) && s <= 1 - Rational(1, q)) ? 1 : 0;
        if (density_level(x, x, n, s) != expected) return "f_n wrong at n=" + std::to_string(n);
      }
    }
    return std::string();
  });
  out.emplace_back("regular plane stable point 2q-1", [] {
    auto m = Ideal::maximal(RingSpec::make(2, {"x", "y"}));
    for (int n = 1; n <= 5; ++n) {
      auto sp = stable_point_level(m, m, n);
      if (sp.t != static_cast<std::int64_t>(2 * sp.q - 1)) return "wrong stable point at n=" + std::to_string(n);
    }
    return std::string();
  });
  out.emplace_back("e_HK(m^t) = binom(t+d-1, d)", [] {
    for (int d : {2, 3}) {
      std::vector<std::string> vars;
      for (int i = 0; i < d; ++i) vars.push_back("x" + std::to_string(i));
      auto ring = RingSpec::make(2, vars);
      auto m = Ideal::maximal(ring);
      for (int t = 1; t <= 3; ++t) {
        auto e = hilbert_kunz(ideal_power(m, t), level_range(1, 3));
        if (!e.exact() || e.value != Rational(binomial(t + d - 1, d)))
          return "d=" + std::to_string(d) + " t=" + std::to_string(t);
      }
    }
    return std::string();
  });
  out.emplace_back("c = 10 and b = 5", [] {
    auto plane = RingSpec::make(2, {"x", "y"});
    auto m = Ideal::maximal(plane);
    if (f_threshold_level(m, ideal_power(m, 2), 2).value != 10) return std::string("c level");
    auto line = RingSpec::make(3, {"x"});
    if (f_limbus_level(Ideal::parse(line, {"x^2"}), Ideal::parse(line, {"x^3"}), 1).value != 5)
      return std::string("b level");
    return std::string();
  });
  out.emplace_back("scaling exact on principal ideals", [] {
    auto line = RingSpec::make(3, {"x"});
    auto I = Ideal::parse(line, {"x"}), J = Ideal::parse(line, {"x^3"});
    for (int n = 1; n <= 3; ++n) {
      auto q = static_cast<long long>(level_q(3, n));
      std::vector<Rational> grid;
      for (long long j = 0; j <= 4 * q; ++j) grid.push_back(Rational(j, q));
      auto rep = scaling_check(I, J, 2, n, grid);
      if (rep.max_power_residual() != 0 || rep.max_frobenius_residual() != 0)
        return "nonzero residual at n=" + std::to_string(n);
    }
    return std::string();
  });
  out.emplace_back("adjunction reproduces the regular plane", [] {
    auto line = RingSpec::make(2, {"x"});
    auto x = Ideal::parse(line, {"x"});
    std::vector<Rational> grid;
    for (int k = 0; k <= 30; ++k) grid.push_back(Rational(k, 10));
    auto rep = adjoin_variable_check(x, x, 1, 1, 4, grid);
    return rep.max_residual() <= Rational(3, static_cast<long long>(rep.q)) ? std::string() : "residual above 3/q";
  });
  out.emplace_back("staircase colength equals Groebner colength", [] {
    auto ring = RingSpec::make(2, {"x", "y", "z"});
    std::vector<std::vector<std::string>> bank{
        {"x^3", "y^2", "z^4", "x*y*z"}, {"x^2*y", "y^3", "x^4", "z^2", "x*z"}, {"x", "y^5", "z^5", "y^2*z^2"}};
    for (const auto& gens : bank) {
      Ideal a = Ideal::parse(ring, gens);
      auto fast = ideal_colength(a);
      auto slow = colength(buchberger(a.gens(), ring->context()));
      if (fast != slow) return "mismatch for " + a.to_string();
    }
    return std::string();
  });
  out.emplace_back("m^(q+1) not inside m^[q] for q >= 4", [] {
    auto m = Ideal::maximal(RingSpec::make(2, {"x", "y"}));
    for (std::uint64_t q : {4u, 8u, 16u})
      if (contains(frobenius_power(m, q), ideal_power(m, static_cast<std::int64_t>(q) + 1)))
        return "contained at q=" + std::to_string(q);
    return std::string();
  });
  return out;
}

}  // namespace verify_detail

// Invariant suite over the built-in example bank; the report marks the run
// as failed when any check does not hold.
inline Report run_verify_suite(unsigned threads) {
  using namespace verify_detail;
  std::vector<std::pair<std::string, Check>> checks;
  for (const auto& c : example_bank())
    for (int n = 1; n <= 3; ++n)
      checks.emplace_back("level properties: " + c.name + " n=" + std::to_string(n),
                          [c, n] { return level_properties(c, n); });
  for (auto& cf : closed_form_checks()) checks.push_back(std::move(cf));
  auto outcomes = parallel_map(
      checks.size(), [&](std::size_t k) { return run_check(checks[k].first, checks[k].second); }, threads);
  Report rep;
  rep.table.columns = {"check", "passed", "detail"};
  Json arr = Json::array();
  for (const auto& o : outcomes) {
    rep.table.rows.push_back({o.name, o.passed ? "true" : "false", o.detail});
    arr.push_back({{"check", o.name}, {"passed", o.passed}, {"detail", o.detail}});
    rep.failed = rep.failed || !o.passed;
  }
  rep.json = {{"job", "verify"}, {"passed", !rep.failed}, {"checks", arr}};
  return rep;
}

}  // namespace hk
