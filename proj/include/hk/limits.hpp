#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hk/estimate.hpp"
#include "hk/length_table.hpp"

namespace hk {

// Raised when no power of I lands in J^[q]: I is not inside the radical of J.
class NotBounded : public DomainError {
 public:
  using DomainError::DomainError;
};

inline std::uint64_t level_q(std::uint64_t p, int n) {
  if (n < 0) throw ConfigError("level n must be nonnegative");
  std::uint64_t q = 1;
  for (int i = 0; i < n; ++i) {
    if (q > (std::uint64_t{1} << 62) / p) throw OverflowError("q = " + std::to_string(p) + "^" + std::to_string(n) + " is too large");
    q *= p;
  }
  return q;
}

inline std::uint64_t level_q(const Ideal& I, int n) { return level_q(I.ring()->characteristic(), n); }

struct LevelSample {
  int n = 0;
  std::uint64_t q = 1;
  Rational s;
  std::int64_t ceil_sq = 0;
  std::uint64_t raw = 0;
  Rational normalized;
};

inline BigInt q_power(std::uint64_t q, int e) { return ipow(BigInt(q), e); }

inline std::int64_t ceil_times(const Rational& s, std::uint64_t q) { return to_int64(hk::ceil(s * BigInt(q))); }

// h_n(s) = l(R / (I^ceil(sq) + J^[q] + relations)) and its normalization by q^d.
inline LevelSample h_level(const Ideal& I, const Ideal& J, int n, const Rational& s, const Budget& budget = {}) {
  LevelSample out;
  out.n = n;
  out.q = level_q(I, n);
  out.s = s;
  out.ceil_sq = ceil_times(s, out.q);
  out.raw = length_table(I, J, out.q, budget)->raw(out.ceil_sq);
  out.normalized = Rational(BigInt(out.raw)) / q_power(out.q, I.ring()->dim());
  return out;
}

inline std::vector<int> level_range(int n_min, int n_max) {
  if (n_min > n_max) throw ConfigError("n_min must not exceed n_max");
  std::vector<int> out;
  for (int n = n_min; n <= n_max; ++n) out.push_back(n);
  return out;
}

// Limit of h_n(s)/q^d, extrapolated over the given levels.
inline InvariantEstimate h_estimate(const Ideal& I, const Ideal& J, const Rational& s, const std::vector<int>& levels,
                                    const Budget& budget = {}) {
  std::vector<LevelPoint> pts;
  for (int n : levels) {
    auto smp = h_level(I, J, n, s, budget);
    pts.push_back({n, smp.q, smp.normalized});
  }
  return fit_c_over_q("h(" + to_string(s) + ")", pts);
}

// f_n(s) = (h_n(s + 1/q) - h_n(s)) / q^(d-1).
inline Rational density_level(const Ideal& I, const Ideal& J, int n, const Rational& s, const Budget& budget = {}) {
  auto q = level_q(I, n);
  auto table = length_table(I, J, q, budget);
  auto t = ceil_times(s, q);
  BigInt diff = BigInt(table->raw(t + 1)) - BigInt(table->raw(t));
  int d = I.ring()->dim();
  if (d == 0) return Rational(diff) * BigInt(q);
  return Rational(diff) / q_power(q, d - 1);
}

// Weighted slice of R/J^[q] in degree floor(sq), divided by q^(d-1).
inline Rational graded_density_level(const Ideal& J, int n, const Rational& s, const Budget& budget = {}) {
  const auto& ring = J.ring();
  if (!J.is_homogeneous()) throw DomainError("graded density needs a weighted-homogeneous J");
  auto q = level_q(J, n);
  auto deg = to_int64(hk::floor(s * BigInt(q)));
  if (deg < 0) return 0;
  auto Jq = frobenius_power(J, q);
  std::uint64_t len = Jq.monomial_fast_path()
                          ? graded_slice_length(Jq.is_zero() ? MonomialIdeal(ring->nvars()) : Jq.to_monomial(), deg,
                                                ring->weights())
                          : graded_slice_length(Jq.groebner(budget), deg, ring->weights());
  int d = ring->dim();
  if (d == 0) return Rational(BigInt(len)) * BigInt(q);
  return Rational(BigInt(len)) / q_power(q, d - 1);
}

// l(R/J^[q]) / q^d over the levels.
inline InvariantEstimate hilbert_kunz(const Ideal& J, const std::vector<int>& levels, const Budget& budget = {}) {
  std::vector<LevelPoint> pts;
  for (int n : levels) {
    auto q = level_q(J, n);
    auto len = ideal_colength(frobenius_power(J, q), budget);
    if (!len) throw DomainError("J does not have finite colength");
    pts.push_back({n, q, Rational(BigInt(*len)) / q_power(q, J.ring()->dim())});
  }
  return fit_c_over_q("e_HK", pts);
}

// e(I) as the d-th finite difference of t -> l(R/I^t) at t_max, checked
// against the difference one step earlier.
inline InvariantEstimate hilbert_samuel(const Ideal& I, std::int64_t t_max, const Budget& budget = {}) {
  int d = I.ring()->dim();
  if (t_max < d + 3) throw ConfigError("t_max must be at least dim + 3");
  LengthTable table(I, Ideal::zero(I.ring()), 1, budget);
  auto diff_at = [&](std::int64_t t) {
    BigInt acc = 0;
    for (int k = 0; k <= d; ++k) {
      BigInt term = binomial(d, k) * BigInt(table.raw(t - k));
      acc += (k % 2 == 0) ? term : BigInt(-term);
    }
    return acc;
  };
  BigInt last = diff_at(t_max), prev = diff_at(t_max - 1);
  InvariantEstimate est;
  est.invariant = "e";
  est.value = Rational(last);
  est.samples = {Rational(prev), Rational(last)};
  est.levels = {static_cast<int>(t_max - 1), static_cast<int>(t_max)};
  est.model = last == prev ? "exact" : "C/q";
  est.error_bound = to_double(Rational(abs(last - prev)));
  return est;
}

namespace detail {

// Generators of I^t modulo an ideal A, kept either as a minimal monomial
// ideal outside A or as a linearly independent set of normal forms.
class PowerModA {
 public:
  PowerModA(const Ideal& I, const Ideal& A, const Budget& budget) : I_(I), A_(A), budget_(budget) {
    monomial_ = I.monomial_fast_path() && A.monomial_fast_path();
    if (monomial_) {
      a_mono_ = A.is_zero() ? MonomialIdeal(I.ring()->nvars()) : A.to_monomial();
    } else {
      basis_ = std::make_shared<GroebnerBasis>(A.groebner(budget));
    }
  }

  struct Power {
    std::vector<Monomial> mono;
    std::vector<Polynomial> poly;
    bool empty() const { return mono.empty() && poly.empty(); }
  };

  Power first() const {
    Power p;
    if (monomial_) {
      if (!I_.is_zero())
        for (const auto& g : I_.gens()) p.mono.push_back(g.lead_monomial());
      filter(p.mono);
    } else {
      std::vector<Polynomial> v;
      if (!I_.is_zero())
        for (const auto& g : I_.gens()) v.push_back(normal_form(g, *basis_));
      p.poly = echelon(std::move(v));
    }
    return p;
  }

  Power multiply(const Power& a, const Power& b) const {
    Power p;
    if (monomial_) {
      for (const auto& x : a.mono)
        for (const auto& y : b.mono) p.mono.push_back(x * y);
      filter(p.mono);
    } else {
      std::vector<Polynomial> v;
      for (const auto& x : a.poly)
        for (const auto& y : b.poly) v.push_back(normal_form(x * y, *basis_));
      p.poly = echelon(std::move(v));
      if (p.poly.size() > budget_.max_basis)
        throw BudgetExceeded("power modulo the Frobenius ideal has " + std::to_string(p.poly.size()) + " elements");
    }
    return p;
  }

  // Some element of the power outside A, as a polynomial.
  Polynomial witness(const Power& p) const {
    if (!p.mono.empty()) return Polynomial::monomial(I_.ring()->context(), p.mono.front());
    return p.poly.front();
  }

 private:
  void filter(std::vector<Monomial>& ms) const {
    std::erase_if(ms, [&](const Monomial& m) { return a_mono_.contains(m); });
    ms = minimalize(std::move(ms), I_.ring()->nvars()).gens();
  }

  static std::vector<Polynomial> echelon(std::vector<Polynomial> v) {
    std::map<Monomial, Polynomial> rows;
    for (auto& f : v) {
      while (!f.is_zero()) {
        auto it = rows.find(f.lead_monomial());
        if (it == rows.end()) break;
        const auto& F = f.field();
        f = f.add_multiple(it->second, Monomial(f.nvars()), F.neg(f.lead_coeff()));
      }
      if (!f.is_zero()) rows.emplace(f.lead_monomial(), f.monic());
    }
    std::vector<Polynomial> out;
    for (auto& [m, f] : rows) out.push_back(std::move(f));
    return out;
  }

  Ideal I_, A_;
  Budget budget_;
  bool monomial_ = false;
  MonomialIdeal a_mono_{0};
  std::shared_ptr<GroebnerBasis> basis_;
};

}  // namespace detail

// Whether every element of `inner` has a power in `outer` (+ relations).
inline bool in_radical(const Ideal& inner, const Ideal& outer, const Budget& budget = {}) {
  check_same_ring(inner, outer);
  if (inner.is_zero()) return true;
  if (inner.monomial_fast_path() && outer.monomial_fast_path()) {
    if (outer.is_zero()) return false;
    auto o = outer.to_monomial();
    for (const auto& g : inner.gens()) {
      auto s = g.lead_monomial().support_mask();
      bool ok = std::any_of(o.gens().begin(), o.gens().end(),
                            [&](const Monomial& h) { return (h.support_mask() & ~s) == 0; });
      if (!ok) return false;
    }
    return true;
  }
  bool inner_positive = std::none_of(inner.gens().begin(), inner.gens().end(), [](const Polynomial& g) {
    return std::any_of(g.terms().begin(), g.terms().end(), [](const Term& t) { return t.monomial.is_one(); });
  });
  if (inner_positive && is_finite_colength(outer, budget)) return true;
  // Frobenius powers of each generator, up to a fixed cap.
  auto p = outer.ring()->characteristic();
  for (const auto& g : inner.gens()) {
    bool found = false;
    for (std::uint64_t q = 1; q <= (std::uint64_t{1} << 12) && !found; q *= p)
      found = contains(outer, Ideal(outer.ring(), {g.frobenius(q)}), budget);
    if (!found) return false;
  }
  return true;
}

struct ThresholdResult {
  std::int64_t value = 0;
  std::uint64_t q = 1;
  std::optional<Polynomial> witness;  // element of I^value outside J^[q]
};

// c_n = max{t >= 0 : I^t not inside J^[q]}, by doubling then bisection.
inline ThresholdResult f_threshold_level(const Ideal& I, const Ideal& J, int n, const Budget& budget = {}) {
  check_same_ring(I, J);
  ThresholdResult res;
  res.q = level_q(I, n);
  auto Jq = frobenius_power(J, res.q);
  if (!in_radical(I, J, budget)) throw NotBounded("I is not contained in the radical of J: no power of I lies in J^[q]");
  if (contains(Jq, Ideal::unit(I.ring()), budget)) return res;  // J^[q] is the whole ring
  detail::PowerModA pm(I, Jq, budget);
  using Power = detail::PowerModA::Power;
  std::vector<Power> doubling{pm.first()};  // doubling[k] is I^(2^k) mod J^[q]
  if (doubling[0].empty()) return res;       // I inside J^[q]: c = 0
  const std::int64_t cap = std::int64_t{1} << 40;
  while (!doubling.back().empty()) {
    if ((std::int64_t{1} << doubling.size()) > cap) throw NotBounded("no power of I up to 2^40 lies in J^[q]");
    doubling.push_back(pm.multiply(doubling.back(), doubling.back()));
  }
  // I^lo is outside J^[q], I^(lo + 2^k) for the last k is inside.
  std::size_t top = doubling.size() - 1;
  std::int64_t lo = std::int64_t{1} << (top - 1);
  Power lo_power = doubling[top - 1];
  for (std::size_t k = top - 1; k-- > 0;) {
    Power candidate = pm.multiply(lo_power, doubling[k]);
    if (!candidate.empty()) {
      lo += std::int64_t{1} << k;
      lo_power = std::move(candidate);
    }
  }
  res.value = lo;
  res.witness = pm.witness(lo_power);
  return res;
}

struct LimbusResult {
  std::int64_t value = 0;
  std::uint64_t q = 1;
  bool not_in_radical = false;  // J not inside the radical of I: limit 0
  std::optional<Polynomial> witness;  // element of J^[q] outside I^value
};

// b_n = min{t : J^[q] not inside I^t}; 0 when J is not inside the radical of I.
inline LimbusResult f_limbus_level(const Ideal& I, const Ideal& J, int n, const Budget& budget = {}) {
  check_same_ring(I, J);
  LimbusResult res;
  res.q = level_q(I, n);
  if (!in_radical(J, I, budget)) {
    res.not_in_radical = true;
    return res;
  }
  auto Jq = frobenius_power(J, res.q);
  if (Jq.is_zero() || contains(Ideal::zero(I.ring()), Jq, budget))
    throw DomainError("J^[q] is zero in the ring: the limbus is unbounded");
  const auto& w = I.ring()->weights();
  std::uint64_t max_deg = 0;
  for (const auto& g : Jq.gens()) max_deg = std::max(max_deg, g.weighted_degree(w));
  auto cap = static_cast<std::int64_t>(max_deg) + 2;
  for (std::int64_t t = 1; t <= cap; ++t) {
    auto w_opt = containment_witness(ideal_power(I, t, budget), Jq, budget);
    if (w_opt) {
      res.value = t;
      res.witness = *w_opt;
      return res;
    }
  }
  throw DomainError("J^[q] lies in every power of I up to " + std::to_string(cap));
}

struct StablePoint {
  std::int64_t t = 0;
  std::uint64_t q = 1;
  Rational ratio;
  std::int64_t threshold = 0;
  static constexpr const char* label = "c-stable point";
};

// min{t : h_n(t/q) = l(R/J^[q])}, which must equal c_n + 1.
inline StablePoint stable_point_level(const Ideal& I, const Ideal& J, int n, const Budget& budget = {}) {
  StablePoint sp;
  sp.q = level_q(I, n);
  auto table = length_table(I, J, sp.q, budget);
  auto frob = table->frobenius_length();
  if (!frob) throw DomainError("J does not have finite colength");
  auto c = f_threshold_level(I, J, n, budget);
  sp.threshold = c.value;
  std::int64_t t = 0;
  while (table->raw(t) != *frob) {
    ++t;
    if (t > c.value + 1)
      throw VerificationFailure("length table has not reached l(R/J^[q]) at c_n + 1 = " + std::to_string(c.value + 1));
  }
  if (t != c.value + 1)
    throw VerificationFailure("stable point " + std::to_string(t) + " differs from c_n + 1 = " +
                              std::to_string(c.value + 1));
  sp.t = t;
  sp.ratio = Rational(t, BigInt(sp.q));
  return sp;
}

inline InvariantEstimate f_threshold_estimate(const Ideal& I, const Ideal& J, const std::vector<int>& levels,
                                              const Budget& budget = {}) {
  std::vector<LevelPoint> pts;
  for (int n : levels) {
    auto c = f_threshold_level(I, J, n, budget);
    pts.push_back({n, c.q, Rational(c.value, BigInt(c.q))});
  }
  return fit_c_over_q("c^J(I)", pts);
}

inline InvariantEstimate f_limbus_estimate(const Ideal& I, const Ideal& J, const std::vector<int>& levels,
                                           const Budget& budget = {}) {
  std::vector<LevelPoint> pts;
  for (int n : levels) {
    auto b = f_limbus_level(I, J, n, budget);
    pts.push_back({n, b.q, Rational(b.value, BigInt(b.q))});
  }
  return fit_c_over_q("b^J(I)", pts);
}

}  // namespace hk
