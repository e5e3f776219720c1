#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hk/limits.hpp"

namespace hk {

using Complex = std::complex<double>;

inline Rational rational_pow(const Rational& x, int e) {
  return Rational(ipow(numerator(x), e), ipow(denominator(x), e));
}

// ---------------------------------------------------------------- Boij ratios

struct BoijResult {
  std::uint64_t q = 1;
  std::size_t mu = 0;
  std::vector<Rational> ratios;       // index j
  std::optional<std::size_t> violation;  // first j with ratio[j+1] > ratio[j]
  bool non_increasing() const noexcept { return !violation.has_value(); }
};

// (raw(j+1) - raw(j)) / binom(mu+j-1, mu-1) for j = 0..j_max.
inline BoijResult boij_ratios(const Ideal& I, const Ideal& J, int n, std::int64_t j_max, const Budget& budget = {}) {
  BoijResult res;
  res.q = level_q(I, n);
  res.mu = I.num_generators();
  if (res.mu == 0) throw DomainError("Boij ratios need a nonzero ideal I");
  auto table = length_table(I, J, res.q, budget);
  auto mu = static_cast<std::int64_t>(res.mu);
  for (std::int64_t j = 0; j <= j_max; ++j) {
    BigInt d = BigInt(table->raw(j + 1)) - BigInt(table->raw(j));
    res.ratios.push_back(Rational(d, binomial(mu + j - 1, mu - 1)));
  }
  for (std::size_t j = 0; j + 1 < res.ratios.size() && !res.violation; ++j)
    if (res.ratios[j + 1] > res.ratios[j]) res.violation = j;
  return res;
}

// ------------------------------------------------------- convexity functional

struct ConvexityResult {
  std::uint64_t q = 1;
  Rational s0;
  std::vector<std::pair<Rational, Rational>> values;  // (s, H_n(s, s0))
  std::optional<std::int64_t> violation;              // first j whose slope increases
  bool convex() const noexcept { return !violation.has_value(); }
};

// H_n(s, s0) = sum_{j=ceil(s0 q)}^{ceil(sq)-1} q^(mu-d-1) D_j / binom(mu+j-1, mu-1),
// with D_j = raw(j+1) - raw(j), evaluated on `grid` and checked for discrete
// convexity on the q-grid covering it.
inline ConvexityResult convex_functional(const Ideal& I, const Ideal& J, int n, const Rational& s0,
                                         const std::vector<Rational>& grid, const Budget& budget = {}) {
  if (s0 <= 0) throw ConfigError("s0 must be positive");
  ConvexityResult res;
  res.q = level_q(I, n);
  res.s0 = s0;
  auto table = length_table(I, J, res.q, budget);
  auto mu = static_cast<std::int64_t>(I.num_generators());
  if (mu == 0) throw DomainError("the convexity functional needs a nonzero ideal I");
  const int d = I.ring()->dim();
  const Rational scale = rpow(BigInt(res.q), mu - d - 1);
  const std::int64_t j0 = ceil_times(s0, res.q);
  std::int64_t j_end = j0;
  for (const auto& s : grid) {
    if (s < s0) throw ConfigError("grid points must not lie below s0");
    j_end = std::max(j_end, ceil_times(s, res.q));
  }
  // slope[j - j0] = H_n((j+1)/q) - H_n(j/q)
  std::vector<Rational> slope;
  for (std::int64_t j = j0; j < j_end + 1; ++j) {
    BigInt d_j = BigInt(table->raw(j + 1)) - BigInt(table->raw(j));
    slope.push_back(scale * Rational(d_j, binomial(mu + j - 1, mu - 1)));
  }
  std::vector<Rational> prefix{Rational(0)};
  for (const auto& v : slope) prefix.push_back(prefix.back() + v);
  for (const auto& s : grid) res.values.emplace_back(s, prefix[static_cast<std::size_t>(ceil_times(s, res.q) - j0)]);
  for (std::size_t k = 0; k + 1 < slope.size() && !res.violation; ++k)
    if (slope[k + 1] > slope[k]) res.violation = j0 + static_cast<std::int64_t>(k);
  return res;
}

// ------------------------------------------------- Frobenius-Poincare function

struct FrobeniusPoincareResult {
  Complex value;
  std::int64_t terms = 0;
  double tail_bound = 0.0;  // bound on the omitted tail (0 for finite sums)
};

// F_n(y) = sum_j (raw(j+1) - raw(j)) e^{-i y j / q} / q^d.
inline FrobeniusPoincareResult frobenius_poincare_level(const Ideal& I, const Ideal& J, int n, Complex y,
                                                        const Budget& budget = {}, double tail_tolerance = 1e-12) {
  FrobeniusPoincareResult res;
  auto q = level_q(I, n);
  auto table = length_table(I, J, q, budget);
  const int d = I.ring()->dim();
  const double qd = std::pow(static_cast<double>(q), d);
  const Complex minus_i_y_over_q = Complex(0, -1) * y / static_cast<double>(q);
  auto frob = table->frobenius_length();
  if (frob) {
    // Finite sum: the differences vanish from the stable index on.
    auto stable = table->stable_index(std::numeric_limits<std::int64_t>::max());
    std::int64_t last = stable ? *stable : 0;
    for (std::int64_t j = 0; j < last; ++j) {
      double dj = static_cast<double>(table->raw(j + 1)) - static_cast<double>(table->raw(j));
      res.value += dj * std::exp(minus_i_y_over_q * static_cast<double>(j));
    }
    res.value /= qd;
    res.terms = last;
    return res;
  }
  if (!(y.imag() < 0))
    throw DomainError("J is not of finite colength: F_n(y) converges only for Im(y) < 0");
  // Tail bound from the Boij ratios: D_j <= D_0 binom(mu+j-1, mu-1).
  const double r = std::exp(y.imag() / static_cast<double>(q));
  const auto mu = static_cast<double>(std::max<std::size_t>(I.num_generators(), 1));
  const double d0 = static_cast<double>(table->raw(1));
  double binom = 1.0;  // binom(mu+j-1, mu-1) at the current j
  double rj = 1.0;
  const std::int64_t max_terms = static_cast<std::int64_t>(budget.max_degree) * 16;
  for (std::int64_t j = 0;; ++j) {
    if (j >= max_terms) throw BudgetExceeded("Frobenius-Poincare tail needs more than " + std::to_string(max_terms) + " terms");
    double dj = static_cast<double>(table->raw(j + 1)) - static_cast<double>(table->raw(j));
    res.value += dj * std::exp(minus_i_y_over_q * static_cast<double>(j));
    // Bound for sum_{k > j}: geometric once the term ratio drops below 1.
    double next_binom = binom * (mu + static_cast<double>(j)) / (static_cast<double>(j) + 1.0);
    double next_term = d0 * next_binom * rj * r;
    double ratio = (mu + static_cast<double>(j) + 1.0) / (static_cast<double>(j) + 2.0) * r;
    if (ratio < 1.0) {
      double tail = next_term / (1.0 - ratio);
      if (tail / qd < tail_tolerance) {
        res.tail_bound = tail / qd;
        res.terms = j + 1;
        break;
      }
    }
    binom = next_binom;
    rj *= r;
  }
  res.value /= qd;
  return res;
}

// int_0^C h(t) i y e^{-iyt} dt + plateau e^{-iyC} by the composite trapezoid
// rule on the given samples (sorted, C = last abscissa).
inline Complex frobenius_poincare_integral(const std::vector<std::pair<double, double>>& samples, double plateau,
                                           Complex y) {
  if (samples.empty()) throw DomainError("quadrature needs at least one sample");
  const Complex iy = Complex(0, 1) * y;
  auto f = [&](double t, double h) { return h * iy * std::exp(-iy * t); };
  Complex acc = 0;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    auto [t0, h0] = samples[k];
    auto [t1, h1] = samples[k + 1];
    if (t1 < t0) throw DomainError("quadrature samples must be sorted");
    acc += 0.5 * (t1 - t0) * (f(t0, h0) + f(t1, h1));
  }
  return acc + plateau * std::exp(-iy * samples.back().first);
}

// Level-n samples (j/q, h_n(j/q)) for j = 0..stable index, plus the plateau.
inline std::pair<std::vector<std::pair<double, double>>, double> h_samples_to_plateau(const Ideal& I, const Ideal& J,
                                                                                        int n, const Budget& budget = {}) {
  auto q = level_q(I, n);
  auto table = length_table(I, J, q, budget);
  auto frob = table->frobenius_length();
  if (!frob) throw DomainError("J does not have finite colength");
  auto stable = *table->stable_index(std::numeric_limits<std::int64_t>::max());
  const double qd = std::pow(static_cast<double>(q), I.ring()->dim());
  std::vector<std::pair<double, double>> out;
  for (std::int64_t j = 0; j <= stable; ++j)
    out.emplace_back(static_cast<double>(j) / static_cast<double>(q), static_cast<double>(table->raw(j)) / qd);
  return {out, static_cast<double>(*frob) / qd};
}

// ------------------------------------------------------------- scaling checks

struct ResidualPoint {
  Rational s;
  Rational lhs, rhs;
  Rational residual() const { return abs(lhs - rhs); }
};

struct ScalingReport {
  int n = 0;
  std::uint64_t q = 1;
  std::int64_t n0 = 1;
  std::vector<ResidualPoint> power;      // h_n(I^n0, J)(s) vs h_n(I, J)(s n0)
  std::vector<ResidualPoint> frobenius;  // h_n(I, J^[p^n0])(s) vs p^(n0 d) h_{n+n0}(I, J)(s / p^n0)
  Rational max_power_residual() const {
    Rational m = 0;
    for (const auto& r : power) m = std::max(m, r.residual());
    return m;
  }
  Rational max_frobenius_residual() const {
    Rational m = 0;
    for (const auto& r : frobenius) m = std::max(m, r.residual());
    return m;
  }
};

inline ScalingReport scaling_check(const Ideal& I, const Ideal& J, std::int64_t n0, int n,
                                   const std::vector<Rational>& grid, const Budget& budget = {}) {
  if (n0 < 1) throw ConfigError("n0 must be a positive integer");
  ScalingReport rep;
  rep.n = n;
  rep.q = level_q(I, n);
  rep.n0 = n0;
  const auto p = I.ring()->characteristic();
  const auto pn0 = level_q(p, static_cast<int>(n0));
  const int d = I.ring()->dim();
  auto In0 = ideal_power(I, n0, budget);
  auto Jf = frobenius_power(J, pn0);
  for (const auto& s : grid) {
    rep.power.push_back({s, h_level(In0, J, n, s, budget).normalized, h_level(I, J, n, s * n0, budget).normalized});
    Rational rhs = Rational(ipow(BigInt(pn0), d)) * h_level(I, J, n + static_cast<int>(n0), s / BigInt(pn0), budget).normalized;
    rep.frobenius.push_back({s, h_level(I, Jf, n, s, budget).normalized, rhs});
  }
  return rep;
}

// ---------------------------------------------------------- adjunction check

// Integral over [a, b] of the piecewise-linear interpolant of (j/q, v_j),
// with value 0 left of 0 and v_last right of the last sample.
inline Rational integrate_piecewise_linear(const std::vector<Rational>& v, std::uint64_t q, Rational a, Rational b) {
  if (b <= a) return 0;
  const BigInt Q(q);
  auto value_at = [&](const Rational& x) -> Rational {
    if (x <= 0) return 0;
    Rational xq = x * Q;
    BigInt j = hk::floor(xq);
    auto jj = static_cast<std::size_t>(to_int64(j));
    if (jj + 1 >= v.size()) return v.back();
    Rational frac = xq - Rational(j);
    return v[jj] + (v[jj + 1] - v[jj]) * frac;
  };
  Rational acc = 0;
  if (a < 0) a = 0;
  if (b <= a) return 0;
  // Breakpoints j/q strictly inside (a, b).
  Rational x = a;
  BigInt j = hk::floor(a * Q) + 1;
  while (true) {
    Rational next(j, Q);
    if (next >= b) break;
    acc += (next - x) * (value_at(x) + value_at(next)) / 2;
    x = next;
    j += 1;
    if (j > BigInt(v.size()) + 1) {
      // Constant tail.
      acc += (b - x) * v.back();
      return acc;
    }
  }
  acc += (b - x) * (value_at(x) + value_at(b)) / 2;
  return acc;
}

struct AdjunctionReport {
  int n = 0;
  std::uint64_t q = 1;
  std::uint64_t alpha = 1, beta = 1;
  std::vector<ResidualPoint> points;  // lhs: extended ring level value; rhs: alpha * integral
  Rational max_residual() const {
    Rational m = 0;
    for (const auto& r : points) m = std::max(m, r.residual());
    return m;
  }
};

inline std::string fresh_variable_name(const RingSpec& ring) {
  std::string name = "t";
  auto taken = [&](const std::string& s) {
    return std::find(ring.names().begin(), ring.names().end(), s) != ring.names().end();
  };
  for (int k = 0; taken(name); ++k) name = "t" + std::to_string(k);
  return name;
}

// Compares h_n of (I + (t^alpha), J + (t^beta)) in R[t] with
// alpha * int_{s - beta/alpha}^{s} h_n(I, J)(x) dx.
inline AdjunctionReport adjoin_variable_check(const Ideal& I, const Ideal& J, std::uint64_t alpha, std::uint64_t beta,
                                              int n, const std::vector<Rational>& grid, const Budget& budget = {}) {
  if (alpha == 0 || beta == 0) throw ConfigError("alpha and beta must be positive");
  AdjunctionReport rep;
  rep.n = n;
  rep.q = level_q(I, n);
  rep.alpha = alpha;
  rep.beta = beta;
  const auto& ring = I.ring();
  auto ext = ring->adjoin_variable(fresh_variable_name(*ring), 1);
  auto lift = [&](const Ideal& A, std::uint64_t power) {
    std::vector<Polynomial> gens;
    if (!A.is_zero())
      for (const auto& g : A.gens()) gens.push_back(ext->parse(g.to_string()));
    gens.push_back(ext->variable(ext->nvars() - 1, power));
    return Ideal(ext, std::move(gens));
  };
  Ideal Ie = lift(I, alpha), Je = lift(J, beta);
  auto table = length_table(I, J, rep.q, budget);
  const BigInt qd = q_power(rep.q, ring->dim());
  Rational s_max = 0;
  for (const auto& s : grid) s_max = std::max(s_max, s);
  std::int64_t j_max = std::max<std::int64_t>(1, ceil_times(s_max, rep.q) + 1);
  std::vector<Rational> v;
  for (std::int64_t j = 0; j <= j_max; ++j) v.push_back(Rational(BigInt(table->raw(j))) / qd);
  const Rational width(static_cast<long long>(beta), static_cast<long long>(alpha));
  for (const auto& s : grid) {
    Rational rhs = Rational(static_cast<long long>(alpha)) * integrate_piecewise_linear(v, rep.q, s - width, s);
    rep.points.push_back({s, h_level(Ie, Je, n, s, budget).normalized, rhs});
  }
  return rep;
}

// --------------------------------------------------------------- asymptotes

struct AsymptoteSide {
  int exponent = 0;                                   // power of s dividing h
  std::vector<std::pair<Rational, Rational>> ratios;  // (s, h_est(s) / s^exponent)
  Rational value;                                     // last ratio
  Rational drift;                                     // |last - previous|
  std::optional<Rational> reference;
  std::string reference_name;
};

struct AsymptoteReport {
  AsymptoteSide near_zero, at_infinity;
};

inline AsymptoteReport asymptote_check(const Ideal& I, const Ideal& J, const std::vector<int>& levels, int points = 4,
                                       const Budget& budget = {}) {
  if (levels.empty()) throw ConfigError("asymptote check needs levels");
  if (I.is_zero()) throw DomainError("the near-zero asymptote needs I != 0");
  AsymptoteReport rep;
  const auto& ring = I.ring();
  const int d = ring->dim();
  const int d_I = quotient_dimension(I, budget);
  const int d_J = quotient_dimension(J, budget);
  const auto p = static_cast<long long>(ring->characteristic());
  const int n_min = *std::min_element(levels.begin(), levels.end());
  auto ratio_at = [&](const Rational& s, int e) {
    return h_estimate(I, J, s, levels, budget).value / rational_pow(s, e);
  };
  auto finish = [](AsymptoteSide& side) {
    side.value = side.ratios.back().second;
    side.drift = side.ratios.size() > 1 ? abs(side.ratios.back().second - side.ratios[side.ratios.size() - 2].second)
                                        : Rational(0);
  };

  rep.near_zero.exponent = d - std::max(d_I, 0);
  for (int k = 1; k <= std::min(points, std::max(n_min, 1)); ++k) {
    Rational s(1, ipow(BigInt(p), k));
    rep.near_zero.ratios.emplace_back(s, ratio_at(s, rep.near_zero.exponent));
  }
  finish(rep.near_zero);
  if (d_I == 0) {
    auto e = hilbert_samuel(I, d + 6, budget);
    rep.near_zero.reference = e.value / Rational(factorial(d));
    rep.near_zero.reference_name = "e(I)/d!";
  }

  if (d_J <= 0) {
    auto ehk = hilbert_kunz(J, levels, budget);
    rep.at_infinity.exponent = 0;
    auto sp = stable_point_level(I, J, *std::max_element(levels.begin(), levels.end()), budget);
    Rational s = Rational(hk::ceil(sp.ratio) + 1);
    for (int k = 0; k < points; ++k) {
      Rational sk = s * (k + 1);
      rep.at_infinity.ratios.emplace_back(sk, h_estimate(I, J, sk, levels, budget).value);
    }
    rep.at_infinity.reference = ehk.value;
    rep.at_infinity.reference_name = "e_HK(J)";
  } else {
    rep.at_infinity.exponent = d_J;
    for (int k = 0; k < points; ++k) {
      Rational s(static_cast<long long>(1) << (k + 1));
      rep.at_infinity.ratios.emplace_back(s, ratio_at(s, d_J));
    }
  }
  finish(rep.at_infinity);
  return rep;
}

// --------------------------------------------------------- inequality report

struct CheckReport {
  std::string check;
  std::string inputs;
  int level = 0;
  Rational lhs, rhs;
  bool holds = false;
  std::optional<std::string> witness;
  std::string relation;  // how lhs and rhs are compared
};

struct InequalityInputs {
  int r = 0;  // user-supplied height / number of parameters generating I
  std::vector<int> levels;
  std::vector<Rational> grid;  // for the normalized monotonicity check
};

struct InequalityReport {
  std::vector<CheckReport> checks;
  std::vector<std::pair<std::string, std::string>> skipped;  // (check, reason)
};

inline InequalityReport inequality_report(const Ideal& I, const Ideal& J, const InequalityInputs& in,
                                          const Budget& budget = {}) {
  if (in.r < 1) throw ConfigError("r (the number of parameters generating I) must be supplied and positive");
  if (in.levels.empty()) throw ConfigError("inequality report needs levels");
  InequalityReport rep;
  auto& out = rep.checks;
  const auto& ring = I.ring();
  const int d = ring->dim();
  const int top = *std::max_element(in.levels.begin(), in.levels.end());
  const std::string inputs = "I=" + I.to_string() + " J=" + J.to_string() + " r=" + std::to_string(in.r);
  const bool I_primary = is_finite_colength(I, budget);
  const bool J_primary = is_finite_colength(J, budget);

  if (!(I_primary && d >= 1)) rep.skipped.emplace_back("watanabe: e_HK(I) > e(I)/d!", "I is not of finite colength");
  if (I_primary && d >= 1) {
    CheckReport c{"watanabe: e_HK(I) > e(I)/d!", inputs, top, 0, 0, false, std::nullopt, ">"};
    c.lhs = hilbert_kunz(I, in.levels, budget).value;
    c.rhs = hilbert_samuel(I, d + 6, budget).value / Rational(factorial(d));
    c.holds = c.lhs > c.rhs;
    // Witness of I^{q+1} not inside I^[q] at the largest level where it exists.
    for (int n = top; n >= 1 && !c.witness; --n) {
      auto q = static_cast<std::int64_t>(level_q(I, n));
      if (auto w = containment_witness(frobenius_power(I, static_cast<std::uint64_t>(q)), ideal_power(I, q + 1, budget), budget))
        c.witness = w->to_string() + " (q=" + std::to_string(q) + ")";
    }
    out.push_back(std::move(c));
  }

  const std::string bound_name = "e_HK(J) <= c^J(I)^r / r! * e_HK(J R/I)";
  const std::string orig_name = "e_HK(J) <= (c^J(I)/r)^r * e_HK(J R/I)";
  const std::string hmtw_name = "e(I)/d^d >= h(x0)/x0^d at x0 = c^J(I)";
  const bool I_params = I.num_generators() == static_cast<std::size_t>(in.r) && in.r <= d;
  const bool J_sop = J.num_generators() == static_cast<std::size_t>(d);
  if (!J_primary) {
    for (const auto& name : {bound_name, orig_name, hmtw_name}) rep.skipped.emplace_back(name, "J is not of finite colength");
  } else {
    auto ehk = hilbert_kunz(J, in.levels, budget).value;
    auto c_est = f_threshold_estimate(I, J, in.levels, budget).value;
    if (I_params) {
      auto quotient = ring->quotient(I.is_zero() ? std::vector<Polynomial>{} : I.gens());
      std::vector<Polynomial> jg;
      for (const auto& g : J.gens()) jg.push_back(quotient->parse(g.to_string()));
      auto ehk_quot = hilbert_kunz(Ideal(quotient, jg), in.levels, budget).value;

      CheckReport bound{bound_name, inputs, top, ehk, 0, false, std::nullopt, "<="};
      bound.rhs = rational_pow(c_est, in.r) / Rational(factorial(in.r)) * ehk_quot;
      bound.holds = bound.lhs <= bound.rhs;
      out.push_back(bound);

      CheckReport orig{orig_name, inputs, top, ehk, 0, false, std::nullopt, "<="};
      orig.rhs = rational_pow(c_est / in.r, in.r) * ehk_quot;
      orig.holds = orig.lhs <= orig.rhs;
      out.push_back(orig);
    } else {
      for (const auto& name : {bound_name, orig_name})
        rep.skipped.emplace_back(name, "I is not generated by r <= dim elements");
    }

    if (I_primary && J_sop && d >= 1) {
      CheckReport hm{hmtw_name, inputs, top, 0, 0, false, std::nullopt, ">="};
      hm.lhs = hilbert_samuel(I, d + 6, budget).value / Rational(ipow(BigInt(d), d));
      hm.rhs = h_estimate(I, J, c_est, in.levels, budget).value / rational_pow(c_est, d);
      hm.holds = hm.lhs >= hm.rhs;
      out.push_back(hm);
    } else {
      rep.skipped.emplace_back(hmtw_name, "needs I of finite colength and J generated by dim elements");
    }
  }

  if (!in.grid.empty()) {
    // Largest increase of h(s)/s^r between consecutive grid points against
    // the combined extrapolation error.
    CheckReport mono{"h(s)/s^r non-increasing", inputs, top, 0, 0, true, std::nullopt, "<="};
    std::optional<Rational> prev;
    double prev_err = 0;
    Rational worst = 0;
    double tol = 0;
    for (const auto& s : in.grid) {
      if (s <= 0) continue;
      auto e = h_estimate(I, J, s, in.levels, budget);
      Rational v = e.value / rational_pow(s, in.r);
      double err = e.error_bound / to_double(rational_pow(s, in.r));
      if (prev) {
        Rational inc = v - *prev;
        if (inc > worst) {
          worst = inc;
          tol = err + prev_err;
        }
      }
      prev = v;
      prev_err = err;
    }
    mono.lhs = worst;
    mono.rhs = Rational(static_cast<long long>(std::ceil(tol * 1e12)), 1000000000000LL);
    mono.holds = mono.lhs <= mono.rhs;
    out.push_back(mono);
  }
  return rep;
}

}  // namespace hk
