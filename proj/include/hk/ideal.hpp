#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hk/rational.hpp"
#include "hk/ring.hpp"

namespace hk {

// Ideal of a RingSpec given by generators. The zero ideal is represented by
// the single generator 0; monomial generator sets are kept minimal.
class Ideal {
 public:
  Ideal(RingSpecPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)) {
    std::vector<Polynomial> nz;
    for (auto& g : gens)
      if (!g.is_zero()) nz.push_back(g.with_context(ring_->context()).monic());
    bool monomial = std::all_of(nz.begin(), nz.end(), [](const Polynomial& g) { return g.is_monomial(); });
    if (monomial && !nz.empty()) {
      std::vector<Monomial> ms;
      for (const auto& g : nz) ms.push_back(g.lead_monomial());
      nz.clear();
      MonomialIdeal minimal = minimalize(std::move(ms), ring_->nvars());
      for (const auto& m : minimal.gens())
        nz.push_back(Polynomial::monomial(ring_->context(), m));
    } else {
      std::sort(nz.begin(), nz.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.canonical_string() < b.canonical_string();
      });
      nz.erase(std::unique(nz.begin(), nz.end()), nz.end());
    }
    if (nz.empty()) nz.push_back(ring_->zero());
    gens_ = std::move(nz);
  }

  static Ideal parse(RingSpecPtr ring, const std::vector<std::string>& texts) {
    std::vector<Polynomial> gens;
    for (const auto& t : texts) gens.push_back(ring->parse(t));
    return Ideal(std::move(ring), std::move(gens));
  }
  static Ideal unit(RingSpecPtr ring) {
    auto one = ring->one();
    return Ideal(std::move(ring), {one});
  }
  static Ideal zero(RingSpecPtr ring) { return Ideal(std::move(ring), {}); }
  // The ideal of all variables.
  static Ideal maximal(RingSpecPtr ring) {
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < ring->nvars(); ++i) gens.push_back(ring->variable(i));
    return Ideal(std::move(ring), std::move(gens));
  }

  const RingSpecPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& gens() const noexcept { return gens_; }
  bool is_zero() const noexcept { return gens_.size() == 1 && gens_[0].is_zero(); }
  bool is_unit_generated() const noexcept {
    return std::any_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_constant(); });
  }
  // Number of generators (0 for the zero ideal).
  std::size_t num_generators() const noexcept { return is_zero() ? 0 : gens_.size(); }

  bool is_monomial() const noexcept {
    return is_zero() || std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_monomial(); });
  }
  // Combinatorial route: polynomial ring and monomial generators.
  bool monomial_fast_path() const noexcept { return ring_->is_polynomial_ring() && is_monomial(); }

  MonomialIdeal to_monomial() const {
    if (!is_monomial()) throw DomainError("ideal is not monomial");
    std::vector<Monomial> ms;
    if (!is_zero())
      for (const auto& g : gens_) ms.push_back(g.lead_monomial());
    return minimalize(std::move(ms), ring_->nvars());
  }

  bool is_homogeneous() const {
    return std::all_of(gens_.begin(), gens_.end(),
                       [&](const Polynomial& g) { return g.is_homogeneous(ring_->weights()); });
  }

  // Basis of this ideal plus the ring relations in the ring's default order.
  GroebnerBasis groebner(const Budget& budget = {}) const {
    if (monomial_fast_path()) {
      std::vector<Polynomial> el;
      if (!is_zero()) el = gens_;
      std::sort(el.begin(), el.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ring_->context()->order.greater(a.lead_monomial(), b.lead_monomial());
      });
      return GroebnerBasis(ring_->context(), std::move(el));
    }
    return buchberger(*ring_, gens_, budget);
  }

  std::string key() const {
    std::vector<std::string> ks;
    for (const auto& g : gens_) ks.push_back(g.canonical_string());
    std::sort(ks.begin(), ks.end());
    std::string k = ring_->key() + "#";
    for (const auto& s : ks) k += s + ";";
    return k;
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? ", " : "") + gens_[i].to_string();
    return out + ")";
  }

 private:
  RingSpecPtr ring_;
  std::vector<Polynomial> gens_;
};

inline void check_same_ring(const Ideal& a, const Ideal& b) {
  if (a.ring() != b.ring() && a.ring()->key() != b.ring()->key()) throw DomainError("ideals live in different rings");
}

inline Ideal from_monomial_ideal(const RingSpecPtr& ring, const MonomialIdeal& m) {
  std::vector<Polynomial> gens;
  for (const auto& g : m.gens()) gens.push_back(Polynomial::monomial(ring->context(), g));
  return Ideal(ring, std::move(gens));
}

// I^k; nonpositive powers are the unit ideal.
inline Ideal ideal_power(const Ideal& ideal, std::int64_t k, const Budget& budget = {}) {
  const auto& ring = ideal.ring();
  if (k <= 0) return Ideal::unit(ring);
  if (k == 1 || ideal.is_zero()) return ideal;
  if (ideal.is_monomial()) return from_monomial_ideal(ring, ideal.to_monomial().power(k));

  const auto& gens = ideal.gens();
  std::size_t mu = gens.size();
  BigInt count = binomial(static_cast<std::int64_t>(mu) + k - 1, static_cast<std::int64_t>(mu) - 1);
  if (count > budget.max_basis)
    throw BudgetExceeded("ideal power would have " + count.str() + " generators (max_basis " +
                         std::to_string(budget.max_basis) + ")");
  // Multisets of generators, enumerated by nondecreasing index.
  std::vector<std::pair<Polynomial, std::size_t>> level;
  for (std::size_t i = 0; i < mu; ++i) level.push_back({gens[i], i});
  for (std::int64_t step = 1; step < k; ++step) {
    std::vector<std::pair<Polynomial, std::size_t>> next;
    for (const auto& [h, last] : level)
      for (std::size_t i = last; i < mu; ++i) next.push_back({h * gens[i], i});
    level = std::move(next);
  }
  std::vector<Polynomial> products;
  for (auto& [h, _] : level) {
    if (h.is_zero()) continue;
    // Drop products that reduce to zero against those already kept.
    if (mu <= 4 && !products.empty() && reduce(h, products).is_zero()) continue;
    products.push_back(h.monic());
  }
  return Ideal(ring, std::move(products));
}

inline bool is_power_of(std::uint64_t q, std::uint64_t p) {
  if (q == 0) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

// I^[q], generated by the q-th powers of the generators.
inline Ideal frobenius_power(const Ideal& ideal, std::uint64_t q) {
  if (!is_power_of(q, ideal.ring()->characteristic()))
    throw DomainError(std::to_string(q) + " is not a power of the characteristic " +
                      std::to_string(ideal.ring()->characteristic()));
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.gens()) gens.push_back(g.frobenius(q));
  return Ideal(ideal.ring(), std::move(gens));
}

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  check_same_ring(a, b);
  std::vector<Polynomial> gens = a.gens();
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  return Ideal(a.ring(), std::move(gens));
}

// First generator of `inner` outside `outer` (+ relations), testing the
// lowest weighted degree generators first.
inline std::optional<Polynomial> containment_witness(const Ideal& outer, const Ideal& inner,
                                                     const Budget& budget = {}) {
  check_same_ring(outer, inner);
  if (inner.is_zero()) return std::nullopt;
  const auto& w = outer.ring()->weights();
  std::vector<Polynomial> order = inner.gens();
  std::stable_sort(order.begin(), order.end(), [&](const Polynomial& a, const Polynomial& b) {
    return a.weighted_degree(w) < b.weighted_degree(w);
  });
  if (outer.monomial_fast_path() && inner.is_monomial()) {
    auto m = outer.to_monomial();
    for (const auto& g : order)
      if (!m.contains(g.lead_monomial())) return g;
    return std::nullopt;
  }
  auto basis = outer.groebner(budget);
  for (const auto& g : order)
    if (!normal_form(g, basis).is_zero()) return g;
  return std::nullopt;
}

// Whether inner is a subset of outer.
inline bool contains(const Ideal& outer, const Ideal& inner, const Budget& budget = {}) {
  return !containment_witness(outer, inner, budget).has_value();
}

// Length of R / (A + relations).
inline Colength ideal_colength(const Ideal& a, const Budget& budget = {}) {
  if (a.monomial_fast_path()) return cached_staircase_colength(a.to_monomial());
  return colength(a.groebner(budget));
}

inline bool is_finite_colength(const Ideal& a, const Budget& budget = {}) { return ideal_colength(a, budget).has_value(); }

// Krull dimension of R / A.
inline int quotient_dimension(const Ideal& a, const Budget& budget = {}) {
  if (a.monomial_fast_path()) return dimension(a.to_monomial(), a.ring()->nvars());
  return dimension(a.groebner(budget).leading(), a.ring()->nvars());
}

}  // namespace hk
