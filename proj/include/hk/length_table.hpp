#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hk/ideal.hpp"

namespace hk {

// Lazily extended table t -> l(R / (I^t + J^[q] + relations)) for one level q.
// The chain K_t = I*K_{t-1} + J^[q] is walked incrementally; once it stops
// changing every later length equals the last one.
class LengthTable {
 public:
  LengthTable(Ideal I, Ideal J, std::uint64_t q, Budget budget = {})
      : I_(std::move(I)), J_(std::move(J)), q_(q), budget_(budget), Jq_(frobenius_power(J_, q)) {
    check_same_ring(I_, J_);
    monomial_ = I_.monomial_fast_path() && J_.monomial_fast_path();
  }

  const Ideal& I() const noexcept { return I_; }
  const Ideal& J() const noexcept { return J_; }
  const Ideal& frobenius_J() const noexcept { return Jq_; }
  std::uint64_t q() const noexcept { return q_; }
  bool uses_monomial_path() const noexcept { return monomial_; }

  std::string key() const { return table_key(I_, J_, q_); }
  static std::string table_key(const Ideal& I, const Ideal& J, std::uint64_t q) {
    return I.key() + "|" + J.key() + "|q=" + std::to_string(q);
  }

  // l(R / (J^[q] + relations)).
  Colength frobenius_length() {
    std::lock_guard lock(mutex_);
    return frobenius_length_locked();
  }

  Colength raw_colength(std::int64_t t) {
    if (t <= 0) return 0;
    std::lock_guard lock(mutex_);
    if (I_.is_zero()) return frobenius_length_locked();
    auto idx = static_cast<std::size_t>(t);
    if (idx < values_.size() && values_[idx]) return *values_[idx];
    if (stable_ && t >= *stable_) return value_at_locked(*stable_);
    if (chain_t_ > t) reset_chain();  // only after a preload with gaps
    while (chain_t_ < t && !(stable_ && chain_t_ >= *stable_)) step();
    if (stable_ && t >= *stable_) return value_at_locked(*stable_);
    return value_at_locked(t);
  }

  // Integer length; infinite colength is a domain error.
  std::uint64_t raw(std::int64_t t) {
    auto c = raw_colength(t);
    if (!c)
      throw DomainError("l(R/(I^" + std::to_string(t) + " + J^[" + std::to_string(q_) +
                        "])) is infinite: I + J is not primary to the maximal ideal");
    return *c;
  }

  // Smallest t from which the chain is constant, computing at most up to limit.
  std::optional<std::int64_t> stable_index(std::int64_t limit) {
    if (I_.is_zero()) return 1;
    std::lock_guard lock(mutex_);
    while (!stable_ && chain_t_ < limit) step();
    return stable_;
  }

  // Values for t = 1..T known so far (for the disk cache).
  struct Snapshot {
    std::vector<std::optional<std::uint64_t>> values;  // index t-1
    std::optional<std::int64_t> stable;
  };
  Snapshot snapshot() const {
    std::lock_guard lock(mutex_);
    Snapshot s;
    for (std::size_t t = 1; t < values_.size(); ++t)
      s.values.push_back(values_[t] ? *values_[t] : std::nullopt);
    s.stable = stable_;
    return s;
  }

  // Seeds known finite values; chain state is rebuilt on demand if needed.
  void preload(const std::vector<std::uint64_t>& values, std::optional<std::int64_t> stable) {
    std::lock_guard lock(mutex_);
    if (values_.size() < values.size() + 1) values_.resize(values.size() + 1);
    for (std::size_t i = 0; i < values.size(); ++i) values_[i + 1] = Colength(values[i]);
    if (stable && static_cast<std::size_t>(*stable) < values_.size()) stable_ = stable;
  }

 private:
  Colength frobenius_length_locked() {
    if (!frob_) frob_ = ideal_colength(Jq_, budget_);
    return *frob_;
  }

  Colength value_at_locked(std::int64_t t) {
    auto idx = static_cast<std::size_t>(t);
    if (idx < values_.size() && values_[idx]) return *values_[idx];
    throw VerificationFailure("length table missing entry " + std::to_string(t));
  }

  void store(std::int64_t t, Colength c) {
    auto idx = static_cast<std::size_t>(t);
    if (values_.size() <= idx) values_.resize(idx + 1);
    values_[idx] = c;
  }

  void reset_chain() {
    chain_t_ = 0;
    mono_chain_.reset();
    poly_chain_.clear();
  }

  void step() {
    if (monomial_)
      step_monomial();
    else
      step_polynomial();
  }

  // Monomial route: keep the generators of I^t that lie outside J^[q].
  void step_monomial() {
    const std::size_t n = I_.ring()->nvars();
    const MonomialIdeal jq = Jq_.is_zero() ? MonomialIdeal(n) : Jq_.to_monomial();
    const MonomialIdeal ig = I_.to_monomial();
    std::vector<Monomial> next;
    if (chain_t_ == 0) {
      next = ig.gens();
    } else {
      for (const auto& a : ig.gens())
        for (const auto& g : mono_chain_->gens()) next.push_back(a * g);
    }
    std::erase_if(next, [&](const Monomial& m) { return jq.contains(m); });
    MonomialIdeal cur = minimalize(std::move(next), n);
    ++chain_t_;
    if (cur.is_zero()) {
      store(chain_t_, frobenius_length_locked());
      stable_ = chain_t_;
      mono_chain_ = std::move(cur);
      return;
    }
    if (mono_chain_ && *mono_chain_ == cur) {
      // I*K = K: constant from the previous index on.
      stable_ = chain_t_ - 1;
      store(chain_t_, value_at_locked(chain_t_ - 1));
      return;
    }
    std::vector<Monomial> all = cur.gens();
    all.insert(all.end(), jq.gens().begin(), jq.gens().end());
    store(chain_t_, cached_staircase_colength(minimalize(std::move(all), n)));
    mono_chain_ = std::move(cur);
  }

  // General route: reduce products modulo the basis of J^[q] + relations.
  void step_polynomial() {
    if (!base_) base_ = std::make_shared<GroebnerBasis>(Jq_.groebner(budget_));
    const auto& ctx = base_->context();
    std::vector<Polynomial> products;
    if (chain_t_ == 0) {
      for (const auto& a : I_.gens()) products.push_back(normal_form(a.with_context(ctx), *base_));
    } else {
      for (const auto& a : I_.gens()) {
        auto ac = a.with_context(ctx);
        for (const auto& g : poly_chain_) products.push_back(normal_form(ac * g, *base_));
      }
    }
    std::erase_if(products, [](const Polynomial& f) { return f.is_zero(); });
    ++chain_t_;
    if (products.empty()) {
      store(chain_t_, frobenius_length_locked());
      stable_ = chain_t_;
      poly_chain_.clear();
      return;
    }
    std::vector<Polynomial> gens = base_->elements();
    gens.insert(gens.end(), products.begin(), products.end());
    GroebnerBasis gb = buchberger(std::move(gens), ctx, budget_);
    // Elements of the new basis not already in J^[q] generate the next products.
    std::vector<Polynomial> chain;
    for (const auto& g : gb.elements())
      if (!normal_form(g, *base_).is_zero()) chain.push_back(g);
    std::string sig = basis_signature(gb);
    if (sig == last_signature_) {
      stable_ = chain_t_ - 1;
      store(chain_t_, value_at_locked(chain_t_ - 1));
      return;
    }
    last_signature_ = std::move(sig);
    store(chain_t_, colength(gb));
    poly_chain_ = std::move(chain);
  }

  static std::string basis_signature(const GroebnerBasis& gb) {
    std::string s;
    for (const auto& g : gb.elements()) s += g.canonical_string() + ";";
    return s;
  }

  Ideal I_, J_;
  std::uint64_t q_;
  Budget budget_;
  Ideal Jq_;
  bool monomial_ = false;

  mutable std::mutex mutex_;
  std::optional<Colength> frob_;
  std::vector<std::optional<Colength>> values_{std::nullopt};
  std::optional<std::int64_t> stable_;
  std::int64_t chain_t_ = 0;
  std::optional<MonomialIdeal> mono_chain_;
  std::vector<Polynomial> poly_chain_;
  std::shared_ptr<GroebnerBasis> base_;
  std::string last_signature_;
};

using LengthTablePtr = std::shared_ptr<LengthTable>;

class LengthTableRegistry {
 public:
  LengthTablePtr get(const Ideal& I, const Ideal& J, std::uint64_t q, const Budget& budget = {}) {
    std::string key = LengthTable::table_key(I, J, q);
    std::lock_guard lock(mutex_);
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;
    auto table = std::make_shared<LengthTable>(I, J, q, budget);
    if (loader_) loader_(key, *table);
    tables_.emplace(key, table);
    return table;
  }

  // Called once for every newly created table, e.g. to seed it from disk.
  void set_loader(std::function<void(const std::string&, LengthTable&)> loader) {
    std::lock_guard lock(mutex_);
    loader_ = std::move(loader);
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    std::lock_guard lock(mutex_);
    for (const auto& [k, t] : tables_) fn(k, *t);
  }

  void clear() {
    std::lock_guard lock(mutex_);
    tables_.clear();
  }

 private:
  mutable std::mutex mutex_;
  std::map<std::string, LengthTablePtr> tables_;
  std::function<void(const std::string&, LengthTable&)> loader_;
};

inline LengthTableRegistry& length_tables() {
  static LengthTableRegistry registry;
  return registry;
}

inline LengthTablePtr length_table(const Ideal& I, const Ideal& J, std::uint64_t q, const Budget& budget = {}) {
  return length_tables().get(I, J, q, budget);
}

}  // namespace hk
