#pragma once

#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hk/groebner.hpp"
#include "hk/memo_cache.hpp"
#include "hk/parse.hpp"

namespace hk {

class RingSpec;
using RingSpecPtr = std::shared_ptr<const RingSpec>;

// F_p[x_1..x_m] / (relations) with positive integer weights; the relations
// must be weighted-homogeneous so that graded and local lengths agree.
class RingSpec {
 public:
  static RingSpecPtr make(std::uint64_t p, std::vector<std::string> vars, std::vector<std::uint64_t> weights = {},
                          const std::vector<std::string>& relations = {}) {
    auto ring = std::shared_ptr<RingSpec>(new RingSpec(p, std::move(vars), std::move(weights)));
    std::vector<Polynomial> rels;
    for (const auto& text : relations) rels.push_back(parse_polynomial(text, ring->ctx_));
    ring->set_relations(std::move(rels));
    return ring;
  }

  static RingSpecPtr make(std::uint64_t p, std::vector<std::string> vars, std::vector<std::uint64_t> weights,
                          std::vector<Polynomial> relations) {
    auto ring = std::shared_ptr<RingSpec>(new RingSpec(p, std::move(vars), std::move(weights)));
    std::vector<Polynomial> rels;
    for (const auto& r : relations) rels.push_back(r.with_context(ring->ctx_));
    ring->set_relations(std::move(rels));
    return ring;
  }

  const PrimeField& field() const noexcept { return ctx_->field; }
  std::uint64_t characteristic() const noexcept { return ctx_->field.characteristic(); }
  std::size_t nvars() const noexcept { return ctx_->nvars(); }
  const std::vector<std::string>& names() const noexcept { return ctx_->names; }
  const std::vector<std::uint64_t>& weights() const noexcept { return weights_; }
  const std::vector<Polynomial>& relations() const noexcept { return relations_; }
  bool is_polynomial_ring() const noexcept { return relations_.empty(); }
  // Krull dimension of the quotient.
  int dim() const noexcept { return dim_; }
  // Default context: weighted graded reverse lex.
  const PolyContextPtr& context() const noexcept { return ctx_; }
  const GroebnerBasis& relation_basis() const noexcept { return *relation_basis_; }

  Polynomial parse(std::string_view text) const { return parse_polynomial(text, ctx_); }
  Polynomial one() const { return Polynomial::constant(ctx_, 1); }
  Polynomial zero() const { return Polynomial(ctx_); }
  Polynomial variable(std::size_t i, std::uint64_t power = 1) const {
    return Polynomial::monomial(ctx_, Monomial::variable(nvars(), i, power));
  }

  std::string key() const { return key_; }

  // Same ring with one more variable appended.
  RingSpecPtr adjoin_variable(const std::string& name, std::uint64_t weight) const {
    auto vars = names();
    vars.push_back(name);
    auto w = weights_;
    w.push_back(weight);
    std::vector<Polynomial> rels;
    auto ctx = make_context(field(), MonomialOrder::grevlex(vars.size(), w), vars);
    for (const auto& r : relations_) {
      std::vector<Term> terms;
      for (const auto& t : r.terms()) {
        auto e = std::vector<std::uint64_t>(t.monomial.exponents().begin(), t.monomial.exponents().end());
        e.push_back(0);
        terms.push_back({Monomial(std::move(e)), t.coeff});
      }
      rels.push_back(Polynomial::from_terms(ctx, std::move(terms)));
    }
    return make(characteristic(), std::move(vars), std::move(w), std::move(rels));
  }

  // Quotient by further weighted-homogeneous relations.
  RingSpecPtr quotient(const std::vector<Polynomial>& extra) const {
    auto rels = relations_;
    for (const auto& e : extra)
      if (!e.is_zero()) rels.push_back(e.with_context(ctx_));
    return make(characteristic(), names(), weights_, std::move(rels));
  }

 private:
  RingSpec(std::uint64_t p, std::vector<std::string> vars, std::vector<std::uint64_t> weights)
      : weights_(std::move(weights)) {
    PrimeField field(p);
    if (vars.empty()) throw ConfigError("a ring needs at least one variable");
    std::set<std::string> seen;
    for (const auto& v : vars) {
      bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_');
      for (char c : v) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
      if (!ok) throw ConfigError("invalid variable name '" + v + "'");
      if (!seen.insert(v).second) throw ConfigError("duplicate variable name '" + v + "'");
    }
    if (weights_.empty()) weights_.assign(vars.size(), 1);
    if (weights_.size() != vars.size()) throw ConfigError("one weight per variable is required");
    for (auto w : weights_)
      if (w == 0) throw ConfigError("weights must be positive");
    auto order = MonomialOrder::grevlex(vars.size(), weights_);
    ctx_ = make_context(field, std::move(order), std::move(vars));
  }

  void set_relations(std::vector<Polynomial> rels) {
    for (const auto& r : rels) {
      auto degs = r.weighted_degrees(weights_);
      if (degs.size() > 1) {
        std::string list;
        for (auto d : degs) list += (list.empty() ? "" : ", ") + std::to_string(d);
        throw ConfigError("relation '" + r.to_string() + "' is not weighted-homogeneous (weighted degrees " + list +
                          ")");
      }
    }
    std::erase_if(rels, [](const Polynomial& r) { return r.is_zero(); });
    relations_ = std::move(rels);
    relation_basis_ = std::make_shared<const GroebnerBasis>(buchberger(relations_, ctx_));
    dim_ = dimension(relation_basis_->leading(), nvars());
    key_ = "p=" + std::to_string(characteristic()) + ";n=" + std::to_string(nvars()) + ";w=";
    for (auto w : weights_) key_ += std::to_string(w) + ",";
    key_ += ";rel=";
    std::vector<std::string> rk;
    for (const auto& g : relation_basis_->elements()) rk.push_back(g.canonical_string());
    std::sort(rk.begin(), rk.end());
    for (const auto& k : rk) key_ += k + "|";
  }

  PolyContextPtr ctx_;
  std::vector<std::uint64_t> weights_;
  std::vector<Polynomial> relations_;
  std::shared_ptr<const GroebnerBasis> relation_basis_;
  int dim_ = 0;
  std::string key_;
};

inline MemoCache<std::string, GroebnerBasis>& groebner_cache() {
  static MemoCache<std::string, GroebnerBasis> cache;
  return cache;
}

// Reduced basis of (gens) + relations in `order`, memoized on the canonical
// generator list.
inline GroebnerBasis buchberger(const RingSpec& ring, const std::vector<Polynomial>& gens, const MonomialOrder& order,
                                const Budget& budget = {}) {
  std::vector<std::string> keys;
  for (const auto& g : gens)
    if (!g.is_zero()) keys.push_back(g.canonical_string());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::string key = ring.key() + "#" + order.key() + "#";
  for (const auto& k : keys) key += k + ";";
  return groebner_cache().get_or_compute(key, [&] {
    PolyContextPtr ctx = order == ring.context()->order
                             ? ring.context()
                             : make_context(ring.field(), order, ring.names());
    std::vector<Polynomial> all = ring.relations();
    all.insert(all.end(), gens.begin(), gens.end());
    return buchberger(std::move(all), ctx, budget);
  });
}

inline GroebnerBasis buchberger(const RingSpec& ring, const std::vector<Polynomial>& gens, const Budget& budget = {}) {
  return buchberger(ring, gens, ring.context()->order, budget);
}

}  // namespace hk
