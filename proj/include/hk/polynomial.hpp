#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hk/field.hpp"
#include "hk/monomial.hpp"
#include "hk/order.hpp"

namespace hk {

// Everything a polynomial needs to interpret its terms: the coefficient field,
// the active term order and the variable names.
struct PolyContext {
  PrimeField field;
  MonomialOrder order;
  std::vector<std::string> names;

  std::size_t nvars() const noexcept { return order.nvars(); }
};

using PolyContextPtr = std::shared_ptr<const PolyContext>;

inline PolyContextPtr make_context(PrimeField field, MonomialOrder order, std::vector<std::string> names = {}) {
  if (!names.empty() && names.size() != order.nvars()) throw ConfigError("variable names do not match arity");
  return std::make_shared<const PolyContext>(PolyContext{field, std::move(order), std::move(names)});
}

struct Term {
  Monomial monomial;
  std::uint64_t coeff;  // reduced, nonzero

  friend bool operator==(const Term&, const Term&) = default;
};

// Sparse polynomial over F_p. Terms are strictly decreasing in the context's
// order and carry no zero coefficients, so equal polynomials have equal term
// vectors.
class Polynomial {
 public:
  explicit Polynomial(PolyContextPtr ctx) : ctx_(std::move(ctx)) {}

  static Polynomial constant(PolyContextPtr ctx, std::int64_t c) {
    Polynomial p(ctx);
    auto v = p.field().reduce(c);
    if (v) p.terms_.push_back({Monomial(p.nvars()), v});
    return p;
  }
  static Polynomial monomial(PolyContextPtr ctx, Monomial m, std::int64_t c = 1) {
    Polynomial p(ctx);
    m.check_arity(p.nvars());
    auto v = p.field().reduce(c);
    if (v) p.terms_.push_back({std::move(m), v});
    return p;
  }
  static Polynomial from_terms(PolyContextPtr ctx, std::vector<Term> terms) {
    Polynomial p(ctx);
    for (auto& t : terms) {
      t.monomial.check_arity(p.nvars());
      t.coeff %= p.field().characteristic();
    }
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  // Trusted constructor: terms already strictly decreasing, reduced, nonzero.
  static Polynomial from_sorted_terms(PolyContextPtr ctx, std::vector<Term> terms) {
    Polynomial p(std::move(ctx));
    p.terms_ = std::move(terms);
    return p;
  }

  const PolyContextPtr& context() const noexcept { return ctx_; }
  const PrimeField& field() const noexcept { return ctx_->field; }
  const MonomialOrder& order() const noexcept { return ctx_->order; }
  std::size_t nvars() const noexcept { return ctx_->nvars(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_constant() const noexcept { return terms_.size() == 1 && terms_[0].monomial.is_one(); }

  const Monomial& lead_monomial() const {
    if (terms_.empty()) throw DomainError("leading monomial of zero polynomial");
    return terms_.front().monomial;
  }
  std::uint64_t lead_coeff() const {
    if (terms_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return terms_.front().coeff;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(field().inv(lead_coeff()));
  }

  Polynomial scaled(std::uint64_t c) const {
    c %= field().characteristic();
    Polynomial r(ctx_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial, field().mul(t.coeff, c)});
    return r;
  }

  // c * m * this; multiplication by a monomial preserves the term order.
  Polynomial times_term(const Monomial& m, std::uint64_t c) const {
    c %= field().characteristic();
    Polynomial r(ctx_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, field().mul(t.coeff, c)});
    return r;
  }

  // this + c * m * g, merged in one pass.
  Polynomial add_multiple(const Polynomial& g, const Monomial& m, std::uint64_t c) const {
    check_compatible(g);
    c %= field().characteristic();
    if (c == 0 || g.is_zero()) return *this;
    Polynomial r(ctx_);
    r.terms_.reserve(terms_.size() + g.terms_.size());
    const auto& F = field();
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < g.terms_.size()) {
      if (j == g.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      Monomial gm = g.terms_[j].monomial * m;
      if (i == terms_.size()) {
        r.terms_.push_back({std::move(gm), F.mul(g.terms_[j++].coeff, c)});
        continue;
      }
      auto cmp = order().compare(terms_[i].monomial, gm);
      if (cmp == Ordering::Greater) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp == Ordering::Less) {
        r.terms_.push_back({std::move(gm), F.mul(g.terms_[j++].coeff, c)});
      } else {
        auto v = F.add(terms_[i].coeff, F.mul(g.terms_[j].coeff, c));
        if (v) r.terms_.push_back({terms_[i].monomial, v});
        ++i;
        ++j;
      }
    }
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    return a.add_multiple(b, Monomial(a.nvars()), 1);
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a.add_multiple(b, Monomial(a.nvars()), a.field().characteristic() - 1);
  }
  Polynomial operator-() const { return scaled(field().characteristic() - 1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    Polynomial r(a.ctx_);
    if (a.is_zero() || b.is_zero()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) r.terms_.push_back({s.monomial * t.monomial, a.field().mul(s.coeff, t.coeff)});
    r.normalize();
    return r;
  }

  Polynomial pow(std::uint64_t k) const {
    Polynomial result = constant(ctx_, 1);
    Polynomial base = *this;
    while (k) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  // f^q for q a power of the characteristic: coefficients are fixed by
  // Frobenius, so only exponents scale.
  Polynomial frobenius(std::uint64_t q) const {
    Polynomial r(ctx_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial.pow(q), t.coeff});
    return r;
  }

  // Same polynomial, terms sorted for another context over the same field.
  Polynomial with_context(PolyContextPtr ctx) const {
    if (ctx == ctx_) return *this;
    if (!(ctx->field == field()) || ctx->nvars() != nvars())
      throw DomainError("incompatible polynomial context");
    Polynomial r(std::move(ctx));
    r.terms_ = terms_;
    r.normalize();
    return r;
  }

  // Largest weighted degree of a term (0 for the zero polynomial).
  std::uint64_t weighted_degree(std::span<const std::uint64_t> weights) const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial.weighted_degree(weights));
    return d;
  }

  // Distinct weighted degrees of the terms; size <= 1 means homogeneous.
  std::set<std::uint64_t> weighted_degrees(std::span<const std::uint64_t> weights) const {
    std::set<std::uint64_t> ds;
    for (const auto& t : terms_) ds.insert(t.monomial.weighted_degree(weights));
    return ds;
  }

  bool is_homogeneous(std::span<const std::uint64_t> weights) const { return weighted_degrees(weights).size() <= 1; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += " + ";
      std::string m = t.monomial.to_string(ctx_->names);
      if (t.coeff != 1 || m == "1") {
        out += std::to_string(t.coeff);
        if (m != "1") out += "*" + m;
      } else {
        out += m;
      }
    }
    return out;
  }

  // Order-independent rendering, used for cache keys and canonical sorting.
  std::string canonical_string() const {
    std::vector<Term> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) { return a.monomial > b.monomial; });
    std::string out;
    for (const auto& t : sorted) {
      out += std::to_string(t.coeff) + "[";
      for (auto e : t.monomial.exponents()) out += std::to_string(e) + ",";
      out += "]";
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!(a.field() == b.field()) || a.nvars() != b.nvars()) return false;
    if (a.order() == b.order()) return a.terms_ == b.terms_;
    return a.canonical_string() == b.canonical_string();
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

 private:
  void check_compatible(const Polynomial& other) const {
    if (ctx_ != other.ctx_ && !(ctx_->field == other.ctx_->field && ctx_->order == other.ctx_->order))
      throw DomainError("polynomials from different rings or orders");
  }

  // Sort by the order, merge equal monomials and drop zeros.
  void normalize() {
    const auto& ord = order();
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return ord.greater(a.monomial, b.monomial); });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().monomial == t.monomial) {
        merged.back().coeff = field().add(merged.back().coeff, t.coeff);
      } else {
        merged.push_back(std::move(t));
      }
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(merged);
  }

  PolyContextPtr ctx_;
  std::vector<Term> terms_;
};

}  // namespace hk
