#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hk/monomial_ideal.hpp"
#include "hk/polynomial.hpp"

namespace hk {

// Resource limits for one basis computation. Exceeding any of them raises
// BudgetExceeded; nothing is silently truncated.
struct Budget {
  std::size_t max_pairs = 10'000'000;
  std::size_t max_basis = 20'000;
  std::uint64_t max_degree = 1'000'000;
};

class GroebnerBasis {
 public:
  GroebnerBasis(PolyContextPtr ctx, std::vector<Polynomial> elements)
      : ctx_(std::move(ctx)), elements_(std::move(elements)), leading_(ctx_->nvars()) {
    std::vector<Monomial> lms;
    lms.reserve(elements_.size());
    for (const auto& g : elements_) lms.push_back(g.lead_monomial());
    leading_ = minimalize(std::move(lms), ctx_->nvars());
  }

  const PolyContextPtr& context() const noexcept { return ctx_; }
  const MonomialOrder& order() const noexcept { return ctx_->order; }
  std::size_t nvars() const noexcept { return ctx_->nvars(); }
  const std::vector<Polynomial>& elements() const noexcept { return elements_; }
  const MonomialIdeal& leading() const noexcept { return leading_; }
  bool is_unit() const noexcept { return leading_.is_unit(); }
  bool is_zero() const noexcept { return elements_.empty(); }

 private:
  PolyContextPtr ctx_;
  std::vector<Polynomial> elements_;
  MonomialIdeal leading_;
};

namespace detail {

inline const Polynomial* find_reducer(const Monomial& m, std::span<const Polynomial> reducers) {
  for (const auto& g : reducers)
    if (g.lead_monomial().divides(m)) return &g;
  return nullptr;
}

}  // namespace detail

// Full reduction of f by a list of nonzero polynomials (not necessarily a
// basis). The remainder has no term divisible by any reducer's leading term.
inline Polynomial reduce(const Polynomial& f, std::span<const Polynomial> reducers) {
  const auto& F = f.field();
  const auto& ord = f.order();
  std::vector<Term> out;
  std::vector<Term> work = f.terms();
  std::vector<Term> merged;
  std::size_t off = 0;
  while (off < work.size()) {
    const Term& lt = work[off];
    const Polynomial* g = detail::find_reducer(lt.monomial, reducers);
    if (!g) {
      out.push_back(lt);
      ++off;
      continue;
    }
    // work[off..] - c * m * g; the leading terms cancel.
    auto c = F.neg(F.mul(lt.coeff, F.inv(g->lead_coeff())));
    Monomial m = lt.monomial / g->lead_monomial();
    const auto& gt = g->terms();
    merged.clear();
    merged.reserve(work.size() - off + gt.size());
    std::size_t i = off + 1, j = 1;
    while (i < work.size() || j < gt.size()) {
      if (j == gt.size()) {
        merged.push_back(std::move(work[i++]));
        continue;
      }
      Monomial gm = gt[j].monomial * m;
      if (i == work.size()) {
        merged.push_back({std::move(gm), F.mul(gt[j++].coeff, c)});
        continue;
      }
      auto cmp = ord.compare(work[i].monomial, gm);
      if (cmp == Ordering::Greater) {
        merged.push_back(std::move(work[i++]));
      } else if (cmp == Ordering::Less) {
        merged.push_back({std::move(gm), F.mul(gt[j++].coeff, c)});
      } else {
        auto v = F.add(work[i].coeff, F.mul(gt[j].coeff, c));
        if (v) merged.push_back({std::move(work[i].monomial), v});
        ++i;
        ++j;
      }
    }
    std::swap(work, merged);
    off = 0;
  }
  return Polynomial::from_sorted_terms(f.context(), std::move(out));
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis) {
  Polynomial g = f.context() == basis.context() ? f : f.with_context(basis.context());
  return reduce(g, basis.elements());
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  Monomial l = lcm(f.lead_monomial(), g.lead_monomial());
  const auto& F = f.field();
  Polynomial a = f.times_term(l / f.lead_monomial(), F.inv(f.lead_coeff()));
  return a.add_multiple(g, l / g.lead_monomial(), F.neg(F.inv(g.lead_coeff())));
}

namespace detail {

struct CriticalPair {
  std::size_t i, j;
  Monomial lcm;
  std::uint64_t degree;
};

class BuchbergerRun {
 public:
  BuchbergerRun(PolyContextPtr ctx, const Budget& budget) : ctx_(std::move(ctx)), budget_(budget) {}

  GroebnerBasis run(std::vector<Polynomial> gens) {
    std::vector<Polynomial> input;
    for (auto& g : gens)
      if (!g.is_zero()) input.push_back(g.with_context(ctx_));
    std::sort(input.begin(), input.end(), [&](const Polynomial& a, const Polynomial& b) {
      return ctx_->order.compare(a.lead_monomial(), b.lead_monomial()) == Ordering::Less;
    });
    for (auto& g : input) {
      add(reduce(g, basis_));
      if (unit_) return finish();
    }
    std::size_t processed = 0;
    while (!pairs_.empty()) {
      if (++processed > budget_.max_pairs)
        throw BudgetExceeded("Buchberger exceeded max_pairs=" + std::to_string(budget_.max_pairs) +
                             " (basis size " + std::to_string(basis_.size()) + ", pending pairs " +
                             std::to_string(pairs_.size()) + ")");
      auto best = select();
      CriticalPair pair = pairs_[best];
      pairs_[best] = std::move(pairs_.back());
      pairs_.pop_back();
      add(reduce(s_polynomial(basis_[pair.i], basis_[pair.j]), basis_));
      if (unit_) break;
    }
    return finish();
  }

 private:
  std::uint64_t degree_of(const Monomial& m) const { return m.weighted_degree(ctx_->order.weights()); }

  std::size_t select() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const auto& a = pairs_[k];
      const auto& b = pairs_[best];
      if (a.degree < b.degree || (a.degree == b.degree && ctx_->order.compare(a.lcm, b.lcm) == Ordering::Less))
        best = k;
    }
    return best;
  }

  void add(Polynomial h) {
    if (h.is_zero()) return;
    h = h.monic();
    if (h.is_constant()) {
      unit_ = true;
      basis_.assign(1, h);
      return;
    }
    if (basis_.size() >= budget_.max_basis)
      throw BudgetExceeded("Buchberger exceeded max_basis=" + std::to_string(budget_.max_basis) + " (" +
                           std::to_string(pairs_.size()) + " pairs pending)");
    const Monomial& lh = h.lead_monomial();
    if (degree_of(lh) > budget_.max_degree)
      throw BudgetExceeded("Buchberger exceeded max_degree=" + std::to_string(budget_.max_degree));
    std::size_t k = basis_.size();

    // Gebauer-Moeller update.
    std::vector<CriticalPair> fresh;
    for (std::size_t i = 0; i < k; ++i) {
      if (!active_[i]) continue;
      Monomial l = lcm(basis_[i].lead_monomial(), lh);
      std::uint64_t d = degree_of(l);
      fresh.push_back({i, k, std::move(l), d});
    }
    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const auto& p = fresh[a];
      bool keep = coprime(basis_[p.i].lead_monomial(), lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < fresh.size() && keep; ++b)
          if (fresh[b].lcm.divides(p.lcm)) keep = false;
        for (std::size_t b = 0; b < kept.size() && keep; ++b)
          if (kept[b].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) kept.push_back(p);
    }
    std::erase_if(kept, [&](const CriticalPair& p) { return coprime(basis_[p.i].lead_monomial(), lh); });
    std::erase_if(pairs_, [&](const CriticalPair& p) {
      if (!lh.divides(p.lcm)) return false;
      return lcm(basis_[p.i].lead_monomial(), lh) != p.lcm && lcm(basis_[p.j].lead_monomial(), lh) != p.lcm;
    });
    for (auto& p : kept) pairs_.push_back(std::move(p));
    for (std::size_t i = 0; i < k; ++i)
      if (active_[i] && lh.divides(basis_[i].lead_monomial())) active_[i] = false;
    basis_.push_back(std::move(h));
    active_.push_back(true);
  }

  GroebnerBasis finish() {
    if (unit_) return GroebnerBasis(ctx_, basis_);
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < basis_.size() && !redundant; ++j) {
        if (i == j) continue;
        const auto& li = basis_[i].lead_monomial();
        const auto& lj = basis_[j].lead_monomial();
        if (lj.divides(li) && (lj != li || j < i)) redundant = true;
      }
      if (!redundant) minimal.push_back(basis_[i]);
    }
    std::vector<Polynomial> reduced;
    reduced.reserve(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Polynomial> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      reduced.push_back(reduce(minimal[i], others).monic());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
      return ctx_->order.greater(a.lead_monomial(), b.lead_monomial());
    });
    return GroebnerBasis(ctx_, std::move(reduced));
  }

  PolyContextPtr ctx_;
  Budget budget_;
  std::vector<Polynomial> basis_;
  std::vector<bool> active_;
  std::vector<CriticalPair> pairs_;
  bool unit_ = false;
};

}  // namespace detail

// Reduced Groebner basis of the ideal generated by `gens` in the order of
// `ctx`. Uses the coprime and chain criteria for pair pruning.
inline GroebnerBasis buchberger(std::vector<Polynomial> gens, const PolyContextPtr& ctx, const Budget& budget = {}) {
  return detail::BuchbergerRun(ctx, budget).run(std::move(gens));
}

inline Colength colength(const GroebnerBasis& basis) { return cached_staircase_colength(basis.leading()); }

inline std::uint64_t graded_slice_length(const GroebnerBasis& basis, std::int64_t deg,
                                         std::span<const std::uint64_t> weights) {
  return graded_slice_length(basis.leading(), deg, weights);
}

// Buchberger's criterion: every S-polynomial reduces to zero.
inline bool satisfies_buchberger_criterion(const GroebnerBasis& basis) {
  const auto& el = basis.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = i + 1; j < el.size(); ++j)
      if (!reduce(s_polynomial(el[i], el[j]), el).is_zero()) return false;
  return true;
}

}  // namespace hk
