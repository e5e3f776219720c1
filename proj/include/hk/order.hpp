#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hk/monomial.hpp"

namespace hk {

enum class Ordering { Less = -1, Equal = 0, Greater = 1 };

// Lex or (weighted) graded reverse lex. `perm` lists variables from most to
// least significant; `weights` only affect the graded comparison.
class MonomialOrder {
 public:
  enum class Kind { Lex, GRevLex };

  MonomialOrder(Kind kind, std::size_t nvars, std::vector<std::size_t> perm = {},
                std::vector<std::uint64_t> weights = {})
      : kind_(kind), perm_(std::move(perm)), weights_(std::move(weights)) {
    if (perm_.empty()) {
      perm_.resize(nvars);
      std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    }
    if (weights_.empty()) weights_.assign(nvars, 1);
    if (perm_.size() != nvars || weights_.size() != nvars)
      throw ConfigError("monomial order arity mismatch");
    std::vector<bool> seen(nvars, false);
    for (auto v : perm_) {
      if (v >= nvars || seen[v]) throw ConfigError("monomial order permutation is not a permutation");
      seen[v] = true;
    }
    for (auto w : weights_)
      if (w == 0) throw ConfigError("monomial order weights must be positive");
  }

  static MonomialOrder lex(std::size_t nvars) { return {Kind::Lex, nvars}; }
  static MonomialOrder grevlex(std::size_t nvars, std::vector<std::uint64_t> weights = {}) {
    return {Kind::GRevLex, nvars, {}, std::move(weights)};
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t nvars() const noexcept { return perm_.size(); }
  const std::vector<std::uint64_t>& weights() const noexcept { return weights_; }
  const std::vector<std::size_t>& permutation() const noexcept { return perm_; }

  Ordering compare(const Monomial& a, const Monomial& b) const {
    a.check_arity(nvars());
    b.check_arity(nvars());
    if (kind_ == Kind::Lex) {
      for (auto v : perm_)
        if (a[v] != b[v]) return a[v] > b[v] ? Ordering::Greater : Ordering::Less;
      return Ordering::Equal;
    }
    unsigned __int128 da = 0, db = 0;
    for (std::size_t i = 0; i < nvars(); ++i) {
      da += static_cast<unsigned __int128>(a[i]) * weights_[i];
      db += static_cast<unsigned __int128>(b[i]) * weights_[i];
    }
    if (da != db) return da > db ? Ordering::Greater : Ordering::Less;
    // Reverse lex tiebreak: the smaller exponent in the last differing variable wins.
    for (auto it = perm_.rbegin(); it != perm_.rend(); ++it)
      if (a[*it] != b[*it]) return a[*it] < b[*it] ? Ordering::Greater : Ordering::Less;
    return Ordering::Equal;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) == Ordering::Greater; }

  std::string key() const {
    std::string k = kind_ == Kind::Lex ? "lex" : "grevlex";
    for (auto v : perm_) k += ":" + std::to_string(v);
    k += "|";
    for (auto w : weights_) k += std::to_string(w) + ",";
    return k;
  }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  Kind kind_;
  std::vector<std::size_t> perm_;
  std::vector<std::uint64_t> weights_;
};

}  // namespace hk
