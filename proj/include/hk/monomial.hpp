#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hk/error.hpp"

namespace hk {

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("exponent overflow in addition");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("exponent overflow in multiplication");
  return r;
}

}  // namespace detail

// Exponent vector of a monomial in a fixed number of variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  Monomial(std::initializer_list<std::uint64_t> e) : e_(e) {}
  explicit Monomial(std::vector<std::uint64_t> e) : e_(std::move(e)) {}

  static Monomial variable(std::size_t nvars, std::size_t i, std::uint64_t power = 1) {
    Monomial m(nvars);
    m.e_.at(i) = power;
    return m;
  }

  std::size_t nvars() const noexcept { return e_.size(); }
  std::uint64_t operator[](std::size_t i) const noexcept { return e_[i]; }
  std::uint64_t& operator[](std::size_t i) noexcept { return e_[i]; }
  std::span<const std::uint64_t> exponents() const noexcept { return e_; }

  bool is_one() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](std::uint64_t v) { return v == 0; });
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (auto v : e_) d = detail::checked_add(d, v);
    return d;
  }

  // Weighted degree with 128-bit accumulation; throws if the result exceeds 64 bits.
  std::uint64_t weighted_degree(std::span<const std::uint64_t> weights) const {
    check_arity(weights.size());
    unsigned __int128 d = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) d += static_cast<unsigned __int128>(e_[i]) * weights[i];
    if (d > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("weighted degree overflow");
    return static_cast<std::uint64_t>(d);
  }

  bool divides(const Monomial& other) const {
    check_arity(other.nvars());
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > other.e_[i]) return false;
    return true;
  }

  // Support as a bitmask, used by the dimension computation.
  std::uint64_t support_mask() const noexcept {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < e_.size() && i < 64; ++i)
      if (e_[i]) m |= std::uint64_t{1} << i;
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    a.check_arity(b.nvars());
    Monomial r(a.nvars());
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = detail::checked_add(a.e_[i], b.e_[i]);
    return r;
  }

  // Exact quotient; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    a.check_arity(b.nvars());
    Monomial r(a.nvars());
    for (std::size_t i = 0; i < a.e_.size(); ++i) {
      if (b.e_[i] > a.e_[i]) throw DomainError("monomial quotient is not exact");
      r.e_[i] = a.e_[i] - b.e_[i];
    }
    return r;
  }

  Monomial pow(std::uint64_t k) const {
    Monomial r(nvars());
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = detail::checked_mul(e_[i], k);
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    a.check_arity(b.nvars());
    Monomial r(a.nvars());
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    a.check_arity(b.nvars());
    for (std::size_t i = 0; i < a.e_.size(); ++i)
      if (a.e_[i] && b.e_[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Plain lexicographic comparison of exponent vectors; used for canonical
  // containers, not as a term order.
  friend auto operator<=>(const Monomial& a, const Monomial& b) = default;

  std::string to_string(std::span<const std::string> names = {}) const {
    std::string out;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (!e_[i]) continue;
      if (!out.empty()) out += "*";
      out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
      if (e_[i] > 1) out += "^" + std::to_string(e_[i]);
    }
    return out.empty() ? "1" : out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << m.to_string(); }

  void check_arity(std::size_t n) const {
    if (n != e_.size())
      throw DomainError("monomial arity mismatch: " + std::to_string(e_.size()) + " vs " + std::to_string(n));
  }

 private:
  std::vector<std::uint64_t> e_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : m.exponents()) h = (h ^ std::hash<std::uint64_t>{}(v)) * 1099511628211ull;
    return h;
  }
};

}  // namespace hk
