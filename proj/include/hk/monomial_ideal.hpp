#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hk/memo_cache.hpp"
#include "hk/monomial.hpp"

namespace hk {

// Length of a quotient; std::nullopt stands for an infinite colength.
using Colength = std::optional<std::uint64_t>;

class MonomialIdeal;
MonomialIdeal minimalize(std::vector<Monomial> gens, std::size_t nvars);

// Monomial ideal kept as its minimal generating antichain, sorted
// lexicographically so equal ideals compare and hash equal. No generators
// means the zero ideal.
class MonomialIdeal {
 public:
  explicit MonomialIdeal(std::size_t nvars) : nvars_(nvars) {}

  static MonomialIdeal unit(std::size_t nvars) {
    MonomialIdeal m(nvars);
    m.gens_.emplace_back(nvars);
    return m;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Monomial>& gens() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool is_zero() const noexcept { return gens_.empty(); }
  bool is_unit() const noexcept { return gens_.size() == 1 && gens_[0].is_one(); }

  bool contains(const Monomial& m) const {
    m.check_arity(nvars_);
    for (const auto& g : gens_)
      if (g.divides(m)) return true;
    return false;
  }

  // First generator of `other` outside this ideal, if any.
  std::optional<Monomial> non_member(const MonomialIdeal& other) const {
    for (const auto& g : other.gens_)
      if (!contains(g)) return g;
    return std::nullopt;
  }

  bool contains(const MonomialIdeal& other) const { return !non_member(other).has_value(); }

  friend MonomialIdeal operator+(const MonomialIdeal& a, const MonomialIdeal& b) {
    std::vector<Monomial> all = a.gens_;
    all.insert(all.end(), b.gens_.begin(), b.gens_.end());
    return minimalize(std::move(all), a.nvars_);
  }

  friend MonomialIdeal operator*(const MonomialIdeal& a, const MonomialIdeal& b) {
    std::vector<Monomial> prods;
    prods.reserve(a.size() * b.size());
    for (const auto& g : a.gens_)
      for (const auto& h : b.gens_) prods.push_back(g * h);
    return minimalize(std::move(prods), a.nvars_);
  }

  MonomialIdeal frobenius(std::uint64_t q) const {
    std::vector<Monomial> g;
    g.reserve(gens_.size());
    for (const auto& m : gens_) g.push_back(m.pow(q));
    return minimalize(std::move(g), nvars_);
  }

  MonomialIdeal power(std::int64_t k) const {
    if (k <= 0) return unit(nvars_);
    MonomialIdeal result = unit(nvars_);
    MonomialIdeal base = *this;
    auto e = static_cast<std::uint64_t>(k);
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  std::string to_string(std::span<const std::string> names = {}) const {
    std::string out = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? ", " : "") + gens_[i].to_string(names);
    return out + (gens_.empty() ? "0)" : ")");
  }

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  friend MonomialIdeal minimalize(std::vector<Monomial> gens, std::size_t nvars);

  std::size_t nvars_;
  std::vector<Monomial> gens_;
};

struct MonomialIdealHash {
  std::size_t operator()(const MonomialIdeal& m) const noexcept {
    std::size_t h = m.nvars();
    for (const auto& g : m.gens()) h = h * 1000003u ^ MonomialHash{}(g);
    return h;
  }
};

inline MonomialIdeal minimalize(std::vector<Monomial> gens, std::size_t nvars) {
  for (const auto& g : gens) g.check_arity(nvars);
  MonomialIdeal out(nvars);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.empty()) return out;
  if (nvars == 1) {
    out.gens_.push_back(gens.front());
    return out;
  }
  if (nvars == 2) {
    // Sorted by (x, y): keep the generators whose y strictly drops.
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (auto& g : gens)
      if (g[1] < best) {
        best = g[1];
        out.gens_.push_back(std::move(g));
      }
    return out;
  }
  std::stable_sort(gens.begin(), gens.end(),
                   [](const Monomial& a, const Monomial& b) { return a.total_degree() < b.total_degree(); });
  std::vector<Monomial> kept;
  for (auto& g : gens) {
    bool redundant = false;
    for (const auto& k : kept)
      if (k.divides(g)) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(std::move(g));
  }
  std::sort(kept.begin(), kept.end());
  out.gens_ = std::move(kept);
  return out;
}

inline bool membership(const MonomialIdeal& ideal, const Monomial& m) { return ideal.contains(m); }

// Krull dimension of k[x]/M: the largest set of variables containing the
// support of no generator. The unit ideal gives -1.
inline int dimension(const MonomialIdeal& ideal, std::size_t nvars) {
  if (nvars > 24) throw ConfigError("dimension computation supports at most 24 variables");
  std::vector<std::uint64_t> masks;
  for (const auto& g : ideal.gens()) masks.push_back(g.support_mask());
  int best = -1;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << nvars); ++s) {
    int c = std::popcount(s);
    if (c <= best) continue;
    bool ok = std::none_of(masks.begin(), masks.end(), [&](std::uint64_t g) { return (g & ~s) == 0; });
    if (ok) best = c;
  }
  return best;
}

namespace detail {

using u128 = unsigned __int128;

struct Count {
  bool infinite = false;
  u128 value = 0;
};

inline u128 checked_mul128(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("colength count overflow");
  return r;
}
inline u128 checked_add128(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("colength count overflow");
  return r;
}

// Colength of the ideal generated by `n = flat.size() / k` exponent vectors of
// arity k. The generators need not be minimal.
inline Count staircase_flat(std::vector<std::uint64_t> flat, std::size_t k) {
  std::size_t n = k ? flat.size() / k : flat.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool one = true;
    for (std::size_t j = 0; j < k && one; ++j) one = flat[i * k + j] == 0;
    if (one) return {false, 0};
  }
  if (k == 0) return {false, 1};  // no unit generator: the quotient is the field
  if (n == 0) return {true, 0};
  if (k == 1) {
    std::uint64_t m = flat[0];
    for (auto v : flat) m = std::min(m, v);
    return {false, m};
  }
  if (k == 2) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = {flat[2 * i], flat[2 * i + 1]};
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> stair;
    for (const auto& pt : pts)
      if (stair.empty() || pt.second < stair.back().second) stair.push_back(pt);
    if (stair.front().first != 0 || stair.back().second != 0) return {true, 0};
    u128 total = 0;
    for (std::size_t i = 0; i + 1 < stair.size(); ++i)
      total = checked_add128(total, checked_mul128(stair[i + 1].first - stair[i].first, stair[i].second));
    return {false, total};
  }
  // Slice on the last variable: for heights in [e_i, e_{i+1}) the slice ideal
  // is generated by the projections of generators with last exponent <= e_i.
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return flat[a * k + k - 1] < flat[b * k + k - 1]; });
  if (flat[idx[0] * k + k - 1] > 0) return {true, 0};
  std::vector<std::uint64_t> slice;
  u128 total = 0;
  std::size_t pos = 0;
  while (pos < n) {
    std::uint64_t h = flat[idx[pos] * k + k - 1];
    while (pos < n && flat[idx[pos] * k + k - 1] == h) {
      const auto* g = &flat[idx[pos] * k];
      slice.insert(slice.end(), g, g + (k - 1));
      ++pos;
    }
    Count c = staircase_flat(slice, k - 1);
    if (!c.infinite && c.value == 0) return {false, total};
    if (pos == n || c.infinite) return {true, 0};
    std::uint64_t width = flat[idx[pos] * k + k - 1] - h;
    total = checked_add128(total, checked_mul128(width, c.value));
  }
  return {true, 0};
}

inline std::vector<std::uint64_t> flatten(const std::vector<Monomial>& gens, std::size_t k) {
  std::vector<std::uint64_t> flat;
  flat.reserve(gens.size() * k);
  for (const auto& g : gens) flat.insert(flat.end(), g.exponents().begin(), g.exponents().end());
  return flat;
}

inline Colength to_colength(const Count& c) {
  if (c.infinite) return std::nullopt;
  if (c.value > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("colength exceeds 64 bits");
  return static_cast<std::uint64_t>(c.value);
}

// Number of exponent vectors a with sum w_i a_i == deg.
inline u128 weighted_compositions(std::uint64_t deg, std::span<const std::uint64_t> weights) {
  std::vector<u128> ways(deg + 1, 0);
  ways[0] = 1;
  for (auto w : weights)
    for (std::uint64_t d = w; d <= deg; ++d) ways[d] = checked_add128(ways[d], ways[d - w]);
  return ways[deg];
}

inline u128 slice_flat(const std::vector<std::uint64_t>& flat, std::size_t k, std::uint64_t deg,
                       std::span<const std::uint64_t> weights) {
  std::size_t n = k ? flat.size() / k : flat.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool one = true;
    for (std::size_t j = 0; j < k && one; ++j) one = flat[i * k + j] == 0;
    if (one) return 0;
  }
  if (k == 0) return deg == 0 ? 1 : 0;
  if (n == 0) return weighted_compositions(deg, weights.subspan(0, k));
  std::uint64_t w = weights[k - 1];
  if (k == 1) {
    // Standard monomials x^e with e below the smallest generator exponent.
    std::uint64_t bound = flat[0];
    for (std::size_t i = 1; i < n; ++i) bound = std::min(bound, flat[i]);
    return deg % w == 0 && deg / w < bound ? 1 : 0;
  }
  u128 total = 0;
  std::vector<std::uint64_t> proj;
  for (std::uint64_t e = 0; e * w <= deg; ++e) {
    proj.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (flat[i * k + k - 1] <= e) proj.insert(proj.end(), &flat[i * k], &flat[i * k] + (k - 1));
    total = checked_add128(total, slice_flat(proj, k - 1, deg - e * w, weights));
  }
  return total;
}

}  // namespace detail

// Number of monomials outside the ideal, by recursive slicing on the last
// variable. Infinite exactly when the quotient has positive dimension.
inline Colength staircase_colength(const MonomialIdeal& ideal) {
  return detail::to_colength(detail::staircase_flat(detail::flatten(ideal.gens(), ideal.nvars()), ideal.nvars()));
}

inline MemoCache<MonomialIdeal, Colength, MonomialIdealHash>& staircase_cache() {
  static MemoCache<MonomialIdeal, Colength, MonomialIdealHash> cache;
  return cache;
}

inline Colength cached_staircase_colength(const MonomialIdeal& ideal) {
  return staircase_cache().get_or_compute(ideal, [&] { return staircase_colength(ideal); });
}

// Standard monomials of weighted degree exactly `deg`.
inline std::uint64_t graded_slice_length(const MonomialIdeal& ideal, std::int64_t deg,
                                         std::span<const std::uint64_t> weights) {
  if (deg < 0) return 0;
  if (weights.size() != ideal.nvars()) throw ConfigError("weight vector arity mismatch");
  auto c = detail::slice_flat(detail::flatten(ideal.gens(), ideal.nvars()), ideal.nvars(),
                              static_cast<std::uint64_t>(deg), weights);
  if (c > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("slice length exceeds 64 bits");
  return static_cast<std::uint64_t>(c);
}

}  // namespace hk
