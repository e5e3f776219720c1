#pragma once

#include <cstdint>
#include <ostream>

#include "hk/error.hpp"

namespace hk {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Prime field F_p with p < 2^31, so products of reduced residues fit in 64 bits.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 31)) throw ConfigError("characteristic must be below 2^31");
    if (!is_prime(p)) throw ConfigError("characteristic must be prime, got " + std::to_string(p));
  }

  std::uint64_t characteristic() const noexcept { return p_; }

  std::uint64_t reduce(std::int64_t v) const noexcept {
    auto p = static_cast<std::int64_t>(p_);
    v %= p;
    return static_cast<std::uint64_t>(v < 0 ? v + p : v);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return (a * b) % p_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept {
    std::uint64_t r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (a % p_ == 0) throw DomainError("inversion of zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

// A residue together with its characteristic; arithmetic between different
// characteristics is rejected.
class FieldElement {
 public:
  FieldElement(std::int64_t value, const PrimeField& field) : field_(field), value_(field.reduce(value)) {}

  std::uint64_t value() const noexcept { return value_; }
  std::uint64_t characteristic() const noexcept { return field_.characteristic(); }
  const PrimeField& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement inverse() const { return from_reduced(field_.inv(value_)); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return a.from_reduced(a.field_.add(a.value_, b.value_));
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return a.from_reduced(a.field_.sub(a.value_, b.value_));
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return a.from_reduced(a.field_.mul(a.value_, b.value_));
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return a * b.inverse();
  }
  FieldElement operator-() const { return from_reduced(field_.neg(value_)); }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.value_; }

 private:
  FieldElement from_reduced(std::uint64_t v) const {
    FieldElement r = *this;
    r.value_ = v;
    return r;
  }
  static void check(const FieldElement& a, const FieldElement& b) {
    if (!(a.field_ == b.field_)) throw DomainError("field elements of different characteristic");
  }

  PrimeField field_;
  std::uint64_t value_;
};

}  // namespace hk
