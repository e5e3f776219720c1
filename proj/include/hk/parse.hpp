#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "hk/polynomial.hpp"

namespace hk {

// Grammar (whitespace ignored):
//   polynomial := ["-"] term (("+" | "-") term)*
//   term       := coeff | [coeff "*"] factor ("*" factor)*
//   factor     := var ["^" uint]
class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, PolyContextPtr ctx) : text_(text), ctx_(std::move(ctx)) {
    if (ctx_->names.empty()) throw ConfigError("polynomial parsing needs variable names");
  }

  Polynomial parse() {
    Polynomial result(ctx_);
    skip_ws();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    result = parse_term(negative);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      ++pos_;
      result = result + parse_term(c == '-');
    }
    return result;
  }

 private:
  Polynomial parse_term(bool negative) {
    skip_ws();
    std::uint64_t coeff = 1;
    Monomial m(ctx_->nvars());
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = ctx_->field.reduce(static_cast<std::int64_t>(parse_uint() % ctx_->field.characteristic()));
      skip_ws();
      if (peek() != '*') return finish(coeff, m, negative);
      ++pos_;
    }
    for (;;) {
      skip_ws();
      auto var = parse_var();
      std::uint64_t e = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
        e = parse_uint();
      }
      m[var] = detail::checked_add(m[var], e);
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return finish(coeff, m, negative);
  }

  Polynomial finish(std::uint64_t coeff, Monomial m, bool negative) {
    auto c = negative ? ctx_->field.neg(coeff) : coeff;
    return Polynomial::monomial(ctx_, std::move(m), static_cast<std::int64_t>(c));
  }

  std::size_t parse_var() {
    std::size_t start = pos_;
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail("expected variable");
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    for (std::size_t i = 0; i < ctx_->names.size(); ++i)
      if (ctx_->names[i] == name) return i;
    pos_ = start;
    fail("unknown variable '" + std::string(name) + "'");
  }

  std::uint64_t parse_uint() {
    std::uint64_t v = 0;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = detail::checked_add(detail::checked_mul(v, 10), static_cast<std::uint64_t>(peek() - '0'));
      ++pos_;
    }
    return v;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("malformed polynomial '" + std::string(text_) + "': " + msg, pos_);
  }

  std::string_view text_;
  PolyContextPtr ctx_;
  std::size_t pos_ = 0;
};

inline Polynomial parse_polynomial(std::string_view text, const PolyContextPtr& ctx) {
  return PolynomialParser(text, ctx).parse();
}

}  // namespace hk
