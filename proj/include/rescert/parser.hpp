#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "rescert/poly.hpp"

namespace rescert {

// Splits "base^k" at top level. Returns nullopt unless the whole text is a
// parenthesised group or identifier raised to an integer power.
struct PowerForm {
  std::string base;
  unsigned exponent = 1;
};
std::optional<PowerForm> split_power_form(std::string_view text);

// Splits a comma separated argument list at parenthesis depth zero.
std::vector<std::string> split_top_level_commas(std::string_view text);

std::string trim(std::string_view s);

// Recursive-descent parser for
//   expr  := term (('+'|'-') term)*
//   term  := unary ('*' unary)*
//   unary := ('+'|'-') unary | power
//   power := atom ('^' integer)?
//   atom  := integer ('/' integer)? | identifier | '(' expr ')'
// Identifiers resolve to registry variables first, then to `resolve`.
template <class Ring>
class PolyParser {
 public:
  using Poly = MultiPoly<Ring>;
  using Resolver = std::function<const Poly*(const std::string&)>;

  PolyParser(RegistryPtr reg, Ring ring, Resolver resolve = nullptr)
      : reg_(std::move(reg)), ring_(std::move(ring)), resolve_(std::move(resolve)) {}

  Poly parse(std::string_view text) {
    src_ = text;
    pos_ = 0;
    skip_ws();
    if (pos_ >= src_.size()) fail("empty expression");
    Poly p = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, msg + " at column " + std::to_string(pos_ + 1) + " in '" +
                                           std::string(src_) + "'");
  }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::string(src_.substr(start, pos_ - start));
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }
  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }
  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      const std::string e = digits();
      if (e.size() > 6) fail("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }
  Poly atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(digits());
      Integer den(1);
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        den = Integer(digits());
        if (den == 0) fail("zero denominator");
      }
      return Poly::constant(reg_, ring_, ring_.from_rational(make_rational(num, den)));
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             ((src_[pos_] >= 'a' && src_[pos_] <= 'z') || std::isdigit(static_cast<unsigned char>(src_[pos_])))) {
        ++pos_;
      }
      const std::string name(src_.substr(start, pos_ - start));
      if (auto v = reg_->find(name)) return Poly::variable(reg_, ring_, *v);
      if (resolve_) {
        if (const Poly* p = resolve_(name)) return *p;
      }
      throw Error(ErrorKind::UndefinedName, "'" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  RegistryPtr reg_;
  Ring ring_;
  Resolver resolve_;
  std::string_view src_;
  std::size_t pos_ = 0;
};

template <class Ring>
MultiPoly<Ring> parse_poly(std::string_view text, RegistryPtr reg, Ring ring) {
  return PolyParser<Ring>(std::move(reg), std::move(ring)).parse(text);
}

inline QPoly parse_qpoly(std::string_view text, RegistryPtr reg) {
  return parse_poly<RationalRing>(text, std::move(reg), RationalRing{});
}

}  // namespace rescert
