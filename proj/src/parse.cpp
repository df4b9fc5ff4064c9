#include "dwork/parse.hpp"

#include "dwork/errors.hpp"

#include <cctype>
#include <limits>

namespace dwork {

namespace {

constexpr long kMaxExponent = 10000;

class Parser {
 public:
  Parser(std::string_view text, ContextPtr ctx) : text_(text), ctx_(std::move(ctx)) {}

  SuperElement run() {
    skip_space();
    if (at_end()) fail("empty expression");
    SuperElement e = expr();
    skip_space();
    if (!at_end()) {
      if (text_[pos_] == ')') fail("unbalanced ')'");
      fail(std::string("unexpected '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  SuperElement expr() {
    SuperElement acc(ctx_);
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    SuperElement t = term();
    acc = negate ? -t : t;
    for (;;) {
      skip_space();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      SuperElement rhs = term();
      if (c == '+')
        acc += rhs;
      else
        acc -= rhs;
    }
    return acc;
  }

  SuperElement term() {
    SuperElement acc = factor();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = multiply(acc, factor());
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '(') {
        fail("implicit multiplication; use '*'");
      } else {
        break;
      }
    }
    return acc;
  }

  mpz_class digits(const char* what) {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  long small_number(const char* what) {
    const std::size_t start = pos_;
    mpz_class v = digits(what);
    if (v > kMaxExponent) fail_at(start, std::string(what) + " too large");
    return v.get_si();
  }

  SuperElement factor() {
    skip_space();
    const std::size_t start = pos_;
    const char c = peek();
    if (at_end()) fail("unexpected end of input");
    if (c == '(') {
      ++pos_;
      SuperElement inner = expr();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = digits("integer");
      mpz_class den = 1;
      if (peek() == '/') {
        ++pos_;
        const std::size_t at = pos_;
        den = digits("denominator");
        if (den == 0) fail_at(at, "zero denominator");
      }
      return SuperElement::constant(ctx_, Rational(num, den));
    }
    if (c == 'x' || c == 'y' || c == 'e') {
      ++pos_;
      const long index = small_number("variable index");
      long exponent = 1;
      skip_space();
      if (peek() == '^') {
        ++pos_;
        skip_space();
        exponent = small_number("exponent");
      }
      return variable(c, index, exponent, start);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  SuperElement variable(char kind, long index, long exponent, std::size_t at) {
    const VariableContext& ctx = *ctx_;
    const std::string name = kind + std::to_string(index);
    int mu = -1;
    if (kind == 'x') {
      if (index > ctx.n()) fail_at(at, name + " out of range x0..x" + std::to_string(ctx.n()));
      mu = ctx.k() + static_cast<int>(index);
    } else if (kind == 'y') {
      if (index < 1 || index > ctx.k()) fail_at(at, name + " out of range y1..y" + std::to_string(ctx.k()));
      mu = static_cast<int>(index) - 1;
    } else {
      if (index < 1 || index > ctx.size()) fail_at(at, name + " out of range e1..e" + std::to_string(ctx.size()));
      if (exponent > 1) fail_at(at, "odd variable " + name + " raised to a power above 1");
      if (exponent == 0) return SuperElement::constant(ctx_, Rational(1));
      return SuperElement::eta(ctx_, static_cast<int>(index) - 1);
    }
    SuperMonomial m(static_cast<std::size_t>(ctx.size()));
    m.exponents[static_cast<std::size_t>(mu)] = static_cast<int>(exponent);
    return SuperElement::monomial(ctx_, std::move(m));
  }

  std::string_view text_;
  ContextPtr ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

SuperElement parse(std::string_view text, const ContextPtr& ctx) { return Parser(text, ctx).run(); }

std::string render_monomial(const VariableContext& ctx, const SuperMonomial& m) {
  std::string out;
  auto append = [&](const std::string& s) {
    if (!out.empty()) out += '*';
    out += s;
  };
  for (int mu = 0; mu < ctx.size(); ++mu) {
    const int e = m.exponents[static_cast<std::size_t>(mu)];
    if (e == 0) continue;
    append(e == 1 ? ctx.q_name(mu) : ctx.q_name(mu) + "^" + std::to_string(e));
  }
  for (int mu : m.eta_indices()) append(ctx.eta_name(mu));
  return out.empty() ? "1" : out;
}

std::string render(const SuperElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  const auto terms = a.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c.sign() < 0;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const Rational mag = c.abs();
    const bool constant = m.eta == 0 && m.total_q_degree() == 0;
    if (constant) {
      out += mag.str();
    } else {
      if (!mag.is_one()) out += mag.str() + "*";
      out += render_monomial(a.ctx(), m);
    }
  }
  return out;
}

}  // namespace dwork
