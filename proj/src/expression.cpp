#include "gcontact/expression.hpp"

#include <cctype>

namespace gcontact {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ChartPtr& chart) : text_(text), chart_(chart) {}

  GradedPoly parse() {
    skip();
    if (at_end()) fail("empty expression");
    GradedPoly out = expr();
    skip();
    if (!at_end()) {
      if (peek() == '/') fail("division is not supported");
      fail(std::string("unexpected '") + peek() + "'");
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_ + 1); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  GradedPoly expr() {
    GradedPoly out = term();
    for (;;) {
      if (accept('+')) {
        out += term();
      } else if (accept('-')) {
        out -= term();
      } else {
        return out;
      }
    }
  }

  GradedPoly term() {
    GradedPoly out = unary();
    while (accept('*')) out = out * unary();
    skip();
    if (peek() == '/') fail("division is not supported");
    return out;
  }

  GradedPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  std::string digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out += text_[pos_++];
    return out;
  }

  GradedPoly power() {
    skip();
    const std::size_t start = pos_;
    auto [base, generator] = atom();
    if (!accept('^')) return base;
    skip();
    const bool negative = accept('-');
    skip();
    const std::size_t at = pos_;
    const std::string e = digits();
    if (e.empty()) fail("expected an integer exponent");
    if (e.size() > 6) {
      pos_ = at;
      fail("exponent too large");
    }
    const int k = std::stoi(e);
    if (negative) {
      if (generator < 0 || chart_->generator(std::size_t(generator)).kind != GeneratorKind::exponential) {
        pos_ = start;
        fail("negative powers are only allowed on the exponential generator");
      }
      Exponents m(chart_->size(), 0);
      m[std::size_t(generator)] = -k;
      return GradedPoly::monomial(chart_, m);
    }
    GradedPoly out = GradedPoly::constant(chart_, 1);
    for (int i = 0; i < k; ++i) out = out * base;
    return out;
  }

  std::pair<GradedPoly, long> atom() {
    skip();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      GradedPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return {inner, -1};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string den;
      if (peek() == '/') {
        ++pos_;
        den = digits();
        if (den.empty()) {
          --pos_;
          fail("division is not supported");
        }
      }
      if (peek() == '.') fail("decimal numbers are not supported; write a rational such as 1/2");
      Rational q(num + (den.empty() ? "" : "/" + den));
      if (!den.empty() && q.get_den() == 0) fail("zero denominator");
      q.canonicalize();
      return {GradedPoly::constant(chart_, q), -1};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      std::string name;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) name += text_[pos_++];
      auto g = chart_->find(name);
      if (!g) {
        pos_ = start;
        fail("unknown generator '" + name + "'");
      }
      return {GradedPoly::generator(chart_, *g), long(*g)};
    }
    if (at_end()) fail("unexpected end of expression");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const ChartPtr& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

GradedPoly parse_expression(std::string_view text, const ChartPtr& chart) { return Parser(text, chart).parse(); }

}  // namespace gcontact
