#include "jets/parser.hpp"

#include <cctype>
#include <charconv>

#include "jets/error.hpp"

namespace jets {

bool looks_like_jet_symbol(std::string_view name) {
  return name.size() >= 2 && name[0] == 'd' && std::isdigit(static_cast<unsigned char>(name[1]));
}

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char ch : name)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return true;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VariableScope& scope, const CoefficientRing& ring)
      : text_(text), scope_(scope), ring_(ring) {}

  Polynomial parse() {
    Polynomial result = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    while (accept('*')) acc *= power();
    skip_space();
    if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                text_[pos_] == '('))
      fail("missing '*' (juxtaposition is not multiplication)");
    return acc;
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      mpz_class e = integer_literal();
      if (!e.fits_uint_p()) {
        pos_ = start;
        fail("exponent too large");
      }
      return base.pow(static_cast<std::uint32_t>(e.get_ui()));
    }
    return base;
  }

  mpz_class integer_literal() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    const char ch = peek();
    if (ch == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (ch == '-') {
      ++pos_;
      return -primary();
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      mpq_class value(integer_literal());
      if (accept('/')) {
        mpz_class den = integer_literal();
        if (den == 0) {
          pos_ = start;
          fail("zero denominator");
        }
        value = mpq_class(value.get_num(), den);
        value.canonicalize();
      }
      try {
        return Polynomial::constant(ring_, ring_.from_rational(value));
      } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " (at position " + std::to_string(start) +
                          ")");
      }
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) return identifier();
    if (ch == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  Polynomial identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (scope_.count(name)) return Polynomial::variable(ring_, var(name));
    if (looks_like_jet_symbol(name)) {
      std::size_t digits_end = 1;
      while (digits_end < name.size() && std::isdigit(static_cast<unsigned char>(name[digits_end])))
        ++digits_end;
      const std::string base = name.substr(digits_end);
      std::uint32_t order = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + digits_end, order);
      if (ec == std::errc() && ptr == name.data() + digits_end && scope_.count(base))
        return Polynomial::variable(ring_, var(base, order));
    }
    pos_ = start;
    fail("undeclared identifier '" + name + "'");
  }

  std::string_view text_;
  const VariableScope& scope_;
  const CoefficientRing& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, const VariableScope& scope,
                      const CoefficientRing& ring) {
  return Parser(text, scope, ring).parse();
}

}  // namespace jets
