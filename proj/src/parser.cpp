#include "quomm/parser.hpp"

#include <cctype>

namespace quomm {

ParseError::ParseError(const std::string& message, std::size_t offset)
    : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

bool ExprAst::operator==(const ExprAst& o) const {
  return kind == o.kind && children == o.children && number == o.number && name == o.name &&
         generator == o.generator && exponent == o.exponent;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int n) : text_(text), n_(n) {}

  ExprAst parse() {
    ExprAst e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static ExprAst wrap(ExprAst::Kind kind, std::vector<ExprAst> children) {
    ExprAst a;
    a.kind = kind;
    a.children = std::move(children);
    return a;
  }

  ExprAst expr() {
    std::vector<ExprAst> terms;
    if (accept('-')) {
      terms.push_back(wrap(ExprAst::Kind::negation, {term()}));
    } else {
      accept('+');
      terms.push_back(term());
    }
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(wrap(ExprAst::Kind::negation, {term()}));
      } else {
        break;
      }
    }
    if (terms.size() == 1 && terms[0].kind != ExprAst::Kind::negation) return std::move(terms[0]);
    return wrap(ExprAst::Kind::sum, std::move(terms));
  }

  ExprAst term() {
    ExprAst acc = factor();
    for (;;) {
      if (accept('*')) {
        append_product(acc, factor());
      } else if (accept('/')) {
        acc = wrap(ExprAst::Kind::quotient, {std::move(acc), factor()});
      } else if (peek('(')) {
        append_product(acc, factor());
      } else {
        break;
      }
    }
    return acc;
  }

  static void append_product(ExprAst& acc, ExprAst next) {
    if (acc.kind == ExprAst::Kind::product) {
      acc.children.push_back(std::move(next));
    } else {
      acc = wrap(ExprAst::Kind::product, {std::move(acc), std::move(next)});
    }
  }

  ExprAst factor() {
    ExprAst base = primary();
    if (accept('^')) {
      skip_ws();
      const bool neg = accept('-');
      skip_ws();
      const std::size_t start = pos_;
      const Integer v = digits();
      if (!v.fits_sint_p()) throw ParseError("exponent too large", start);
      ExprAst p = wrap(ExprAst::Kind::power, {std::move(base)});
      p.exponent = static_cast<int>(v.get_si()) * (neg ? -1 : 1);
      return p;
    }
    return base;
  }

  Integer digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  int index() {
    const std::size_t start = pos_;
    skip_ws();
    const std::size_t at = pos_;
    const Integer v = digits();
    (void)start;
    if (v < 1 || v > n_) throw ParseError("index out of range (1.." + std::to_string(n_) + ")", at);
    return static_cast<int>(v.get_si());
  }

  ExprAst primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprAst inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ExprAst a;
      a.kind = ExprAst::Kind::number;
      a.number = digits();
      return a;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string ident(text_.substr(start, pos_ - start));
      if (peek('(')) {
        if (ident != "E" && ident != "V" && ident != "Vb") {
          throw ParseError("unknown generator '" + ident + "'", start);
        }
        expect('(');
        ExprAst a;
        a.kind = ExprAst::Kind::generator;
        const int i = index();
        if (ident == "E") {
          expect(',');
          const int j = index();
          a.generator = Generator::E(i, j);
        } else {
          a.generator = ident == "V" ? Generator::V(i) : Generator::Vb(i);
        }
        expect(')');
        return a;
      }
      ExprAst a;
      a.kind = ExprAst::Kind::parameter;
      a.name = ident;
      return a;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

bool atomic(const ExprAst& a) {
  return a.kind == ExprAst::Kind::number || a.kind == ExprAst::Kind::parameter ||
         a.kind == ExprAst::Kind::generator;
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string render_negated(const ExprAst& inner) {
  const bool wrap = inner.kind == ExprAst::Kind::sum || inner.kind == ExprAst::Kind::negation;
  return wrap ? paren(render(inner)) : render(inner);
}

}  // namespace

ExprAst parse_expression(std::string_view text, int n) { return Parser(text, n).parse(); }

std::string render(const ExprAst& a) {
  using K = ExprAst::Kind;
  switch (a.kind) {
    case K::number:
      return a.number.get_str();
    case K::parameter:
      return a.name;
    case K::generator:
      return a.generator.name();
    case K::negation:
      return "-" + render_negated(a.children[0]);
    case K::sum: {
      std::string out;
      for (std::size_t i = 0; i < a.children.size(); ++i) {
        const ExprAst& c = a.children[i];
        if (c.kind == K::negation) {
          out += (i == 0 ? "-" : " - ") + render_negated(c.children[0]);
        } else {
          if (i > 0) out += " + ";
          out += c.kind == K::sum ? paren(render(c)) : render(c);
        }
      }
      return out;
    }
    case K::product: {
      std::string out;
      for (std::size_t i = 0; i < a.children.size(); ++i) {
        const ExprAst& c = a.children[i];
        if (i > 0) out += "*";
        const bool first_ok = i == 0 && c.kind == K::quotient;
        const bool wrap = !(atomic(c) || c.kind == K::power || first_ok);
        out += wrap ? paren(render(c)) : render(c);
      }
      return out;
    }
    case K::quotient: {
      const ExprAst& num = a.children[0];
      const ExprAst& den = a.children[1];
      const bool wrap_num = num.kind == K::sum || num.kind == K::negation;
      const bool wrap_den = !(atomic(den) || den.kind == K::power);
      return (wrap_num ? paren(render(num)) : render(num)) + "/" +
             (wrap_den ? paren(render(den)) : render(den));
    }
    case K::power: {
      const ExprAst& b = a.children[0];
      return (atomic(b) ? render(b) : paren(render(b))) + "^" + std::to_string(a.exponent);
    }
  }
  return {};
}

namespace {

bool is_scalar(const Expression& e) {
  return e.is_zero() || (e.size() == 1 && e.terms().begin()->first.empty());
}

Scalar as_scalar(const Expression& e, const std::string& what) {
  if (!is_scalar(e)) throw std::invalid_argument(std::string(what) + " must be a scalar");
  return e.is_zero() ? Scalar() : e.terms().begin()->second;
}

}  // namespace

Expression to_expression(const ExprAst& a, const std::optional<std::set<Param>>& allowed) {
  using K = ExprAst::Kind;
  switch (a.kind) {
    case K::number:
      return Expression(Scalar(Rational(a.number)));
    case K::parameter: {
      const Param p{a.name};
      if (allowed && allowed->count(p) == 0) {
        throw std::invalid_argument("unknown parameter '" + a.name + "'");
      }
      return Expression(Scalar(p));
    }
    case K::generator:
      return Expression(a.generator);
    case K::negation:
      return -to_expression(a.children[0], allowed);
    case K::sum: {
      Expression out;
      for (const auto& c : a.children) out += to_expression(c, allowed);
      return out;
    }
    case K::product: {
      Expression out(Scalar(1));
      for (const auto& c : a.children) out = out * to_expression(c, allowed);
      return out;
    }
    case K::quotient: {
      const Scalar den = as_scalar(to_expression(a.children[1], allowed), "divisor");
      if (den.is_zero()) throw DivisionByZero("division by zero in expression");
      return to_expression(a.children[0], allowed) * (Scalar(1) / den);
    }
    case K::power: {
      const Expression base = to_expression(a.children[0], allowed);
      if (a.exponent < 0) {
        return Expression(as_scalar(base, "base of a negative power").pow(a.exponent));
      }
      Expression out(Scalar(1));
      for (int i = 0; i < a.exponent; ++i) out = out * base;
      return out;
    }
  }
  return {};
}

Scalar parse_scalar(std::string_view text, const std::optional<std::set<Param>>& allowed) {
  const Expression e = to_expression(parse_expression(text, 0), allowed);
  return as_scalar(e, "scalar literal");
}

}  // namespace quomm
