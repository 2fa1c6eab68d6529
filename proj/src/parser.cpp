#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "qine/expr.hpp"

namespace qine {

namespace {

struct FunctionName {
  std::string_view name;
  Op op;
};

constexpr std::array<FunctionName, 5> kFunctions{{
    {"sqrt", Op::sqrt},
    {"exp", Op::exp},
    {"log", Op::log},
    {"sin", Op::sin},
    {"cos", Op::cos},
}};

const FunctionName* find_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(std::string_view text, std::size_t pos, const SymbolTable& symbols)
      : text_(text), pos_(pos), symbols_(symbols) {}

  Expression expr() {
    Expression lhs = term();
    for (;;) {
      skip_space();
      const char c = peek();
      // Stop before relational operators such as "<=" and ">=".
      if (c == '+') {
        ++pos_;
        lhs = lhs + term();
      } else if (c == '-') {
        ++pos_;
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  std::size_t pos() const { return pos_; }

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

 private:
  Expression term() {
    Expression lhs = factor();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        lhs = lhs * factor();
      } else if (c == '/') {
        ++pos_;
        lhs = lhs / factor();
      } else {
        return lhs;
      }
    }
  }

  Expression factor() {
    skip_space();
    if (peek() == '-') {
      ++pos_;
      return -factor();
    }
    Expression base = atom();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      return Expression::power(base, exponent());
    }
    return base;
  }

  Expression atom() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expression inner = expr();
      expect(')');
      return inner;
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return Expression::constant(number());
    if (is_ident_start(c)) return identifier();
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expression identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (const FunctionName* f = find_function(name)) {
      skip_space();
      if (peek() != '(') fail("function '" + std::string(name) + "' expects one argument in parentheses");
      ++pos_;
      Expression arg = expr();
      skip_space();
      if (peek() == ',') fail("function '" + std::string(name) + "' takes exactly one argument");
      expect(')');
      return Expression::unary(f->op, arg);
    }
    skip_space();
    if (peek() == '(') fail("unknown function '" + std::string(name) + "'", start);
    const auto it = symbols_.find(name);
    if (it == symbols_.end()) fail("unknown identifier '" + std::string(name) + "'", start);
    return it->second.kind == VarKind::variable ? Expression::variable(it->second.index)
                                                 : Expression::parameter(it->second.index);
  }

  double number() {
    const std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (is_digit(peek())) ++pos_;
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && is_digit(text_[p])) {
        pos_ = p;
        while (is_digit(peek())) ++pos_;
      }
    }
    double v = 0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc{} || !std::isfinite(v)) fail("invalid number", start);
    return v;
  }

  unsigned exponent() {
    const std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    if (start == pos_) fail("exponent must be a non-negative integer literal");
    unsigned v = 0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc{} || v > 1024) fail("exponent out of range", start);
    return v;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg + " at offset " + std::to_string(at), at);
  }

  std::string_view text_;
  std::size_t pos_;
  const SymbolTable& symbols_;
};

void append_number(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string_view s(buf, res.ptr - buf);
  if (v < 0 || std::signbit(v)) {
    out += '(';
    out += s;
    out += ')';
  } else {
    out += s;
  }
}

const char* op_symbol(Op op) {
  switch (op) {
    case Op::add: return " + ";
    case Op::sub: return " - ";
    case Op::mul: return " * ";
    case Op::div: return " / ";
    default: return "?";
  }
}

const char* function_name(Op op) {
  for (const auto& f : kFunctions) {
    if (f.op == op) return f.name.data();
  }
  return "?";
}

class Renderer {
 public:
  Renderer(const Expression& e, const SymbolTable& symbols) : nodes_(e.nodes()), symbols_(symbols) {}

  void node(std::size_t i, std::string& out) const {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Op::constant: append_number(out, n.value); return;
      case Op::ref: out += name(n.ref); return;
      case Op::neg:
        out += "(-";
        node(n.lhs, out);
        out += ')';
        return;
      case Op::pow: {
        const Op base = nodes_[n.lhs].op;
        const bool bare = (base == Op::ref) || (base == Op::constant && !std::signbit(nodes_[n.lhs].value));
        if (!bare) out += '(';
        node(n.lhs, out);
        if (!bare) out += ')';
        out += '^';
        out += std::to_string(n.exponent);
        return;
      }
      case Op::add:
      case Op::sub:
      case Op::mul:
      case Op::div:
        out += '(';
        node(n.lhs, out);
        out += op_symbol(n.op);
        node(n.rhs, out);
        out += ')';
        return;
      default:
        out += function_name(n.op);
        out += '(';
        node(n.lhs, out);
        out += ')';
        return;
    }
  }

 private:
  std::string name(const VarRef& r) const {
    for (const auto& [k, v] : symbols_) {
      if (v == r) return k;
    }
    return (r.kind == VarKind::variable ? "x" : "y") + std::to_string(r.index);
  }

  std::span<const Node> nodes_;
  const SymbolTable& symbols_;
};

}  // namespace

bool is_function_name(std::string_view name) { return find_function(name) != nullptr; }

Expression parse_expression(std::string_view text, const SymbolTable& symbols) {
  Parser p(text, 0, symbols);
  Expression e = p.expr();
  p.expect_end();
  return e;
}

PrefixParse parse_expression_prefix(std::string_view text, std::size_t start, const SymbolTable& symbols) {
  Parser p(text, start, symbols);
  Expression e = p.expr();
  return {std::move(e), p.pos()};
}

std::string render(const Expression& e, const SymbolTable& symbols) {
  std::string out;
  Renderer(e, symbols).node(e.root(), out);
  return out;
}

}  // namespace qine
