// Expression trees for constraint functions f(x, y), their textual syntax,
// interval evaluation and interval forward-mode differentiation.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qine/box.hpp"
#include "qine/interval.hpp"

namespace qine {

enum class VarKind : std::uint8_t { variable, parameter };

struct VarRef {
  VarKind kind = VarKind::variable;
  std::size_t index = 0;

  static VarRef var(std::size_t i) { return {VarKind::variable, i}; }
  static VarRef param(std::size_t i) { return {VarKind::parameter, i}; }
  friend bool operator==(const VarRef&, const VarRef&) = default;
};

enum class Op : std::uint8_t {
  constant,
  ref,
  neg,
  add,
  sub,
  mul,
  div,
  pow,
  sqrt,
  exp,
  log,
  sin,
  cos,
};

bool is_unary(Op op);
bool is_binary(Op op);

/// One node of an expression, stored in post-order: children always precede
/// their parent, so a single forward sweep evaluates the whole tree.
struct Node {
  Op op = Op::constant;
  std::uint32_t lhs = 0;  // child index for unary and binary nodes
  std::uint32_t rhs = 0;  // second child for binary nodes
  double value = 0.0;     // constant value
  VarRef ref;             // leaf reference
  unsigned exponent = 0;  // pow exponent

  friend bool operator==(const Node&, const Node&) = default;
};

/// An immutable expression.  The root is the last node.
class Expression {
 public:
  Expression() : Expression(constant(0.0)) {}

  static Expression constant(double v);
  static Expression variable(std::size_t i);
  static Expression parameter(std::size_t i);
  static Expression unary(Op op, const Expression& child);
  static Expression binary(Op op, const Expression& lhs, const Expression& rhs);
  static Expression power(const Expression& base, unsigned exponent);

  std::span<const Node> nodes() const { return nodes_; }
  std::size_t root() const { return nodes_.size() - 1; }
  const Node& root_node() const { return nodes_.back(); }

  /// One past the largest variable / parameter index referenced.
  std::size_t variable_arity() const;
  std::size_t parameter_arity() const;

  friend bool operator==(const Expression& a, const Expression& b) { return a.nodes_ == b.nodes_; }

 private:
  explicit Expression(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}
  std::vector<Node> nodes_;
};

Expression operator-(const Expression& a);
Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);

// ---------------------------------------------------------------------------
// Evaluation

/// Natural interval extension: fills `values` with one interval per node and
/// returns the root interval.  Empty whenever some partial operator has an
/// empty domain intersection.
Interval evaluate_nodes(const Expression& e, const Box& x, const Box& y, std::vector<Interval>& values);
Interval eval_interval(const Expression& e, const Box& x, const Box& y);

/// Plain floating-point evaluation; domain errors yield NaN.
double eval_point(const Expression& e, std::span<const double> x, std::span<const double> y);

/// Encloses d f / d y_j over x * y by propagating value/tangent interval pairs.
Interval derivative_interval(const Expression& e, std::size_t param, const Box& x, const Box& y);

// ---------------------------------------------------------------------------
// Text syntax
//
//   expr     := term (("+" | "-") term)*
//   term     := factor (("*" | "/") factor)*
//   factor   := "-" factor | atom ("^" integer)?
//   atom     := number | identifier | function "(" expr ")" | "(" expr ")"
//   function := "sqrt" | "exp" | "log" | "sin" | "cos"

using SymbolTable = std::map<std::string, VarRef, std::less<>>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  /// Byte offset into the parsed text.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

bool is_function_name(std::string_view name);

/// Parses the whole of `text`.  Throws ParseError.
Expression parse_expression(std::string_view text, const SymbolTable& symbols);

struct PrefixParse {
  Expression expr;
  std::size_t end;  // offset of the first unconsumed character
};

/// Parses the longest expression starting at `start`, leaving trailing text alone.
PrefixParse parse_expression_prefix(std::string_view text, std::size_t start,
                                    const SymbolTable& symbols);

/// Fully parenthesized infix form that parses back to an identical tree.
/// Leaves are printed using `symbols` (reverse lookup), or as x<i> / y<i>
/// when no name is registered.
std::string render(const Expression& e, const SymbolTable& symbols = {});

}  // namespace qine
