#include "qine/expr.hpp"

#include <algorithm>
#include <cmath>

namespace qine {

bool is_unary(Op op) {
  switch (op) {
    case Op::neg:
    case Op::pow:
    case Op::sqrt:
    case Op::exp:
    case Op::log:
    case Op::sin:
    case Op::cos:
      return true;
    default:
      return false;
  }
}

bool is_binary(Op op) { return op == Op::add || op == Op::sub || op == Op::mul || op == Op::div; }

Expression Expression::constant(double v) {
  Node n;
  n.op = Op::constant;
  n.value = v;
  return Expression({n});
}

Expression Expression::variable(std::size_t i) {
  Node n;
  n.op = Op::ref;
  n.ref = VarRef::var(i);
  return Expression({n});
}

Expression Expression::parameter(std::size_t i) {
  Node n;
  n.op = Op::ref;
  n.ref = VarRef::param(i);
  return Expression({n});
}

Expression Expression::unary(Op op, const Expression& child) {
  if (!is_unary(op) || op == Op::pow) throw std::invalid_argument("not a unary operator");
  std::vector<Node> nodes = child.nodes_;
  Node n;
  n.op = op;
  n.lhs = static_cast<std::uint32_t>(child.root());
  nodes.push_back(n);
  return Expression(std::move(nodes));
}

Expression Expression::power(const Expression& base, unsigned exponent) {
  std::vector<Node> nodes = base.nodes_;
  Node n;
  n.op = Op::pow;
  n.lhs = static_cast<std::uint32_t>(base.root());
  n.exponent = exponent;
  nodes.push_back(n);
  return Expression(std::move(nodes));
}

Expression Expression::binary(Op op, const Expression& lhs, const Expression& rhs) {
  if (!is_binary(op)) throw std::invalid_argument("not a binary operator");
  std::vector<Node> nodes = lhs.nodes_;
  const auto offset = static_cast<std::uint32_t>(nodes.size());
  for (Node n : rhs.nodes_) {
    if (is_unary(n.op)) n.lhs += offset;
    if (is_binary(n.op)) {
      n.lhs += offset;
      n.rhs += offset;
    }
    nodes.push_back(n);
  }
  Node n;
  n.op = op;
  n.lhs = static_cast<std::uint32_t>(lhs.root());
  n.rhs = static_cast<std::uint32_t>(nodes.size() - 1);
  nodes.push_back(n);
  return Expression(std::move(nodes));
}

std::size_t Expression::variable_arity() const {
  std::size_t n = 0;
  for (const auto& node : nodes_) {
    if (node.op == Op::ref && node.ref.kind == VarKind::variable) n = std::max(n, node.ref.index + 1);
  }
  return n;
}

std::size_t Expression::parameter_arity() const {
  std::size_t n = 0;
  for (const auto& node : nodes_) {
    if (node.op == Op::ref && node.ref.kind == VarKind::parameter) n = std::max(n, node.ref.index + 1);
  }
  return n;
}

Expression operator-(const Expression& a) { return Expression::unary(Op::neg, a); }
Expression operator+(const Expression& a, const Expression& b) { return Expression::binary(Op::add, a, b); }
Expression operator-(const Expression& a, const Expression& b) { return Expression::binary(Op::sub, a, b); }
Expression operator*(const Expression& a, const Expression& b) { return Expression::binary(Op::mul, a, b); }
Expression operator/(const Expression& a, const Expression& b) { return Expression::binary(Op::div, a, b); }

namespace {

const Interval& leaf(const VarRef& r, const Box& x, const Box& y) {
  const Box& b = r.kind == VarKind::variable ? x : y;
  if (r.index >= b.size()) throw std::out_of_range("expression references an undeclared symbol");
  return b[r.index];
}

Interval apply(const Node& n, const Interval& a, const Interval& b) {
  switch (n.op) {
    case Op::neg: return -a;
    case Op::add: return a + b;
    case Op::sub: return a - b;
    case Op::mul: return a * b;
    case Op::div: return a / b;
    case Op::pow: return pow(a, n.exponent);
    case Op::sqrt: return sqrt(a);
    case Op::exp: return exp(a);
    case Op::log: return log(a);
    case Op::sin: return sin(a);
    case Op::cos: return cos(a);
    default: break;
  }
  throw std::logic_error("apply: leaf node");
}

}  // namespace

Interval evaluate_nodes(const Expression& e, const Box& x, const Box& y, std::vector<Interval>& values) {
  const auto nodes = e.nodes();
  values.assign(nodes.size(), Interval::empty());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.op == Op::constant) {
      values[i] = Interval(n.value);
    } else if (n.op == Op::ref) {
      values[i] = leaf(n.ref, x, y);
    } else {
      const Interval& a = values[n.lhs];
      const Interval& b = is_binary(n.op) ? values[n.rhs] : a;
      values[i] = apply(n, a, b);
    }
  }
  return values.back();
}

Interval eval_interval(const Expression& e, const Box& x, const Box& y) {
  std::vector<Interval> values;
  return evaluate_nodes(e, x, y, values);
}

double eval_point(const Expression& e, std::span<const double> x, std::span<const double> y) {
  const auto nodes = e.nodes();
  std::vector<double> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    const double a = n.op == Op::constant || n.op == Op::ref ? 0.0 : v[n.lhs];
    const double b = is_binary(n.op) ? v[n.rhs] : 0.0;
    switch (n.op) {
      case Op::constant: v[i] = n.value; break;
      case Op::ref: {
        const auto s = n.ref.kind == VarKind::variable ? x : y;
        if (n.ref.index >= s.size()) throw std::out_of_range("expression references an undeclared symbol");
        v[i] = s[n.ref.index];
        break;
      }
      case Op::neg: v[i] = -a; break;
      case Op::add: v[i] = a + b; break;
      case Op::sub: v[i] = a - b; break;
      case Op::mul: v[i] = a * b; break;
      case Op::div: v[i] = b == 0 ? std::nan("") : a / b; break;
      case Op::pow: v[i] = std::pow(a, static_cast<int>(n.exponent)); break;
      case Op::sqrt: v[i] = std::sqrt(a); break;
      case Op::exp: v[i] = std::exp(a); break;
      case Op::log: v[i] = a <= 0 ? std::nan("") : std::log(a); break;
      case Op::sin: v[i] = std::sin(a); break;
      case Op::cos: v[i] = std::cos(a); break;
    }
  }
  return v.back();
}

Interval derivative_interval(const Expression& e, std::size_t param, const Box& x, const Box& y) {
  struct Dual {
    Interval v;
    Interval d;
  };
  const auto nodes = e.nodes();
  std::vector<Dual> t(nodes.size());
  const Interval zero(0.0), one(1.0), two(2.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.op == Op::constant) {
      t[i] = {Interval(n.value), zero};
      continue;
    }
    if (n.op == Op::ref) {
      const bool seed = n.ref.kind == VarKind::parameter && n.ref.index == param;
      t[i] = {leaf(n.ref, x, y), seed ? one : zero};
      continue;
    }
    const Dual& a = t[n.lhs];
    const Dual& b = is_binary(n.op) ? t[n.rhs] : a;
    Dual r;
    r.v = apply(n, a.v, b.v);
    switch (n.op) {
      case Op::neg: r.d = -a.d; break;
      case Op::add: r.d = a.d + b.d; break;
      case Op::sub: r.d = a.d - b.d; break;
      case Op::mul: r.d = a.d * b.v + a.v * b.d; break;
      case Op::div: r.d = (a.d - r.v * b.d) / b.v; break;
      case Op::pow:
        r.d = n.exponent == 0 ? zero
                              : Interval(static_cast<double>(n.exponent)) * pow(a.v, n.exponent - 1) * a.d;
        break;
      case Op::sqrt: r.d = a.d / (two * r.v); break;
      case Op::exp: r.d = r.v * a.d; break;
      case Op::log: r.d = a.d / a.v; break;
      case Op::sin: r.d = cos(a.v) * a.d; break;
      case Op::cos: r.d = -sin(a.v) * a.d; break;
      default: break;
    }
    // A tangent that is identically zero stays exact even when the value is unbounded.
    if (r.v.is_empty()) {
      r.d = Interval::empty();
    } else if (a.d == zero && b.d == zero) {
      r.d = zero;
    }
    t[i] = r;
  }
  return t.back().d;
}

}  // namespace qine
