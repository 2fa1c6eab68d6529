#include "qine/contractor.hpp"

namespace qine {

namespace {

// Preimage of n under multiplication by b.  When both contain zero, the
// factor b = 0 admits any partner, so nothing can be removed.
Interval quotient_preimage(const Interval& n, const Interval& b) {
  if (n.contains_zero() && b.contains_zero()) return Interval::entire();
  return n / b;
}

}  // namespace

void backward_project(const Node& node, const Interval& n, Interval& a, Interval& b) {
  switch (node.op) {
    case Op::neg: a = intersect(a, -n); break;
    case Op::add:
      a = intersect(a, n - b);
      b = intersect(b, n - a);
      break;
    case Op::sub:
      a = intersect(a, n + b);
      b = intersect(b, a - n);
      break;
    case Op::mul:
      a = intersect(a, quotient_preimage(n, b));
      b = intersect(b, quotient_preimage(n, a));
      break;
    case Op::div:
      // n = a / b with b != 0, so a = n * b and b = a / n.
      a = intersect(a, n * b);
      b = intersect(b, quotient_preimage(a, n));
      break;
    case Op::pow: a = pow_preimage(n, node.exponent, a); break;
    case Op::sqrt: a = intersect(a, sqr(intersect(n, Interval::non_negative()))); break;
    case Op::exp: a = intersect(a, log(n)); break;
    case Op::log: a = intersect(a, exp(n)); break;
    case Op::sin: a = sin_preimage(n, a); break;
    case Op::cos: a = cos_preimage(n, a); break;
    case Op::constant:
    case Op::ref: break;
  }
}

Contraction hc4_revise(const InequalityConstraint& c, const Box& x, const Box& y) {
  const auto infeasible = [&] { return Contraction{Box::empty(x.size()), Box::empty(y.size()), true}; };
  if (x.is_empty() || y.is_empty()) return infeasible();

  std::vector<Interval> values;
  evaluate_nodes(c.f, x, y, values);

  const auto nodes = c.f.nodes();
  const std::size_t root = c.f.root();
  const Interval target = c.relation == Relation::le_zero ? Interval::non_positive() : Interval::non_negative();
  values[root] = intersect(values[root], target);
  if (values[root].is_empty()) return infeasible();

  Contraction out{x, y, false};
  Interval unused = Interval::empty();
  for (std::size_t k = nodes.size(); k-- > 0;) {
    const Node& node = nodes[k];
    if (node.op == Op::ref) {
      Box& dom = node.ref.kind == VarKind::variable ? out.x : out.y;
      dom[node.ref.index] = intersect(dom[node.ref.index], values[k]);
      if (dom[node.ref.index].is_empty()) return infeasible();
      continue;
    }
    if (node.op == Op::constant) continue;
    Interval& a = values[node.lhs];
    Interval& b = is_binary(node.op) ? values[node.rhs] : unused;
    backward_project(node, values[k], a, b);
    if (a.is_empty() || (is_binary(node.op) && b.is_empty())) return infeasible();
  }
  return out;
}

}  // namespace qine
