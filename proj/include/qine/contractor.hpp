// Hull-consistency (2B) contraction of a single inequality by one
// forward-backward sweep over the expression tree (HC4-revise).
#pragma once

#include <vector>

#include "qine/box.hpp"
#include "qine/expr.hpp"

namespace qine {

enum class Relation { le_zero, ge_zero };

struct InequalityConstraint {
  Expression f;
  Relation relation = Relation::le_zero;
};

struct Contraction {
  Box x;
  Box y;
  /// The constraint has no solution in the input boxes; x and y are then empty.
  bool empty = false;
};

/// One forward evaluation pass and one backward projection pass.
///
/// The result is contained in (x, y) and keeps every point of (x, y) that
/// satisfies the constraint.  No fixpoint iteration is performed, so applying
/// it again may contract further.
Contraction hc4_revise(const InequalityConstraint& c, const Box& x, const Box& y);

/// Narrows the children of `node` given the (already narrowed) interval of the
/// node itself.  `rhs` is ignored for unary nodes.  Children are intersected
/// in place and may become empty.
void backward_project(const Node& node, const Interval& node_value, Interval& lhs, Interval& rhs);

}  // namespace qine
