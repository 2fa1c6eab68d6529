// Branch and prune for  exists x in X, forall y in Y:  f_1(x,y) <= 0 and ... and f_p(x,y) <= 0.
//
// The solver works on a CSP over x whose constraints each carry their own
// copy of the parameter domain.  Those domains shrink independently while
// the search proceeds (negation-based domain pruning, bisection and
// derivative-based instantiation), and always keep the solution set of the
// node unchanged.
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qine/box.hpp"
#include "qine/expr.hpp"

namespace qine {

struct Problem {
  std::string name;
  std::vector<std::string> variable_names;
  std::vector<std::string> parameter_names;
  Box variables;   // initial x
  Box parameters;  // initial y
  /// Each constraint reads f(x, y) <= 0.
  std::vector<Expression> constraints;

  /// Name -> reference for every declared variable and parameter.
  SymbolTable symbols() const;
  /// Throws std::invalid_argument when the problem is malformed.
  void validate() const;
};

/// forall y in param_domain: f(x, y) <= 0.  A degenerate coordinate of
/// param_domain is an instantiated parameter.
struct QuantifiedConstraint {
  std::shared_ptr<const Expression> f;
  Box param_domain;
  std::size_t source_id = 0;
};

using ConstraintStore = std::vector<QuantifiedConstraint>;

struct SearchNode {
  ConstraintStore store;
  Box box;
};

struct Paving;

enum class Mode {
  hc4,       // "2B": hull-consistency contractor only
  hc4_plus,  // "2B+": plus derivative-based parameter instantiation
};

struct SolverConfig {
  double epsilon = 1e-3;
  std::optional<double> stop_ratio;
  Mode mode = Mode::hc4_plus;
  bool param_bisection = true;
  unsigned max_param_splits = 1;
  std::optional<std::size_t> max_nodes;
  std::optional<double> time_limit;  // seconds

  /// Invoked after every `progress_interval` processed nodes (0 disables).
  std::size_t progress_interval = 0;
  std::function<void(const Paving&)> on_progress;

  void validate() const;
};

enum class StopReason { completed, ratio_reached, node_limit, time_limit };

const char* to_string(StopReason r);
const char* to_string(Mode m);

struct PavingStats {
  std::size_t nodes_processed = 0;
  std::size_t queued_nodes = 0;
  double volume_inner = 0.0;
  double volume_boundary = 0.0;
  double volume_queued = 0.0;
  double volume_rejected = 0.0;
  double volume_initial = 0.0;
  double elapsed = 0.0;  // seconds
  StopReason stop = StopReason::completed;
};

struct Paving {
  std::vector<Box> inner;
  std::vector<Box> boundary;
  PavingStats stats;
};

/// One quantified constraint per problem constraint, each with the full initial parameter box.
ConstraintStore initial_store(const Problem& p);

/// Pins every parameter in which a constraint is proved monotone over `box`
/// to the bound where the constraint is hardest to satisfy.
ConstraintStore parameter_instantiation(ConstraintStore store, const Box& box);

/// Contracts `box` with the constraint instantiated at the midpoint of its parameter domain.
Box local_pruning(const QuantifiedConstraint& c, const Box& box);

/// Sequential local pruning over the store; the result may be empty.
Box global_pruning(const ConstraintStore& store, const Box& box);

struct Identification {
  ConstraintStore store;     // surviving constraints with contracted parameter domains
  Box box;                   // part of the input still to be explored; empty if fully solved
  std::vector<Box> inner;    // boxes proved to contain only solutions
};

/// Contracts the negation of every constraint, drops the constraints proved
/// satisfied, and returns the closure of the uncovered part as inner boxes.
Identification solution_identification(const ConstraintStore& store, const Box& box);

/// Replaces each constraint whose widest parameter coordinate exceeds
/// `epsilon` by the two constraints over its halves, repeated `max_splits` times.
ConstraintStore parameter_domain_bisection(ConstraintStore store, double epsilon, unsigned max_splits = 1);

/// Bisects the widest coordinate (lowest index on ties).
std::pair<Box, Box> branch(const Box& box);

Paving solve(const Problem& p, const SolverConfig& cfg);

/// (V_inner + V_rejected) / V_initial: the fraction of the initial box that
/// is classified.  0 before any work, 1 once the queue drains with no boundary.
double classified_ratio(const Paving& paving);

}  // namespace qine
