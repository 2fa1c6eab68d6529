#include "qine/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qine/contractor.hpp"

namespace qine {

SymbolTable Problem::symbols() const {
  SymbolTable t;
  for (std::size_t i = 0; i < variable_names.size(); ++i) t.emplace(variable_names[i], VarRef::var(i));
  for (std::size_t j = 0; j < parameter_names.size(); ++j) t.emplace(parameter_names[j], VarRef::param(j));
  return t;
}

void Problem::validate() const {
  if (variables.size() == 0) throw std::invalid_argument("problem declares no variable");
  if (variable_names.size() != variables.size() || parameter_names.size() != parameters.size()) {
    throw std::invalid_argument("names and domains disagree in length");
  }
  std::set<std::string> seen;
  for (const auto* names : {&variable_names, &parameter_names}) {
    for (const auto& n : *names) {
      if (!seen.insert(n).second) throw std::invalid_argument("duplicate name '" + n + "'");
    }
  }
  for (const auto* b : {&variables, &parameters}) {
    for (const auto& d : *b) {
      if (d.is_empty()) throw std::invalid_argument("empty domain");
      if (!d.is_bounded()) throw std::invalid_argument("unbounded domain");
    }
  }
  for (const auto& c : constraints) {
    if (c.variable_arity() > variables.size() || c.parameter_arity() > parameters.size()) {
      throw std::invalid_argument("constraint references an undeclared symbol");
    }
  }
}

void SolverConfig::validate() const {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (stop_ratio && !(*stop_ratio > 0 && *stop_ratio <= 1)) {
    throw std::invalid_argument("stop ratio must lie in (0, 1]");
  }
  if (max_nodes && *max_nodes == 0) throw std::invalid_argument("node limit must be positive");
  if (time_limit && !(*time_limit > 0)) throw std::invalid_argument("time limit must be positive");
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::completed: return "completed";
    case StopReason::ratio_reached: return "ratio";
    case StopReason::node_limit: return "node-limit";
    case StopReason::time_limit: return "time-limit";
  }
  return "?";
}

const char* to_string(Mode m) { return m == Mode::hc4 ? "2b" : "2b+"; }

ConstraintStore initial_store(const Problem& p) {
  ConstraintStore store;
  store.reserve(p.constraints.size());
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    store.push_back({std::make_shared<const Expression>(p.constraints[i]), p.parameters, i});
  }
  return store;
}

ConstraintStore parameter_instantiation(ConstraintStore store, const Box& box) {
  for (auto& c : store) {
    for (std::size_t j = 0; j < c.param_domain.size(); ++j) {
      const Interval dom = c.param_domain[j];
      if (dom.is_degenerate()) continue;
      const Interval d = derivative_interval(*c.f, j, box, c.param_domain);
      if (d.is_empty() || !d.is_bounded()) continue;
      if (d.lo() >= 0) {
        c.param_domain[j] = Interval(dom.hi());
      } else if (d.hi() <= 0) {
        c.param_domain[j] = Interval(dom.lo());
      }
    }
  }
  return store;
}

Box local_pruning(const QuantifiedConstraint& c, const Box& box) {
  const Point mid = c.param_domain.midpoint();
  Box at_mid(mid.size());
  for (std::size_t j = 0; j < mid.size(); ++j) at_mid[j] = Interval(mid[j]);
  const Contraction r = hc4_revise({*c.f, Relation::le_zero}, box, at_mid);
  return r.empty ? Box::empty(box.size()) : r.x;
}

Box global_pruning(const ConstraintStore& store, const Box& box) {
  Box x = box;
  for (const auto& c : store) {
    x = local_pruning(c, x);
    if (x.is_empty()) break;
  }
  return x;
}

Identification solution_identification(const ConstraintStore& store, const Box& box) {
  Identification out;
  out.box = Box::empty(box.size());
  for (const auto& c : store) {
    const Contraction r = hc4_revise({*c.f, Relation::ge_zero}, box, c.param_domain);
    if (r.empty) continue;  // f < 0 on the whole node: the constraint holds everywhere below
    out.box = hull(out.box, r.x);
    out.store.push_back({c.f, r.y, c.source_id});
  }
  out.inner = set_difference_closure(box, out.box);
  if (!out.box.is_empty() && out.box.is_thin_in(box)) out.box = Box::empty(box.size());
  return out;
}

ConstraintStore parameter_domain_bisection(ConstraintStore store, double epsilon, unsigned max_splits) {
  for (unsigned round = 0; round < max_splits; ++round) {
    ConstraintStore next;
    next.reserve(store.size() * 2);
    bool split = false;
    for (auto& c : store) {
      if (c.param_domain.size() == 0 || !(c.param_domain.width() > epsilon)) {
        next.push_back(std::move(c));
        continue;
      }
      auto [lo, hi] = c.param_domain.bisect(c.param_domain.widest_axis());
      next.push_back({c.f, std::move(lo), c.source_id});
      next.push_back({c.f, std::move(hi), c.source_id});
      split = true;
    }
    store = std::move(next);
    if (!split) break;
  }
  return store;
}

std::pair<Box, Box> branch(const Box& box) { return box.bisect(box.widest_axis()); }

namespace {

// Max-heap on box width; among equal widths the earliest insertion wins.
struct QueueEntry {
  double width;
  std::uint64_t seq;
  SearchNode node;
};

struct QueueOrder {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.width != b.width) return a.width < b.width;
    return a.seq > b.seq;
  }
};

class Queue {
 public:
  void push(SearchNode node) {
    const double w = node.box.width();
    heap_.push_back({w, seq_++, std::move(node)});
    std::push_heap(heap_.begin(), heap_.end(), QueueOrder{});
  }
  SearchNode pop() {
    std::pop_heap(heap_.begin(), heap_.end(), QueueOrder{});
    SearchNode n = std::move(heap_.back().node);
    heap_.pop_back();
    return n;
  }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  std::vector<QueueEntry>& entries() { return heap_; }

 private:
  std::vector<QueueEntry> heap_;
  std::uint64_t seq_ = 0;
};

double total_volume(const std::vector<Box>& boxes) {
  double v = 0.0;
  for (const auto& b : boxes) v += b.volume();
  return v;
}

}  // namespace

Paving solve(const Problem& p, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  Paving paving;
  PavingStats& st = paving.stats;
  st.volume_initial = p.variables.volume();

  Queue queue;
  queue.push({initial_store(p), p.variables});
  st.volume_queued = st.volume_initial;
  st.queued_nodes = 1;

  const auto enqueue = [&](SearchNode node) {
    st.volume_queued += node.box.volume();
    queue.push(std::move(node));
  };
  // Accounting is done with non-negative increments only, so the ratio never decreases.
  const auto reject = [&](double v) { st.volume_rejected += std::max(0.0, v); };

  std::optional<StopReason> stopped;
  while (!queue.empty()) {
    if (cfg.max_nodes && st.nodes_processed >= *cfg.max_nodes) {
      stopped = StopReason::node_limit;
      break;
    }
    if (cfg.time_limit && elapsed() >= *cfg.time_limit) {
      stopped = StopReason::time_limit;
      break;
    }

    SearchNode node = queue.pop();
    const double vol = node.box.volume();
    st.volume_queued = queue.empty() ? 0.0 : std::max(0.0, st.volume_queued - vol);
    ++st.nodes_processed;

    if (!(node.box.width() > cfg.epsilon)) {
      st.volume_boundary += vol;
      paving.boundary.push_back(std::move(node.box));
    } else {
      ConstraintStore store =
          cfg.mode == Mode::hc4_plus ? parameter_instantiation(std::move(node.store), node.box) : std::move(node.store);
      const Box pruned = global_pruning(store, node.box);
      if (pruned.is_empty()) {
        reject(vol);
      } else {
        Identification id = solution_identification(store, pruned);
        const double vin = total_volume(id.inner);
        st.volume_inner += vin;
        for (auto& b : id.inner) paving.inner.push_back(std::move(b));

        if (id.box.is_empty()) {
          reject(vol - vin);
        } else {
          const double vrest = id.box.volume();
          reject(vol - vin - vrest);
          ConstraintStore next = cfg.param_bisection
                                     ? parameter_domain_bisection(std::move(id.store), cfg.epsilon, cfg.max_param_splits)
                                     : std::move(id.store);
          if (id.box.width() > cfg.epsilon) {
            auto [left, right] = branch(id.box);
            enqueue({next, std::move(left)});
            enqueue({std::move(next), std::move(right)});
          } else {
            st.volume_boundary += vrest;
            paving.boundary.push_back(std::move(id.box));
          }
        }
      }
    }
    st.queued_nodes = queue.size();

    if (cfg.progress_interval && cfg.on_progress && st.nodes_processed % cfg.progress_interval == 0) {
      st.elapsed = elapsed();
      cfg.on_progress(paving);
    }
    if (cfg.stop_ratio && !queue.empty() && classified_ratio(paving) >= *cfg.stop_ratio) {
      stopped = StopReason::ratio_reached;
      break;
    }
  }

  // Whatever is still queued is unclassified and must stay in the outer approximation.
  for (auto& e : queue.entries()) {
    st.volume_boundary += e.node.box.volume();
    paving.boundary.push_back(std::move(e.node.box));
  }
  queue.entries().clear();
  st.queued_nodes = 0;
  st.volume_queued = 0.0;
  st.stop = stopped.value_or(StopReason::completed);
  st.elapsed = elapsed();
  return paving;
}

double classified_ratio(const Paving& paving) {
  const PavingStats& st = paving.stats;
  const bool done = st.queued_nodes == 0 && paving.boundary.empty();
  if (done) return 1.0;
  if (!(st.volume_initial > 0)) return 0.0;
  return std::min(1.0, (st.volume_inner + st.volume_rejected) / st.volume_initial);
}

}  // namespace qine
