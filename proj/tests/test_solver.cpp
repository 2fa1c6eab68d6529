#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qine/problem_file.hpp"
#include "qine/solver.hpp"

using namespace qine;

namespace {

Problem example_problem() {
  return parse_problem("var x in [0,15]; param y in [0,1]; constraint 10*y - x - y^2 <= 0;", "ex1");
}

QuantifiedConstraint quantified(const Problem& p, std::size_t i, Box dom) {
  return {std::make_shared<const Expression>(p.constraints[i]), std::move(dom), i};
}

bool near(const Interval& got, double lo, double hi) {
  return !got.is_empty() && got.lo() <= lo && got.lo() >= std::nextafter(lo, -INFINITY) && got.hi() >= hi &&
         got.hi() <= std::nextafter(hi, INFINITY);
}

double volume(const std::vector<Box>& boxes) {
  double v = 0;
  for (const auto& b : boxes) v += b.volume();
  return v;
}

bool covered(const std::vector<Box>& boxes, const std::vector<double>& x) {
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(x); });
}

}  // namespace

TEST_CASE("problem validation") {
  Problem p = example_problem();
  CHECK_NOTHROW(p.validate());
  p.variable_names.push_back("z");
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = example_problem();
  p.parameters[0] = Interval(0, INFINITY);
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = example_problem();
  p.parameter_names[0] = "x";
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  SolverConfig cfg;
  cfg.epsilon = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.stop_ratio = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("parameter instantiation") {
  const Problem p = example_problem();
  SUBCASE("increasing constraint pins the upper bound") {
    const auto s = parameter_instantiation(initial_store(p), Box{{0, 15}});
    REQUIRE(s.size() == 1);
    CHECK(s[0].param_domain[0] == Interval(1));
  }
  SUBCASE("no parameters") {
    const Problem q = parse_problem("var x in [0,1]; constraint x - 1 <= 0;");
    const auto s = parameter_instantiation(initial_store(q), q.variables);
    CHECK(s[0].param_domain.size() == 0);
  }
  SUBCASE("decreasing constraint pins the lower bound, and the grid agrees") {
    const Problem q = parse_problem("var x in [-1,3]; param y in [0.5,2]; constraint x - y <= 0;");
    const auto s = parameter_instantiation(initial_store(q), q.variables);
    CHECK(s[0].param_domain[0] == Interval(0.5));
    const test::Polynomial f{{{1, {1}, {0}}, {-1, {0}, {1}}}};
    const auto ygrid = test::grid_points(q.parameters, 200);
    for (const auto& x : test::grid_points(q.variables, 401)) {
      bool all = true;
      for (const auto& y : ygrid) all = all && f.eval(x, y) <= 0;
      CHECK(all == (f.eval(x, {0.5}) <= 0));
    }
  }
  SUBCASE("sign change leaves the domain alone") {
    const Problem q = parse_problem("var x in [-1,1]; param y in [-1,1]; constraint x*y <= 0;");
    const auto s = parameter_instantiation(initial_store(q), q.variables);
    CHECK(s[0].param_domain[0] == Interval(-1, 1));
  }
  SUBCASE("unbounded derivative leaves the domain alone") {
    const Problem q = parse_problem("var x in [0,1]; param y in [0,1]; constraint sqrt(y) - x <= 0;");
    const auto s = parameter_instantiation(initial_store(q), q.variables);
    CHECK(s[0].param_domain[0] == Interval(0, 1));
  }
}

TEST_CASE("local and global pruning") {
  const Problem p = example_problem();
  CHECK(near(local_pruning(quantified(p, 0, Box{{0, 1}}), Box{{0, 15}})[0], 4.75, 15));
  CHECK(near(local_pruning(quantified(p, 0, Box{{0, 0.5}}), Box{{0, 15}})[0], 2.4375, 15));
  CHECK(near(local_pruning(quantified(p, 0, Box{{0.5, 1}}), Box{{0, 15}})[0], 6.9375, 15));

  const ConstraintStore two{quantified(p, 0, Box{{0, 0.5}}), quantified(p, 0, Box{{0.5, 1}})};
  CHECK(near(global_pruning(two, Box{{0, 15}})[0], 6.9375, 15));
  CHECK(global_pruning({two[0]}, Box{{0, 15}}) == local_pruning(two[0], Box{{0, 15}}));

  const Problem infeasible = parse_problem("var x in [0,1]; param y in [0,1]; constraint x + y + 20 <= 0;");
  CHECK(global_pruning(initial_store(infeasible), infeasible.variables).is_empty());
}

TEST_CASE("solution identification") {
  const Problem p = example_problem();
  SUBCASE("full parameter domain") {
    const auto id = solution_identification(initial_store(p), Box{{4.75, 15}});
    REQUIRE(id.store.size() == 1);
    CHECK(near(id.store[0].param_domain[0], 0.475, 1));
    CHECK(near(id.box[0], 4.75, 10));
    REQUIRE(id.inner.size() == 1);
    CHECK(id.inner[0][0].lo() >= 10);
    CHECK(id.inner[0][0].lo() <= std::nextafter(10.0, INFINITY));
    CHECK(id.inner[0][0].hi() == 15);
  }
  SUBCASE("bisected parameter domain") {
    const ConstraintStore two{quantified(p, 0, Box{{0, 0.5}}), quantified(p, 0, Box{{0.5, 1}})};
    const auto id = solution_identification(two, Box{{6.9375, 15}});
    REQUIRE(id.store.size() == 1);
    CHECK(id.store[0].param_domain[0].lo() >= 0.5);
    CHECK(near(id.box[0], 6.9375, 9.75));
    REQUIRE(id.inner.size() == 1);
    CHECK(id.inner[0][0].lo() >= 9.75);
    CHECK(id.inner[0][0].lo() <= std::nextafter(9.75, INFINITY));
    CHECK(id.inner[0][0].hi() == 15);
  }
  SUBCASE("negation that does not contract") {
    const Problem q = parse_problem("var x in [0,2]; param y in [0,1]; constraint x - y <= 0;");
    const auto id = solution_identification(initial_store(q), Box{{0, 2}});
    CHECK(id.box == Box{{0, 2}});
    CHECK(id.inner.empty());
  }
  SUBCASE("every constraint proven") {
    const auto id = solution_identification(initial_store(p), Box{{10.5, 15}});
    CHECK(id.store.empty());
    CHECK(id.box.is_empty());
    REQUIRE(id.inner.size() == 1);
    CHECK(id.inner[0] == Box{{10.5, 15}});
  }
}

TEST_CASE("parameter domain bisection") {
  const Problem p = example_problem();
  SUBCASE("one split") {
    const auto s = parameter_domain_bisection(initial_store(p), 1e-3);
    REQUIRE(s.size() == 2);
    CHECK(s[0].param_domain == Box{{0, 0.5}});
    CHECK(s[1].param_domain == Box{{0.5, 1}});
    CHECK(s[0].source_id == 0);
    CHECK(s[1].source_id == 0);
  }
  SUBCASE("degenerate domain") {
    const auto s = parameter_domain_bisection({quantified(p, 0, Box{{1, 1}})}, 1e-3);
    REQUIRE(s.size() == 1);
    CHECK(s[0].param_domain == Box{{1, 1}});
  }
  SUBCASE("narrower than epsilon") {
    const auto s = parameter_domain_bisection({quantified(p, 0, Box{{0, 0.01}})}, 0.1);
    CHECK(s.size() == 1);
  }
  SUBCASE("two parameters: only the widest coordinate is split") {
    const Problem q = parse_problem(
        "var x in [-2,2]; param a in [0,1]; param b in [-1,2]; constraint x*a + b^2 - 3 <= 0;");
    const auto s = parameter_domain_bisection(initial_store(q), 1e-3);
    REQUIRE(s.size() == 2);
    CHECK(s[0].param_domain == Box{{0, 1}, {-1, 0.5}});
    CHECK(s[1].param_domain == Box{{0, 1}, {0.5, 2}});
  }
}

TEST_CASE("branching") {
  auto [l, r] = branch(Box{{0, 15}});
  CHECK(l == Box{{0, 7.5}});
  CHECK(r == Box{{7.5, 15}});
  CHECK(branch(Box{{0, 4}, {0, 2}}).first == Box{{0, 2}, {0, 2}});
  CHECK(branch(Box{{0, 2}, {0, 2}}).first == Box{{0, 1}, {0, 2}});
  CHECK(branch(Box{{0, 1}, {0, 2}}).first == Box{{0, 1}, {0, 1}});
}

TEST_CASE("store transformations keep the solution set on a grid") {
  std::mt19937_64 rng(7);
  std::size_t disagreements = 0, decided = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto q = test::random_qcsp(rng);
    // A sub-box so that instantiation has a chance to fire.
    Box box = q.problem.variables;
    for (std::size_t i = 0; i < box.size(); ++i) box[i] = Interval(box[i].lo(), box[i].lo() + (box[i].hi() - box[i].lo()) * 0.5);
    const ConstraintStore base = initial_store(q.problem);
    const ConstraintStore inst = parameter_instantiation(base, box);
    const ConstraintStore split = parameter_domain_bisection(base, 1e-3, 2);
    const Identification id = solution_identification(base, box);
    const test::StoreOracle o_base(q.polys, base, 200), o_inst(q.polys, inst, 200), o_split(q.polys, split, 200),
        o_id(q.polys, id.store, 200);
    for (const auto& x : test::grid_points(box, 9)) {
      const auto v0 = o_base(x);
      for (const test::StoreOracle* o : {&o_inst, &o_split}) {
        const auto v1 = (*o)(x);
        if (v0 != test::Verdict::unknown && v1 != test::Verdict::unknown) {
          ++decided;
          if (v0 != v1) ++disagreements;
        }
      }
      // Identification prunes the store only for points that remain in its box.
      if (!id.box.is_empty() && id.box.contains(x)) {
        const auto v1 = o_id(x);
        if (v0 != test::Verdict::unknown && v1 != test::Verdict::unknown) {
          ++decided;
          if (v0 != v1) ++disagreements;
        }
      }
    }
  }
  CHECK(disagreements == 0);
  CHECK(decided > 500);
}

TEST_CASE("solve: the example problem") {
  const Problem p = example_problem();
  SUBCASE("2B+ describes the solution set exactly") {
    SolverConfig cfg;
    cfg.epsilon = 1e-6;
    const Paving pv = solve(p, cfg);
    CHECK(pv.stats.stop == StopReason::completed);
    CHECK(volume(pv.inner) == doctest::Approx(6).epsilon(1e-12));
    CHECK(volume(pv.boundary) <= 1e-6);
    CHECK(classified_ratio(pv) == 1.0);
    for (const auto& b : pv.inner) {
      CHECK(b[0].lo() >= 9);
      CHECK(b[0].hi() <= 15);
    }
  }
  SUBCASE("2B at eps 0.01") {
    SolverConfig cfg;
    cfg.epsilon = 0.01;
    cfg.mode = Mode::hc4;
    const Paving pv = solve(p, cfg);
    CHECK(volume(pv.inner) >= 5.9);
    for (const auto& b : pv.inner) CHECK(b[0].lo() >= 9);
    for (const auto& b : pv.boundary) CHECK(b.width() <= 0.01);
    // Every point of [9,15] is classified inner or boundary.
    for (const auto& x : test::grid_points(Box{{9, 15}}, 6001)) {
      CHECK((covered(pv.inner, x) || covered(pv.boundary, x)));
    }
  }
  SUBCASE("stop at a ratio") {
    SolverConfig cfg;
    cfg.epsilon = 1e-6;
    cfg.mode = Mode::hc4;
    cfg.stop_ratio = 0.98;
    const Paving pv = solve(p, cfg);
    CHECK(pv.stats.stop == StopReason::ratio_reached);
    CHECK(classified_ratio(pv) >= 0.98);
    CHECK(volume(pv.boundary) <= 0.02 * 15 + 1e-12);
  }
  SUBCASE("node limit") {
    SolverConfig cfg;
    cfg.mode = Mode::hc4;
    cfg.max_nodes = 3;
    const Paving pv = solve(p, cfg);
    CHECK(pv.stats.stop == StopReason::node_limit);
    CHECK(pv.stats.nodes_processed == 3);
    CHECK(volume(pv.inner) + volume(pv.boundary) <= 15);
    CHECK(!pv.boundary.empty());
  }
}

TEST_CASE("solve: infeasible problem is rejected at the root") {
  const Problem p = parse_problem("var x in [0,1]; param y in [0,1]; constraint x + y + 20 <= 0;");
  const Paving pv = solve(p, SolverConfig{});
  CHECK(pv.inner.empty());
  CHECK(pv.boundary.empty());
  CHECK(pv.stats.nodes_processed == 1);
  CHECK(classified_ratio(pv) == 1.0);
}

TEST_CASE("solve: determinism and boundary width") {
  const Problem p = parse_problem(
      "var a in [-2,2]; var b in [-2,2]; param t in [0,1];"
      "constraint a^2 + b^2 + t - 3 <= 0; constraint a*t - b - 1 <= 0;");
  SolverConfig cfg;
  cfg.epsilon = 0.05;
  const Paving p1 = solve(p, cfg), p2 = solve(p, cfg);
  CHECK(p1.inner == p2.inner);
  CHECK(p1.boundary == p2.boundary);
  CHECK(p1.stats.nodes_processed == p2.stats.nodes_processed);
  for (const auto& b : p1.boundary) CHECK(b.width() <= 0.05);
}

TEST_CASE("classified ratio endpoints") {
  Paving pv;
  pv.stats.volume_initial = 15;
  pv.stats.queued_nodes = 1;
  pv.stats.volume_queued = 15;
  CHECK(classified_ratio(pv) == 0.0);
  pv.stats.queued_nodes = 0;
  pv.stats.volume_queued = 0;
  CHECK(classified_ratio(pv) == 1.0);
}

TEST_CASE("solve: random problems are sound and covered") {
  std::mt19937_64 rng(11);
  std::size_t inner_bad = 0, uncovered = 0, inner_checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto q = test::random_qcsp(rng);
    SolverConfig cfg;
    cfg.epsilon = 0.05;
    cfg.max_nodes = 4000;
    const Paving pv = solve(q.problem, cfg);
    const test::StoreOracle oracle(q.polys, initial_store(q.problem), 200);
    for (const auto& b : pv.inner) {
      const auto v = oracle(b.midpoint());
      ++inner_checked;
      if (v == test::Verdict::violation) ++inner_bad;
    }
    for (const auto& x : test::grid_points(q.problem.variables, 25)) {
      if (oracle(x) != test::Verdict::solution) continue;
      if (!covered(pv.inner, x) && !covered(pv.boundary, x)) ++uncovered;
    }
  }
  CHECK(inner_bad == 0);
  CHECK(uncovered == 0);
  CHECK(inner_checked > 0);
}
