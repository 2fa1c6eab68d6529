#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "qine/box.hpp"
#include "qine/interval.hpp"

using namespace qine;
using qine::test::HP;

namespace {

// Exact value of a double as a rational.
boost::multiprecision::cpp_rational exact(double v) {
  int e = 0;
  const double m = std::frexp(v, &e);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  boost::multiprecision::cpp_rational r(mant);
  const int shift = e - 53;
  boost::multiprecision::cpp_int p = 1;
  p <<= std::abs(shift);
  if (shift >= 0) return r * p;
  return r / p;
}

struct UnaryCase {
  const char* name;
  std::function<Interval(const Interval&)> interval;
  std::function<bool(const HP&, HP&)> point;  // false on domain error
};

}  // namespace

TEST_CASE("interval: basic arithmetic examples") {
  CHECK(Interval(1, 2) + Interval(3, 4) == Interval(4, 6));
  CHECK(Interval(10) * Interval(0, 1) - Interval(0, 15) == Interval(-15, 10));
  CHECK(-Interval(1, 2) == Interval(-2, -1));
  CHECK(sqr(Interval(-2, 1)) == Interval(0, 4));
  CHECK(pow(Interval(-2, 1), 3) == Interval(-8, 1));
  CHECK(pow(Interval(-2, 1), 0) == Interval(1));
}

TEST_CASE("interval: 0.1 * 0.1 is enclosed with outward rounding") {
  const Interval tenth(0.1);
  const Interval r = tenth * tenth;
  CHECK(r.lo() < r.hi());
  const auto truth = exact(0.1) * exact(0.1);
  CHECK(exact(r.lo()) <= truth);
  CHECK(truth <= exact(r.hi()));
  // Tight: each bound is one of the two doubles adjacent to the exact product.
  CHECK(std::nextafter(r.lo(), INFINITY) == r.hi());
}

TEST_CASE("interval: partial operators and empty results") {
  CHECK(sqrt(Interval(-2, -1)).is_empty());
  CHECK(sqrt(Interval(-2, 4)) == Interval(0, 2));
  CHECK(log(Interval(-3, 0)).is_empty());
  CHECK(log(Interval(0, 1)).lo() == -INFINITY);
  CHECK(log(Interval(0, 1)).hi() == 0);
  CHECK((Interval(1, 2) / Interval(0)).is_empty());
  CHECK((Interval(-1, 2) / Interval(-1, 1)) == Interval::entire());
  CHECK((Interval(1, 2) / Interval(-1, 1)) == Interval::entire());
  CHECK((Interval(1, 2) / Interval(0, 4)) == Interval(0.25, INFINITY));
  CHECK((Interval(-2, -1) / Interval(0, 4)) == Interval(-INFINITY, -0.25));
  CHECK((Interval(1, 2) / Interval(-4, 0)) == Interval(-INFINITY, -0.25));
  CHECK(exp(Interval(0)) == Interval(1));
  CHECK((Interval::empty() + Interval(1)).is_empty());
  CHECK(Interval(0, INFINITY) * Interval(0) == Interval(0));
}

TEST_CASE("interval: literal syntax") {
  CHECK(Interval::parse("[4.75,15]") == Interval(4.75, 15));
  CHECK(Interval::parse(" [ -1e-3 , 2.5E2 ] ") == Interval(-0.001, 250));
  CHECK(Interval(0.1, 0.3).to_string() == "[0.1,0.3]");
  CHECK(Interval::parse(Interval(1.0 / 3, 2).to_string()) == Interval(1.0 / 3, 2));
  CHECK(Interval::empty().to_string() == "[empty]");
  CHECK_THROWS_AS(Interval::parse("[3,1]"), std::invalid_argument);
  CHECK_THROWS_AS(Interval::parse("3,1"), std::invalid_argument);
  CHECK_THROWS_AS(Interval(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(Interval(NAN, 1), std::invalid_argument);
}

TEST_CASE("box: hull") {
  CHECK(hull(Box{{-1, 1}}, Box{{2, 3}}) == Box{{-1, 3}});
  CHECK(hull(Box::empty(1), Box{{2, 3}}) == Box{{2, 3}});
  CHECK(hull(Box::empty(1), Box{{6.9375, 9.75}}) == Box{{6.9375, 9.75}});
  CHECK_THROWS_AS(hull(Box{{0, 1}}, Box{{0, 1}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("box: hull is associative, commutative and idempotent") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 3;
    auto rb = [&] {
      Box b(n);
      for (std::size_t i = 0; i < n; ++i) b[i] = test::random_interval(rng, -10, 10);
      return b;
    };
    const Box a = rb(), b = rb(), c = rb();
    CHECK(hull(a, b) == hull(b, a));
    CHECK(hull(hull(a, b), c) == hull(a, hull(b, c)));
    CHECK(hull(a, a) == a);
    CHECK(a.subset_of(hull(a, b)));
  }
}

TEST_CASE("box: set difference closure") {
  auto diff = set_difference_closure(Box{{-10, 10}}, Box{{-1, 1}});
  REQUIRE(diff.size() == 2);
  CHECK(diff[0] == Box{{-10, -1}});
  CHECK(diff[1] == Box{{1, 10}});

  diff = set_difference_closure(Box{{4.75, 15}}, Box{{4.75, 10}});
  REQUIRE(diff.size() == 1);
  CHECK(diff[0] == Box{{10, 15}});

  CHECK(set_difference_closure(Box{{0, 1}, {2, 3}}, Box{{0, 1}, {2, 3}}).empty());
  CHECK(set_difference_closure(Box{{0, 1}}, Box::empty(1)) == std::vector<Box>{Box{{0, 1}}});
  // A residual with no interior leaves a dense complement.
  CHECK(set_difference_closure(Box{{9, 15}}, Box{{9, 9}}) == std::vector<Box>{Box{{9, 15}}});
}

TEST_CASE("box: set difference closure matches the complement on a grid") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 3;
    Box x(n), inner(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = Interval(0, 8);
      const int a = std::uniform_int_distribution<int>(0, 8)(rng);
      const int b = std::uniform_int_distribution<int>(a, 8)(rng);
      inner[i] = Interval(a, b);
      if (a == b && trial % 4) inner[i] = Interval(a, std::min(8, a + 1));
    }
    const auto pieces = set_difference_closure(x, inner);
    CHECK(pieces.size() <= 2 * n);
    for (std::size_t a = 0; a < pieces.size(); ++a) {
      CHECK(pieces[a].subset_of(x));
      for (std::size_t b = a + 1; b < pieces.size(); ++b) {
        const Box c = intersect(pieces[a], pieces[b]);
        CHECK((c.is_empty() || c.volume() == 0));
      }
    }
    // Half-integer grid points are never on a piece boundary.
    for (const auto& p : test::grid_points(x, 17)) {
      bool in_interior_of_inner = !inner.is_thin_in(x);
      for (std::size_t i = 0; i < n; ++i) {
        in_interior_of_inner = in_interior_of_inner && inner[i].lo() < p[i] && p[i] < inner[i].hi();
      }
      bool covered = false;
      for (const auto& b : pieces) covered = covered || b.contains(p);
      const bool on_grid_line = std::any_of(p.begin(), p.end(), [](double v) { return v == std::floor(v); });
      if (!on_grid_line) CHECK(covered == !in_interior_of_inner);
    }
  }
}

TEST_CASE("box: midpoint, bisection, volume") {
  CHECK(Interval(0, 1).mid() == 0.5);
  const auto [l, r] = Box{{0, 1}}.bisect(0);
  CHECK(l == Box{{0, 0.5}});
  CHECK(r == Box{{0.5, 1}});
  CHECK(hull(l, r) == Box{{0, 1}});
  CHECK(Box{{9, 15}}.volume() == 6);
  CHECK(Box{{0, 2}, {3, 3}}.volume() == 0);
  CHECK(Box{{0, 4}, {0, 2}}.width() == 4);
  CHECK_THROWS_AS((Box{{3, 3}}.bisect(0)), std::logic_error);
  CHECK(Interval::entire().mid() == 0);
  CHECK(Interval(-INFINITY, 1).contains(Interval(-INFINITY, 1).mid()));
}

TEST_CASE("interval: containment of every operator against a 50-digit oracle") {
  std::mt19937_64 rng(2024);
  const std::vector<UnaryCase> unary = {
      {"neg", [](const Interval& a) { return -a; }, [](const HP& a, HP& r) { r = -a; return true; }},
      {"sqr", [](const Interval& a) { return sqr(a); }, [](const HP& a, HP& r) { r = a * a; return true; }},
      {"pow3", [](const Interval& a) { return pow(a, 3); }, [](const HP& a, HP& r) { r = a * a * a; return true; }},
      {"pow4", [](const Interval& a) { return pow(a, 4); }, [](const HP& a, HP& r) { r = a * a * a * a; return true; }},
      {"sqrt", [](const Interval& a) { return sqrt(a); },
       [](const HP& a, HP& r) { if (a < 0) return false; r = boost::multiprecision::sqrt(a); return true; }},
      {"exp", [](const Interval& a) { return exp(a); },
       [](const HP& a, HP& r) { r = boost::multiprecision::exp(a); return true; }},
      {"log", [](const Interval& a) { return log(a); },
       [](const HP& a, HP& r) { if (a <= 0) return false; r = boost::multiprecision::log(a); return true; }},
      {"sin", [](const Interval& a) { return sin(a); },
       [](const HP& a, HP& r) { r = boost::multiprecision::sin(a); return true; }},
      {"cos", [](const Interval& a) { return cos(a); },
       [](const HP& a, HP& r) { r = boost::multiprecision::cos(a); return true; }},
  };
  for (const auto& op : unary) {
    for (int trial = 0; trial < 2000; ++trial) {
      const double scale = trial % 3 == 0 ? 100 : 5;
      const Interval a = test::random_interval(rng, -scale, scale);
      const Interval r = op.interval(a);
      for (int k = 0; k < 5; ++k) {
        const double p = test::random_point(rng, Box{a})[0];
        HP v;
        if (!op.point(HP(p), v)) continue;
        INFO(op.name, " of ", a, " at ", p);
        CHECK(test::hp_in(v, r));
      }
    }
  }

  for (int trial = 0; trial < 5000; ++trial) {
    const Interval a = test::random_interval(rng, -20, 20);
    const Interval b = test::random_interval(rng, -20, 20);
    const Box ab{a, b};
    const Interval sum = a + b, diff = a - b, prod = a * b, quot = a / b;
    for (int k = 0; k < 5; ++k) {
      const auto p = test::random_point(rng, ab);
      const HP x(p[0]), y(p[1]);
      INFO(a, " ", b, " at ", p[0], ",", p[1]);
      CHECK(test::hp_in(x + y, sum));
      CHECK(test::hp_in(x - y, diff));
      CHECK(test::hp_in(x * y, prod));
      if (y != 0) CHECK(test::hp_in(x / y, quot));
    }
  }
}

TEST_CASE("interval: inclusion monotonicity") {
  std::mt19937_64 rng(99);
  auto shrink = [&](const Interval& a) {
    const auto p = test::random_interval(rng, a.lo(), a.hi());
    return p;
  };
  for (int trial = 0; trial < 3000; ++trial) {
    const Interval a = test::random_interval(rng, -10, 10), b = test::random_interval(rng, -10, 10);
    const Interval sa = shrink(a), sb = shrink(b);
    CHECK((sa + sb).subset_of(a + b));
    CHECK((sa - sb).subset_of(a - b));
    CHECK((sa * sb).subset_of(a * b));
    CHECK((sa / sb).subset_of(a / b));
    CHECK(sqr(sa).subset_of(sqr(a)));
    CHECK(pow(sa, 3).subset_of(pow(a, 3)));
    CHECK(sqrt(sa).subset_of(sqrt(a)));
    CHECK(exp(sa).subset_of(exp(a)));
    CHECK(log(sa).subset_of(log(a)));
    CHECK(sin(sa).subset_of(sin(a)));
    CHECK(cos(sa).subset_of(cos(a)));
  }
}

TEST_CASE("interval: inverse images keep every feasible point") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 3000; ++trial) {
    const Interval dom = test::random_interval(rng, -8, 8);
    const Interval img = test::random_interval(rng, -1.5, 1.5);
    const Interval sp = sin_preimage(img, dom), cp = cos_preimage(img, dom);
    CHECK(sp.subset_of(dom));
    CHECK(cp.subset_of(dom));
    const unsigned n = 1 + trial % 4;
    const Interval pimg = test::random_interval(rng, -10, 10);
    const Interval pp = pow_preimage(pimg, n, dom);
    for (int k = 0; k < 20; ++k) {
      const double p = test::uniform(rng, dom.lo(), dom.hi());
      if (img.contains(std::sin(p)) && std::fabs(std::sin(p) - img.lo()) > 1e-9 &&
          std::fabs(std::sin(p) - img.hi()) > 1e-9) {
        CHECK(sp.contains(p));
      }
      if (img.contains(std::cos(p)) && std::fabs(std::cos(p) - img.lo()) > 1e-9 &&
          std::fabs(std::cos(p) - img.hi()) > 1e-9) {
        CHECK(cp.contains(p));
      }
      HP v = 1;
      for (unsigned e = 0; e < n; ++e) v *= HP(p);
      if (test::hp_in(v, pimg)) CHECK(pp.contains(p));
    }
  }
  CHECK(pow_preimage(Interval(0.25, 1), 2, Interval(0.5, 1)) == Interval(0.5, 1));
  CHECK(pow_preimage(Interval(0, 1), 2, Interval(-2, 2)) == Interval(-1, 1));
  CHECK(pow_preimage(Interval(-8, 27), 3, Interval(-10, 10)) == Interval(-2, 3));
  CHECK(sin_preimage(Interval(2, 3), Interval(0, 1)).is_empty());
}
