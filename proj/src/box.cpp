#include "qine/box.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace qine {

namespace {

void check_same_size(const Box& a, const Box& b) {
  if (a.size() != b.size()) throw std::invalid_argument("box dimension mismatch");
}

}  // namespace

Box Box::empty(std::size_t n) { return Box(n, Interval::empty()); }

bool Box::is_empty() const {
  return std::any_of(dims_.begin(), dims_.end(), [](const Interval& x) { return x.is_empty(); });
}

double Box::width() const {
  double w = 0.0;
  for (const auto& x : dims_) w = std::max(w, x.width());
  return w;
}

std::size_t Box::widest_axis() const {
  std::size_t best = 0;
  double w = -1.0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i].width() > w) {
      w = dims_[i].width();
      best = i;
    }
  }
  return best;
}

Point Box::midpoint() const {
  Point p(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) p[i] = dims_[i].mid();
  return p;
}

double Box::volume() const {
  if (is_empty()) return 0.0;
  double v = 1.0;
  for (const auto& x : dims_) v *= x.hi() - x.lo();
  return v;
}

bool Box::contains(std::span<const double> p) const {
  if (p.size() != dims_.size()) throw std::invalid_argument("point dimension mismatch");
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (!dims_[i].contains(p[i])) return false;
  }
  return true;
}

bool Box::subset_of(const Box& other) const {
  check_same_size(*this, other);
  if (is_empty()) return true;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (!dims_[i].subset_of(other.dims_[i])) return false;
  }
  return true;
}

bool Box::is_thin_in(const Box& outer) const {
  check_same_size(*this, outer);
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i].is_degenerate() && !outer.dims_[i].is_degenerate()) return true;
  }
  return false;
}

std::pair<Box, Box> Box::bisect(std::size_t axis) const {
  if (axis >= dims_.size()) throw std::out_of_range("bisection axis out of range");
  const Interval& x = dims_[axis];
  if (x.is_empty() || x.is_degenerate()) throw std::logic_error("cannot bisect a degenerate axis");
  const double m = x.mid();
  Box left = *this, right = *this;
  left.dims_[axis] = Interval(x.lo(), m);
  right.dims_[axis] = Interval(m, x.hi());
  return {std::move(left), std::move(right)};
}

bool operator==(const Box& a, const Box& b) {
  if (a.size() != b.size()) return false;
  if (a.is_empty() && b.is_empty()) return true;
  return std::equal(a.dims_.begin(), a.dims_.end(), b.dims_.begin());
}

std::string Box::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) out += ", ";
    out += dims_[i].to_string();
  }
  out += ')';
  return out;
}

std::ostream& operator<<(std::ostream& os, const Box& b) { return os << b.to_string(); }

Box hull(const Box& a, const Box& b) {
  check_same_size(a, b);
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  Box r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
  return r;
}

Box intersect(const Box& a, const Box& b) {
  check_same_size(a, b);
  Box r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = intersect(a[i], b[i]);
  if (r.is_empty()) return Box::empty(a.size());
  return r;
}

std::vector<Box> set_difference_closure(const Box& x, const Box& inner) {
  check_same_size(x, inner);
  if (x.is_empty()) return {};
  const Box core = intersect(x, inner);
  if (core.is_empty() || core.is_thin_in(x)) return {x};

  // Peel slabs off coordinate by coordinate; what remains shrinks to core.
  std::vector<Box> pieces;
  Box rest = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (rest[i].lo() < core[i].lo()) {
      Box slab = rest;
      slab[i] = Interval(rest[i].lo(), core[i].lo());
      pieces.push_back(std::move(slab));
    }
    if (core[i].hi() < rest[i].hi()) {
      Box slab = rest;
      slab[i] = Interval(core[i].hi(), rest[i].hi());
      pieces.push_back(std::move(slab));
    }
    rest[i] = core[i];
  }
  return pieces;
}

}  // namespace qine
