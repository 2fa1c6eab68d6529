// Interval vectors (boxes) and the set operations the solver relies on.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qine/interval.hpp"

namespace qine {

using Point = std::vector<double>;

class Box {
 public:
  Box() = default;
  explicit Box(std::size_t n, Interval fill = Interval::entire()) : dims_(n, fill) {}
  explicit Box(std::vector<Interval> dims) : dims_(std::move(dims)) {}
  Box(std::initializer_list<Interval> dims) : dims_(dims) {}

  /// An n-dimensional box whose every coordinate is empty.
  static Box empty(std::size_t n);

  std::size_t size() const { return dims_.size(); }
  const Interval& operator[](std::size_t i) const { return dims_[i]; }
  Interval& operator[](std::size_t i) { return dims_[i]; }
  std::span<const Interval> dims() const { return dims_; }
  auto begin() const { return dims_.begin(); }
  auto end() const { return dims_.end(); }

  /// A box is empty iff any coordinate is empty.  The 0-dimensional box is not empty.
  bool is_empty() const;
  /// max_i (hi_i - lo_i); 0 for the 0-dimensional box.
  double width() const;
  /// Index of the widest coordinate, lowest index on ties.
  std::size_t widest_axis() const;
  Point midpoint() const;
  /// Product of coordinate widths; 0 for empty boxes.
  double volume() const;
  bool contains(std::span<const double> p) const;
  bool subset_of(const Box& other) const;
  /// Degenerate in some coordinate where `outer` is not, i.e. no interior relative to `outer`.
  bool is_thin_in(const Box& outer) const;
  /// Splits coordinate `axis` at its midpoint.  Throws std::logic_error on a degenerate axis.
  std::pair<Box, Box> bisect(std::size_t axis) const;

  friend bool operator==(const Box& a, const Box& b);

  std::string to_string() const;

 private:
  std::vector<Interval> dims_;
};

std::ostream& operator<<(std::ostream& os, const Box& b);

/// Smallest box containing both; an empty operand is the identity.
/// Throws std::invalid_argument on dimension mismatch.
Box hull(const Box& a, const Box& b);
Box intersect(const Box& a, const Box& b);

/// Closure of x \ inner as at most 2n boxes with pairwise disjoint interiors.
///
/// Returns {x} when inner is empty or has no interior relative to x (its
/// complement is then dense in x), and nothing when inner == x.  Pieces with
/// empty interior are omitted.
std::vector<Box> set_difference_closure(const Box& x, const Box& inner);

}  // namespace qine
