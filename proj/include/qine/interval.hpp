// Outward-rounded closed intervals over the extended reals.
#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>

namespace qine {

/// A closed interval [lo, hi] with double bounds, possibly unbounded.
///
/// The empty interval is a distinguished value (lo = +inf, hi = -inf) and is
/// tested with is_empty(); bounds are never NaN.  All arithmetic rounds the
/// lower bound down and the upper bound up, so the result always encloses the
/// exact real image of the operands.
class Interval {
 public:
  constexpr Interval() : Interval(0.0) {}
  constexpr explicit Interval(double v) : lo_(v), hi_(v) {}
  /// Throws std::invalid_argument on NaN bounds or lo > hi.
  Interval(double lo, double hi);

  static constexpr Interval empty() { return Interval(Unchecked{}, kInf, -kInf); }
  static constexpr Interval entire() { return Interval(Unchecked{}, -kInf, kInf); }
  static constexpr Interval non_negative() { return Interval(Unchecked{}, 0.0, kInf); }
  static constexpr Interval non_positive() { return Interval(Unchecked{}, -kInf, 0.0); }

  constexpr double lo() const { return lo_; }
  constexpr double hi() const { return hi_; }

  constexpr bool is_empty() const { return lo_ > hi_; }
  constexpr bool is_degenerate() const { return lo_ == hi_; }
  constexpr bool is_bounded() const { return lo_ > -kInf && hi_ < kInf; }
  constexpr bool contains(double v) const { return lo_ <= v && v <= hi_; }
  constexpr bool contains_zero() const { return contains(0.0); }
  /// True when every point of this interval lies in `other` (empty is a subset of anything).
  constexpr bool subset_of(const Interval& other) const {
    return is_empty() || (other.lo_ <= lo_ && hi_ <= other.hi_);
  }

  /// hi - lo rounded up; 0 for empty.
  double width() const;
  /// A representable point inside the interval; exact midpoint when that is representable.
  double mid() const;
  /// Largest absolute value, smallest absolute value.
  double mag() const;
  double mig() const;

  friend constexpr bool operator==(const Interval& a, const Interval& b) {
    return (a.is_empty() && b.is_empty()) || (a.lo_ == b.lo_ && a.hi_ == b.hi_);
  }

  /// Text form "[lo,hi]" with round-trippable bounds, "[empty]" for the empty set.
  std::string to_string() const;
  /// Parses "[lo,hi]" (whitespace tolerated).  Throws std::invalid_argument.
  static Interval parse(std::string_view text);

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  struct Unchecked {};
  constexpr Interval(Unchecked, double lo, double hi) : lo_(lo), hi_(hi) {}
  friend Interval make_interval_unchecked(double lo, double hi);

  double lo_;
  double hi_;
};

/// Builds [lo, hi] without validation; an inverted pair yields the empty interval.
Interval make_interval_unchecked(double lo, double hi);

std::ostream& operator<<(std::ostream& os, const Interval& x);

Interval hull(const Interval& a, const Interval& b);
Interval intersect(const Interval& a, const Interval& b);

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Extended division: a zero-containing divisor yields the hull of both
/// branches, which may be unbounded; [0,0] as divisor gives the empty set.
Interval operator/(const Interval& a, const Interval& b);

Interval sqr(const Interval& a);
Interval pow(const Interval& a, unsigned n);
Interval sqrt(const Interval& a);
Interval exp(const Interval& a);
Interval log(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);

/// Real n-th root preimage of `image` under x -> x^n, restricted to `domain`.
/// For even n this is the hull of the positive and negative branches that meet `domain`.
Interval pow_preimage(const Interval& image, unsigned n, const Interval& domain);
/// Preimages of sin / cos restricted to `domain`; no contraction unless `domain`
/// lies within a single monotone branch.
Interval sin_preimage(const Interval& image, const Interval& domain);
Interval cos_preimage(const Interval& image, const Interval& domain);

}  // namespace qine
