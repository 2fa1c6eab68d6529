#include "qine/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "rounding.hpp"

namespace qine {

namespace {

constexpr double kInf = rnd::kInf;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

bool valid_bounds(double lo, double hi) {
  return !std::isnan(lo) && !std::isnan(hi) && lo <= hi && lo < kInf && hi > -kInf;
}

void append_double(std::string& out, double v) {
  if (v == kInf) {
    out += "inf";
  } else if (v == -kInf) {
    out += "-inf";
  } else {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_bound(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("invalid interval bound '" + std::string(s) + "'");
  }
  return v;
}

// Widened libm results, keeping the few values libm returns exactly.
double exp_down(double v) { return v == 0 ? 1.0 : std::max(0.0, rnd::libm_down(std::exp(v))); }
double exp_up(double v) { return v == 0 ? 1.0 : rnd::libm_up(std::exp(v)); }
double log_down(double v) { return v == 1 ? 0.0 : rnd::libm_down(std::log(v)); }
double log_up(double v) { return v == 1 ? 0.0 : rnd::libm_up(std::log(v)); }

// True unless it is certain that no point offset + 2k*pi lies in [lo, hi].
bool may_contain_periodic(double lo, double hi, double offset) {
  const double tlo = (lo - offset) / kTwoPi;
  const double thi = (hi - offset) / kTwoPi;
  const double slack = 1e-10 + 1e-14 * std::max(std::fabs(tlo), std::fabs(thi));
  return std::floor(thi + slack) >= std::ceil(tlo - slack);
}

double root_down(double v, unsigned n) {
  if (v == 0 || v == kInf) return v;
  if (n == 2) return rnd::sqrt_down(v);
  double r = std::pow(v, 1.0 / n);
  while (rnd::pow_up(r, n) > v) r = rnd::next_down(r);
  return r;
}

double root_up(double v, unsigned n) {
  if (v == 0 || v == kInf) return v;
  if (n == 2) return rnd::sqrt_up(v);
  double r = std::pow(v, 1.0 / n);
  while (rnd::pow_down(r, n) < v) r = rnd::next_up(r);
  return r;
}

// Signed odd root, rounded down / up.
double odd_root_down(double v, unsigned n) { return v >= 0 ? root_down(v, n) : -root_up(-v, n); }
double odd_root_up(double v, unsigned n) { return v >= 0 ? root_up(v, n) : -root_down(-v, n); }

// Absolute slack covering the error of k*pi plus an inverse-trig result.
double branch_slack(double base) { return 1e-12 * (1.0 + std::fabs(base)); }

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!valid_bounds(lo, hi)) throw std::invalid_argument("invalid interval bounds");
}

Interval make_interval_unchecked(double lo, double hi) {
  if (!valid_bounds(lo, hi)) return Interval::empty();
  return Interval(Interval::Unchecked{}, lo, hi);
}

double Interval::width() const {
  if (is_empty()) return 0.0;
  return rnd::sub_up(hi_, lo_);
}

double Interval::mid() const {
  if (is_empty()) return std::numeric_limits<double>::quiet_NaN();
  if (lo_ == hi_) return lo_;
  if (lo_ == -kInf && hi_ == kInf) return 0.0;
  if (lo_ == -kInf) return -rnd::kMax;
  if (hi_ == kInf) return rnd::kMax;
  const double m = 0.5 * lo_ + 0.5 * hi_;
  return std::clamp(m, lo_, hi_);
}

double Interval::mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }

double Interval::mig() const {
  if (contains_zero()) return 0.0;
  return std::min(std::fabs(lo_), std::fabs(hi_));
}

std::string Interval::to_string() const {
  if (is_empty()) return "[empty]";
  std::string out = "[";
  append_double(out, lo_);
  out += ',';
  append_double(out, hi_);
  out += ']';
  return out;
}

Interval Interval::parse(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw std::invalid_argument("interval literal must look like [lo,hi]");
  }
  text = text.substr(1, text.size() - 2);
  if (trim(text) == "empty") return empty();
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("interval literal lacks ','");
  const double lo = parse_bound(text.substr(0, comma));
  const double hi = parse_bound(text.substr(comma + 1));
  if (!valid_bounds(lo, hi)) throw std::invalid_argument("empty interval literal");
  return Interval(lo, hi);
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << x.to_string(); }

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return make_interval_unchecked(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return make_interval_unchecked(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval operator-(const Interval& a) {
  if (a.is_empty()) return a;
  return make_interval_unchecked(-a.hi(), -a.lo());
}

Interval operator+(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return make_interval_unchecked(rnd::add_down(a.lo(), b.lo()), rnd::add_up(a.hi(), b.hi()));
}

Interval operator-(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return make_interval_unchecked(rnd::sub_down(a.lo(), b.hi()), rnd::sub_up(a.hi(), b.lo()));
}

Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  const double lo = std::min({rnd::mul_down(a.lo(), b.lo()), rnd::mul_down(a.lo(), b.hi()),
                              rnd::mul_down(a.hi(), b.lo()), rnd::mul_down(a.hi(), b.hi())});
  const double hi = std::max({rnd::mul_up(a.lo(), b.lo()), rnd::mul_up(a.lo(), b.hi()),
                              rnd::mul_up(a.hi(), b.lo()), rnd::mul_up(a.hi(), b.hi())});
  return make_interval_unchecked(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  using rnd::div_down;
  using rnd::div_up;
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  const double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
  if (bl > 0) {
    if (al >= 0) return make_interval_unchecked(div_down(al, bh), div_up(ah, bl));
    if (ah <= 0) return make_interval_unchecked(div_down(al, bl), div_up(ah, bh));
    return make_interval_unchecked(div_down(al, bl), div_up(ah, bl));
  }
  if (bh < 0) {
    if (al >= 0) return make_interval_unchecked(div_down(ah, bh), div_up(al, bl));
    if (ah <= 0) return make_interval_unchecked(div_down(ah, bl), div_up(al, bh));
    return make_interval_unchecked(div_down(ah, bh), div_up(al, bh));
  }
  // 0 in b.
  if (bl == 0 && bh == 0) return Interval::empty();
  if (a.contains_zero()) return Interval::entire();
  if (bl == 0) {
    if (ah < 0) return make_interval_unchecked(-kInf, div_up(ah, bh));
    return make_interval_unchecked(div_down(al, bh), kInf);
  }
  if (bh == 0) {
    if (ah < 0) return make_interval_unchecked(div_down(ah, bl), kInf);
    return make_interval_unchecked(-kInf, div_up(al, bl));
  }
  return Interval::entire();
}

Interval sqr(const Interval& a) { return pow(a, 2); }

Interval pow(const Interval& a, unsigned n) {
  if (a.is_empty()) return a;
  if (n == 0) return Interval(1.0);
  if (n == 1) return a;
  if (n % 2 == 0) {
    return make_interval_unchecked(rnd::pow_down(a.mig(), n), rnd::pow_up(a.mag(), n));
  }
  const auto down = [n](double v) { return v >= 0 ? rnd::pow_down(v, n) : -rnd::pow_up(-v, n); };
  const auto up = [n](double v) { return v >= 0 ? rnd::pow_up(v, n) : -rnd::pow_down(-v, n); };
  return make_interval_unchecked(down(a.lo()), up(a.hi()));
}

Interval sqrt(const Interval& a) {
  const Interval d = intersect(a, Interval::non_negative());
  if (d.is_empty()) return d;
  return make_interval_unchecked(rnd::sqrt_down(d.lo()), rnd::sqrt_up(d.hi()));
}

Interval exp(const Interval& a) {
  if (a.is_empty()) return a;
  return make_interval_unchecked(exp_down(a.lo()), exp_up(a.hi()));
}

Interval log(const Interval& a) {
  const Interval d = intersect(a, Interval::non_negative());
  if (d.is_empty() || d.hi() == 0) return Interval::empty();
  const double lo = d.lo() == 0 ? -kInf : log_down(d.lo());
  return make_interval_unchecked(lo, log_up(d.hi()));
}

Interval sin(const Interval& a) {
  if (a.is_empty()) return a;
  if (!a.is_bounded() || a.hi() - a.lo() >= kTwoPi) return Interval(-1.0, 1.0);
  const double s1 = std::sin(a.lo()), s2 = std::sin(a.hi());
  double lo = std::min(s1, s2), hi = std::max(s1, s2);
  lo = (a.lo() == 0 && a.hi() == 0) ? 0.0 : rnd::libm_down(lo);
  hi = (a.lo() == 0 && a.hi() == 0) ? 0.0 : rnd::libm_up(hi);
  if (may_contain_periodic(a.lo(), a.hi(), kPi / 2)) hi = 1.0;
  if (may_contain_periodic(a.lo(), a.hi(), -kPi / 2)) lo = -1.0;
  return make_interval_unchecked(std::max(lo, -1.0), std::min(hi, 1.0));
}

Interval cos(const Interval& a) {
  if (a.is_empty()) return a;
  if (!a.is_bounded() || a.hi() - a.lo() >= kTwoPi) return Interval(-1.0, 1.0);
  const double c1 = std::cos(a.lo()), c2 = std::cos(a.hi());
  double lo = rnd::libm_down(std::min(c1, c2));
  double hi = rnd::libm_up(std::max(c1, c2));
  if (may_contain_periodic(a.lo(), a.hi(), 0.0)) hi = 1.0;
  if (may_contain_periodic(a.lo(), a.hi(), kPi)) lo = -1.0;
  return make_interval_unchecked(std::max(lo, -1.0), std::min(hi, 1.0));
}

Interval pow_preimage(const Interval& image, unsigned n, const Interval& domain) {
  if (image.is_empty() || domain.is_empty()) return Interval::empty();
  if (n == 0) return image.contains(1.0) ? domain : Interval::empty();
  if (n == 1) return intersect(image, domain);
  if (n % 2 == 1) {
    return intersect(domain, make_interval_unchecked(odd_root_down(image.lo(), n),
                                                     odd_root_up(image.hi(), n)));
  }
  const Interval y = intersect(image, Interval::non_negative());
  if (y.is_empty()) return y;
  const double rlo = root_down(y.lo(), n);
  const double rhi = root_up(y.hi(), n);
  const Interval pos = intersect(domain, make_interval_unchecked(rlo, rhi));
  const Interval neg = intersect(domain, make_interval_unchecked(-rhi, -rlo));
  return hull(pos, neg);
}

Interval sin_preimage(const Interval& image, const Interval& domain) {
  if (domain.is_empty()) return domain;
  const Interval s = intersect(image, Interval(-1.0, 1.0));
  if (s.is_empty()) return s;
  if (!domain.is_bounded()) return domain;
  // Branch k covers [k*pi - pi/2, k*pi + pi/2]; sin is increasing there for even k.
  const double k = std::floor((domain.lo() + kPi / 2) / kPi);
  const double base = k * kPi;
  const double slack = branch_slack(base) + branch_slack(domain.mag());
  if (domain.lo() < base - kPi / 2 + slack || domain.hi() > base + kPi / 2 - slack) return domain;
  const bool increasing = std::fmod(std::fabs(k), 2.0) == 0.0;
  const double a = std::asin(s.lo()), b = std::asin(s.hi());
  const double lo = increasing ? base + a : base - b;
  const double hi = increasing ? base + b : base - a;
  return intersect(domain, make_interval_unchecked(lo - slack, hi + slack));
}

Interval cos_preimage(const Interval& image, const Interval& domain) {
  if (domain.is_empty()) return domain;
  const Interval c = intersect(image, Interval(-1.0, 1.0));
  if (c.is_empty()) return c;
  if (!domain.is_bounded()) return domain;
  // Branch k covers [k*pi, (k+1)*pi]; cos is decreasing there for even k.
  const double k = std::floor(domain.lo() / kPi);
  const double base = k * kPi;
  const double slack = branch_slack(base) + branch_slack(domain.mag());
  if (domain.lo() < base + slack || domain.hi() > base + kPi - slack) return domain;
  const bool decreasing = std::fmod(std::fabs(k), 2.0) == 0.0;
  double lo, hi;
  if (decreasing) {
    lo = base + std::acos(c.hi());
    hi = base + std::acos(c.lo());
  } else {
    lo = base + std::acos(-c.lo());
    hi = base + std::acos(-c.hi());
  }
  return intersect(domain, make_interval_unchecked(lo - slack, hi + slack));
}

}  // namespace qine
