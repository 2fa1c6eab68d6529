// Directed rounding without touching the FPU rounding mode.
//
// Each primitive computes the round-to-nearest result and then uses an
// error-free transformation (TwoSum, FMA residual) to decide whether the
// exact value lies above or below it.  The result is therefore the correctly
// rounded downward/upward value, and nothing here depends on thread-local
// floating-point state.
#pragma once

#include <cmath>
#include <limits>

namespace qine::rnd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMax = std::numeric_limits<double>::max();

inline double next_down(double v) { return std::nextafter(v, -kInf); }
inline double next_up(double v) { return std::nextafter(v, kInf); }

// Below this magnitude FMA residuals may be inexact because of underflow.
inline constexpr double kTiny = 0x1p-960;

// Overflow to +inf from finite operands is still a valid upper bound; the
// lower bound must stay finite, and symmetrically.
inline double clamp_down(double r) { return r == kInf ? kMax : r; }
inline double clamp_up(double r) { return r == -kInf ? -kMax : r; }

inline double add_down(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return std::isfinite(a) && std::isfinite(b) ? clamp_down(s) : s;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err < 0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return std::isfinite(a) && std::isfinite(b) ? clamp_up(s) : s;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err > 0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// 0 * inf is taken as 0, the usual convention for interval bounds.
inline double mul_down(double a, double b) {
  if (a == 0 || b == 0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return std::isfinite(a) && std::isfinite(b) ? clamp_down(p) : p;
  if (std::fabs(p) < kTiny) return next_down(p);
  const double err = std::fma(a, b, -p);
  return err < 0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
  if (a == 0 || b == 0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return std::isfinite(a) && std::isfinite(b) ? clamp_up(p) : p;
  if (std::fabs(p) < kTiny) return next_up(p);
  const double err = std::fma(a, b, -p);
  return err > 0 ? next_up(p) : p;
}

// Sign of (a/b - q) from the exact remainder a - q*b.
inline int div_error_sign(double a, double b, double q) {
  const double r = std::fma(-q, b, a);
  if (r == 0) return 0;
  return (r > 0) == (b > 0) ? 1 : -1;
}

inline double div_down(double a, double b) {
  if (a == 0) return 0.0;
  const double q = a / b;
  if (!std::isfinite(q) || !std::isfinite(a) || !std::isfinite(b)) {
    return std::isfinite(a) && std::isfinite(b) ? clamp_down(q) : q;
  }
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_down(q);
  return div_error_sign(a, b, q) < 0 ? next_down(q) : q;
}

inline double div_up(double a, double b) {
  if (a == 0) return 0.0;
  const double q = a / b;
  if (!std::isfinite(q) || !std::isfinite(a) || !std::isfinite(b)) {
    return std::isfinite(a) && std::isfinite(b) ? clamp_up(q) : q;
  }
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_up(q);
  return div_error_sign(a, b, q) > 0 ? next_up(q) : q;
}

inline double sqrt_down(double a) {
  const double s = std::sqrt(a);
  if (s == 0 || !std::isfinite(s)) return s;
  if (a < kTiny) return next_down(s);
  return std::fma(-s, s, a) < 0 ? next_down(s) : s;
}

inline double sqrt_up(double a) {
  const double s = std::sqrt(a);
  if (s == 0 || !std::isfinite(s)) return s;
  if (a < kTiny) return next_up(s);
  return std::fma(-s, s, a) > 0 ? next_up(s) : s;
}

// Non-negative base only.
inline double pow_down(double a, unsigned n) {
  double r = 1.0;
  for (unsigned i = 0; i < n; ++i) r = mul_down(r, a);
  return r;
}

inline double pow_up(double a, unsigned n) {
  double r = 1.0;
  for (unsigned i = 0; i < n; ++i) r = mul_up(r, a);
  return r;
}

// libm transcendental results are within one ulp; widen by one ulp unless
// the value is exact.
inline double libm_down(double v) { return std::isfinite(v) ? next_down(v) : v; }
inline double libm_up(double v) { return std::isfinite(v) ? next_up(v) : v; }

}  // namespace qine::rnd
