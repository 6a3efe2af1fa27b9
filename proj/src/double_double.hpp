#pragma once

// Double-double arithmetic (about 106 significant bits) for the flow corrector.
// Requires strict IEEE double evaluation: compile without FP contraction.

#include <cmath>

namespace chebyquad::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double x) : hi(x) {}  // NOLINT: implicit by design
  constexpr DD(double h, double l) : hi(h), lo(l) {}
  explicit operator double() const { return hi + lo; }
};

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline void split(double a, double& h, double& l) {
  constexpr double kSplitter = 134217729.0;  // 2^27 + 1
  const double t = kSplitter * a;
  h = t - (t - a);
  l = a - h;
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  double ah, al, bh, bl;
  split(a, ah, al);
  split(b, bh, bl);
  return {p, ((ah * bh - p) + ah * bl + al * bh) + al * bl};
}

inline DD operator+(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  const DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  const DD r = a - b * DD(q1);
  const double q2 = r.hi / b.hi;
  const DD r2 = r - b * DD(q2);
  const double q3 = r2.hi / b.hi;
  return DD(quick_two_sum(q1, q2)) + DD(q3);
}

inline DD& operator+=(DD& a, DD b) { return a = a + b; }
inline DD& operator-=(DD& a, DD b) { return a = a - b; }
inline DD& operator*=(DD& a, DD b) { return a = a * b; }

inline bool operator<(DD a, DD b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b) { return b < a; }
inline bool operator<=(DD a, DD b) { return !(b < a); }
inline bool operator>=(DD a, DD b) { return !(a < b); }
inline bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }

}  // namespace chebyquad::detail
