#pragma once

// Unevaluated sum of two doubles (hi + lo, |lo| <= ulp(hi)/2), roughly 106
// bits of significand. Arithmetic follows the classic error-free
// transformations (Dekker, Knuth) with fma-based products.

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace acoustic_pulse {

class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(int x) : hi_(static_cast<double>(x)), lo_(0.0) {}  // NOLINT
  constexpr DoubleDouble(long x) : hi_(static_cast<double>(x)), lo_(0.0) {}  // NOLINT
  constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  explicit constexpr operator double() const { return hi_ + lo_; }

  static DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
  }
  static DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
  }
  static DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble s = two_sum(a.hi_, b.hi_);
    DoubleDouble t = two_sum(a.lo_, b.lo_);
    s.lo_ += t.hi_;
    s = quick_two_sum(s.hi_, s.lo_);
    s.lo_ += t.lo_;
    return quick_two_sum(s.hi_, s.lo_);
  }
  friend DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi_, -a.lo_}; }
  friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

  friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble p = two_prod(a.hi_, b.hi_);
    p.lo_ += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    return quick_two_sum(p.hi_, p.lo_);
  }
  friend DoubleDouble operator*(const DoubleDouble& a, double b) {
    DoubleDouble p = two_prod(a.hi_, b);
    p.lo_ += a.lo_ * b;
    return quick_two_sum(p.hi_, p.lo_);
  }
  friend DoubleDouble operator*(double a, const DoubleDouble& b) { return b * a; }

  friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
    const double q1 = a.hi_ / b.hi_;
    DoubleDouble r = a - b * q1;
    const double q2 = r.hi_ / b.hi_;
    r = r - b * q2;
    const double q3 = r.hi_ / b.hi_;
    DoubleDouble q = quick_two_sum(q1, q2);
    return q + DoubleDouble(q3);
  }

  DoubleDouble& operator+=(const DoubleDouble& b) { return *this = *this + b; }
  DoubleDouble& operator-=(const DoubleDouble& b) { return *this = *this - b; }
  DoubleDouble& operator*=(const DoubleDouble& b) { return *this = *this * b; }
  DoubleDouble& operator/=(const DoubleDouble& b) { return *this = *this / b; }

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend bool operator!=(const DoubleDouble& a, const DoubleDouble& b) { return !(a == b); }
  friend bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
  }
  friend bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }
  friend bool operator<=(const DoubleDouble& a, const DoubleDouble& b) { return !(b < a); }
  friend bool operator>=(const DoubleDouble& a, const DoubleDouble& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const DoubleDouble& x) {
    return os << x.hi_ << (x.lo_ < 0 ? " - " : " + ") << std::abs(x.lo_);
  }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

namespace dd_constants {
inline constexpr DoubleDouble pi{3.1415926535897931, 1.2246467991473532e-16};
inline constexpr DoubleDouble ln2{0.69314718055994529, 2.3190468138462996e-17};
// pi/2 as three non-overlapping doubles for argument reduction
inline constexpr double half_pi_1 = 1.5707963267948966;
inline constexpr double half_pi_2 = 6.123233995736766e-17;
inline constexpr double half_pi_3 = -1.4973849048591698e-33;
}  // namespace dd_constants

inline DoubleDouble abs(const DoubleDouble& x) { return x.hi() < 0.0 ? -x : x; }
inline DoubleDouble fabs(const DoubleDouble& x) { return abs(x); }

inline bool isfinite(const DoubleDouble& x) { return std::isfinite(x.hi()); }
inline bool isnan(const DoubleDouble& x) { return std::isnan(x.hi()); }

inline DoubleDouble ldexp(const DoubleDouble& x, int e) {
  return {std::ldexp(x.hi(), e), std::ldexp(x.lo(), e)};
}

inline DoubleDouble floor(const DoubleDouble& x) {
  const double hi = std::floor(x.hi());
  if (hi == x.hi()) return DoubleDouble::quick_two_sum(hi, std::floor(x.lo()));
  return {hi, 0.0};
}
inline DoubleDouble ceil(const DoubleDouble& x) {
  const double hi = std::ceil(x.hi());
  if (hi == x.hi()) return DoubleDouble::quick_two_sum(hi, std::ceil(x.lo()));
  return {hi, 0.0};
}
inline DoubleDouble round(const DoubleDouble& x) { return floor(x + DoubleDouble(0.5)); }

inline DoubleDouble sqrt(const DoubleDouble& a) {
  if (a.hi() <= 0.0) {
    if (a.hi() == 0.0) return {0.0, 0.0};
    return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  }
  // One Newton step on the double estimate doubles the precision.
  const double x = 1.0 / std::sqrt(a.hi());
  const double ax = a.hi() * x;
  const DoubleDouble ax2 = DoubleDouble::two_prod(ax, ax);
  return DoubleDouble::two_sum(ax, ((a - ax2).hi()) * (x * 0.5));
}

inline DoubleDouble exp(const DoubleDouble& a) {
  if (a.hi() > 709.7) return {std::numeric_limits<double>::infinity(), 0.0};
  if (a.hi() < -745.0) return {0.0, 0.0};
  if (a.hi() == 0.0) return {1.0, 0.0};
  // exp(a) = 2^k * (exp(r))^512, |r| <= ln2/1024
  const double k = std::nearbyint(a.hi() / dd_constants::ln2.hi());
  DoubleDouble r = a - dd_constants::ln2 * k;
  r = ldexp(r, -9);
  // Taylor series of exp(r) - 1
  DoubleDouble term = r;
  DoubleDouble sum = r;
  for (int i = 2; i <= 12; ++i) {
    term = term * r / DoubleDouble(static_cast<double>(i));
    sum += term;
    if (std::abs(term.hi()) < 1e-36) break;
  }
  // (1 + s)^2 - 1 = s * (s + 2), keeps the small quantity small
  for (int i = 0; i < 9; ++i) sum = sum * (sum + DoubleDouble(2.0));
  sum += DoubleDouble(1.0);
  return ldexp(sum, static_cast<int>(k));
}

inline DoubleDouble log(const DoubleDouble& a) {
  if (a.hi() <= 0.0) {
    return {a.hi() == 0.0 ? -std::numeric_limits<double>::infinity()
                          : std::numeric_limits<double>::quiet_NaN(),
            0.0};
  }
  DoubleDouble x{std::log(a.hi()), 0.0};
  // Newton on exp(x) = a
  x = x + a * exp(-x) - DoubleDouble(1.0);
  return x;
}

inline DoubleDouble pow(const DoubleDouble& base, const DoubleDouble& e) { return exp(e * log(base)); }

namespace detail {

// sin and cos of |r| <= pi/4 by Taylor series.
inline void sincos_reduced(const DoubleDouble& r, DoubleDouble& s, DoubleDouble& c) {
  const DoubleDouble r2 = r * r;
  DoubleDouble term = r;
  s = r;
  for (int i = 3; i < 40; i += 2) {
    term = -term * r2 / DoubleDouble(static_cast<double>((i - 1) * i));
    s += term;
    if (std::abs(term.hi()) < 1e-35) break;
  }
  term = DoubleDouble(1.0);
  c = DoubleDouble(1.0);
  for (int i = 2; i < 40; i += 2) {
    term = -term * r2 / DoubleDouble(static_cast<double>((i - 1) * i));
    c += term;
    if (std::abs(term.hi()) < 1e-35) break;
  }
}

}  // namespace detail

// sin(x), cos(x); reduction by pi/2 with a three-part constant keeps the
// absolute error near 1e-32 * (1 + |x| * 1e-17) for |x| up to ~1e15.
inline void sincos(const DoubleDouble& x, DoubleDouble& s, DoubleDouble& c) {
  using namespace dd_constants;
  const double j = std::nearbyint(x.hi() / half_pi_1);
  DoubleDouble r = x - DoubleDouble::two_prod(j, half_pi_1);
  r = r - DoubleDouble::two_prod(j, half_pi_2);
  r = r - DoubleDouble(j * half_pi_3);
  DoubleDouble sr, cr;
  detail::sincos_reduced(r, sr, cr);
  const auto quadrant = static_cast<std::int64_t>(std::fmod(j, 4.0) + 4.0) % 4;
  switch (quadrant) {
    case 0: s = sr; c = cr; break;
    case 1: s = cr; c = -sr; break;
    case 2: s = -sr; c = -cr; break;
    default: s = -cr; c = sr; break;
  }
}

inline DoubleDouble sin(const DoubleDouble& x) {
  DoubleDouble s, c;
  sincos(x, s, c);
  return s;
}
inline DoubleDouble cos(const DoubleDouble& x) {
  DoubleDouble s, c;
  sincos(x, s, c);
  return c;
}

}  // namespace acoustic_pulse
