#pragma once

#include <cmath>
#include <limits>
#include <type_traits>

#include "double_double.hpp"

namespace acoustic_pulse {

// Per-scalar constants and conversions. Specialize for any other real type
// used with the library (the tests add one for Boost multiprecision).
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr double epsilon() { return std::numeric_limits<double>::epsilon(); }
  static constexpr double pi() { return 3.141592653589793238462643383279502884; }
  static constexpr double inv_sqrt_2pi() { return 0.398942280401432677939946059934381868; }
  static constexpr double sqrt2() { return 1.41421356237309504880168872420969808; }
  static constexpr double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<DoubleDouble> {
  static constexpr DoubleDouble epsilon() { return DoubleDouble(4.93038065763132e-32); }
  static constexpr DoubleDouble pi() { return dd_constants::pi; }
  static constexpr DoubleDouble inv_sqrt_2pi() {
    return DoubleDouble(0.3989422804014327, -2.49232720227773e-17);
  }
  static constexpr DoubleDouble sqrt2() {
    return DoubleDouble(1.4142135623730951, -9.6672933134529135e-17);
  }
  static constexpr double to_double(const DoubleDouble& x) { return static_cast<double>(x); }
};

template <class T>
inline double to_double(const T& x) {
  return ScalarTraits<T>::to_double(x);
}

// sin and cos at the same argument; one argument reduction for DoubleDouble.
inline void sin_cos(double x, double& s, double& c) {
  s = std::sin(x);
  c = std::cos(x);
}
inline void sin_cos(const DoubleDouble& x, DoubleDouble& s, DoubleDouble& c) { sincos(x, s, c); }
template <class T>
inline void sin_cos(const T& x, T& s, T& c) {
  using std::cos;
  using std::sin;
  s = sin(x);
  c = cos(x);
}

// Integer-valued ceil/floor of a real scalar.
template <class T>
inline int ceil_int(const T& x) {
  using std::ceil;
  return static_cast<int>(to_double(ceil(x)));
}
template <class T>
inline int floor_int(const T& x) {
  using std::floor;
  return static_cast<int>(to_double(floor(x)));
}

// Quadrature sum. Neumaier-compensated in double, where the rounding of a
// few dozen terms is otherwise comparable to the target accuracy.
template <class T>
class Accumulator {
 public:
  void add(const T& x) { sum_ += x; }
  T value() const { return sum_; }

 private:
  T sum_ = T(0);
};

template <>
class Accumulator<double> {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Type for short intermediate computations needing a few extra bits.
template <class T>
struct Wider {
  using type = T;
};
template <>
struct Wider<double> {
  using type = DoubleDouble;
};

template <class T, class W>
T narrow(const W& x) {
  if constexpr (std::is_same_v<T, W>) {
    return x;
  } else {
    return to_double(x);
  }
}

template <class T>
inline bool is_finite(const T& x) {
  using std::isfinite;
  return isfinite(x);
}

}  // namespace acoustic_pulse
