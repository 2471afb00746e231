#pragma once

// Bessel J0, J1 and exponentially scaled modified Bessel I0, I1 over a
// generic real scalar. The double instantiation of J routes to libm.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "scalar.hpp"

namespace acoustic_pulse {

template <class T>
struct BesselPair {
  T j0;
  T j1;
};

namespace detail {

// Argument above which the Hankel-type asymptotic expansions reach the
// working precision (smallest term ~ exp(-2x)).
template <class T>
inline double asymptotic_threshold() {
  const double eps = to_double(ScalarTraits<T>::epsilon());
  return 0.6 * -std::log(eps);
}

template <class T>
BesselPair<T> bessel_j01_series(const T& x) {
  const T eps = ScalarTraits<T>::epsilon();
  const T q = -(x * x) / T(4);
  T term0(1), sum0(1);
  T term1(1), sum1(1);
  for (int k = 1; k < 200; ++k) {
    term0 = term0 * q / T(k * k);
    term1 = term1 * q / T(k * (k + 1));
    sum0 += term0;
    sum1 += term1;
    using std::abs;
    if (abs(term0) < eps * T(1e-3) && abs(term1) < eps * T(1e-3)) break;
  }
  return {sum0, sum1 * x / T(2)};
}

// Miller's backward recurrence normalized by J0 + 2 sum J_2k = 1.
template <class T>
BesselPair<T> bessel_j01_miller(const T& x) {
  const double xd = to_double(x);
  const double extra = 0.6 * -std::log(to_double(ScalarTraits<T>::epsilon())) + 10.0;
  int start = static_cast<int>(xd + extra + 4.0 * std::cbrt(xd));
  start += start % 2;
  const T two_over_x = T(2) / x;
  T next(0);              // J_{k+1}
  T cur(1e-30);           // J_k
  T sum(0);
  T j1(0);
  for (int k = start; k > 0; --k) {
    T prev = T(static_cast<double>(k)) * two_over_x * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 == 1) j1 = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) sum += T(2) * cur;
    using std::abs;
    if (abs(cur) > T(1e250)) {
      const T scale(1e-250);
      cur = cur * scale;
      next = next * scale;
      sum = sum * scale;
      j1 = j1 * scale;
    }
  }
  sum += cur;
  return {cur / sum, j1 / sum};
}

template <class T>
BesselPair<T> bessel_j01_asymptotic(const T& x) {
  using std::abs;
  using std::sqrt;
  const T eps = ScalarTraits<T>::epsilon();
  // a_k(nu) = prod_{i<=k} (4 nu^2 - (2i-1)^2) / (k! 8^k)
  T p0(1), q0(0), p1(1), q1(0);
  T a0(1), a1(1);
  T xpow(1);
  T last0 = std::numeric_limits<double>::max();
  for (int k = 1; k < 200; ++k) {
    const T odd2(static_cast<double>((2 * k - 1) * (2 * k - 1)));
    a0 = a0 * (T(0) - odd2) / T(8.0 * k);
    a1 = a1 * (T(4) - odd2) / T(8.0 * k);
    xpow = xpow * x;
    const T t0 = a0 / xpow;
    const T t1 = a1 / xpow;
    if (abs(t0) > last0) break;  // asymptotic tail turning
    last0 = abs(t0);
    // P collects even k with sign (-1)^(k/2), Q odd k with (-1)^((k-1)/2)
    const int r = k % 4;
    if (r == 0) { p0 += t0; p1 += t1; }
    else if (r == 1) { q0 += t0; q1 += t1; }
    else if (r == 2) { p0 -= t0; p1 -= t1; }
    else { q0 -= t0; q1 -= t1; }
    if (abs(t0) < eps * T(1e-3) && abs(t1) < eps * T(1e-3)) break;
  }
  T s, c;
  sin_cos(x, s, c);
  const T scale = T(1) / sqrt(ScalarTraits<T>::pi() * x);
  return {scale * (p0 * (c + s) + q0 * (c - s)), scale * (p1 * (s - c) + q1 * (s + c))};
}

}  // namespace detail

// J0(x) and J1(x) together.
template <class T>
BesselPair<T> bessel_j01(const T& x) {
  if (!is_finite(x)) throw std::domain_error("bessel_j: non-finite argument");
  using std::abs;
  const T ax = abs(x);
  BesselPair<T> out;
  if (ax <= T(2)) {
    out = detail::bessel_j01_series(ax);
  } else if (to_double(ax) < detail::asymptotic_threshold<T>()) {
    out = detail::bessel_j01_miller(ax);
  } else {
    out = detail::bessel_j01_asymptotic(ax);
  }
  if (x < T(0)) out.j1 = -out.j1;
  return out;
}

template <>
inline BesselPair<double> bessel_j01(const double& x) {
  if (!std::isfinite(x)) throw std::domain_error("bessel_j: non-finite argument");
  return {::j0(x), ::j1(x)};
}

template <class T>
T bessel_j(int order, const T& x) {
  if (order != 0 && order != 1) {
    throw std::invalid_argument("bessel_j: order must be 0 or 1, got " + std::to_string(order));
  }
  const BesselPair<T> pair = bessel_j01(x);
  return order == 0 ? pair.j0 : pair.j1;
}

// exp(-x) I0(x) and exp(-x) I1(x) for x >= 0.
template <class T>
BesselPair<T> scaled_bessel_i01(const T& x) {
  if (!is_finite(x) || x < T(0)) {
    throw std::domain_error("scaled_bessel_i: argument must be finite and >= 0");
  }
  using std::abs;
  using std::exp;
  using std::sqrt;
  const T eps = ScalarTraits<T>::epsilon();
  if (to_double(x) < detail::asymptotic_threshold<T>()) {
    // positive-term power series; the largest partial sum is below exp(x)
    const T q = x * x / T(4);
    T term0(1), sum0(1), term1(1), sum1(1);
    for (int k = 1; k < 400; ++k) {
      term0 = term0 * q / T(k * k);
      term1 = term1 * q / T(k * (k + 1));
      sum0 += term0;
      sum1 += term1;
      if (term0 < eps * T(1e-3) * sum0) break;
    }
    const T damp = exp(-x);
    return {damp * sum0, damp * sum1 * x / T(2)};
  }
  // exp(-x) I_nu(x) ~ (2 pi x)^(-1/2) sum (-1)^k a_k(nu) / x^k
  T s0(1), s1(1), a0(1), a1(1), xpow(1);
  T last = std::numeric_limits<double>::max();
  for (int k = 1; k < 200; ++k) {
    const T odd2(static_cast<double>((2 * k - 1) * (2 * k - 1)));
    a0 = a0 * (T(0) - odd2) / T(8.0 * k);
    a1 = a1 * (T(4) - odd2) / T(8.0 * k);
    xpow = xpow * x;
    const T t0 = a0 / xpow;
    const T t1 = a1 / xpow;
    if (abs(t0) > last) break;
    last = abs(t0);
    if (k % 2 == 0) { s0 += t0; s1 += t1; }
    else { s0 -= t0; s1 -= t1; }
    if (abs(t0) < eps * T(1e-3) && abs(t1) < eps * T(1e-3)) break;
  }
  const T scale = T(1) / sqrt(T(2) * ScalarTraits<T>::pi() * x);
  return {scale * s0, scale * s1};
}

template <class T>
T scaled_bessel_i(int order, const T& x) {
  if (order != 0 && order != 1) {
    throw std::invalid_argument("scaled_bessel_i: order must be 0 or 1, got " +
                                std::to_string(order));
  }
  const BesselPair<T> pair = scaled_bessel_i01(x);
  return order == 0 ? pair.j0 : pair.j1;
}

// k!! for k >= -1, with (-1)!! = 0!! = 1.
inline double double_factorial(int k) {
  if (k < -1) throw std::domain_error("double_factorial: k must be >= -1");
  double result = 1.0;
  for (int i = k; i > 1; i -= 2) {
    result *= static_cast<double>(i);
    if (!std::isfinite(result)) throw std::overflow_error("double_factorial: result overflows");
  }
  return result;
}

}  // namespace acoustic_pulse
