#pragma once

// Shared test helpers: Boost multiprecision types wired into ScalarTraits,
// and conversions between them and the library's scalars.

#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "acoustic_pulse/double_double.hpp"
#include "acoustic_pulse/scalar.hpp"

using Real50 = boost::multiprecision::cpp_bin_float_50;
using Real100 = boost::multiprecision::cpp_bin_float_100;

namespace acoustic_pulse {

template <class R>
struct MultiprecisionTraits {
  static R epsilon() { return std::numeric_limits<R>::epsilon(); }
  static R pi() { return boost::math::constants::pi<R>(); }
  static R inv_sqrt_2pi() { return boost::math::constants::one_div_root_two_pi<R>(); }
  static R sqrt2() { return boost::math::constants::root_two<R>(); }
  static double to_double(const R& x) { return static_cast<double>(x); }
};

template <>
struct ScalarTraits<Real50> : MultiprecisionTraits<Real50> {};
template <>
struct ScalarTraits<Real100> : MultiprecisionTraits<Real100> {};

}  // namespace acoustic_pulse

inline Real50 to_real50(const acoustic_pulse::DoubleDouble& x) {
  return Real50(x.hi()) + Real50(x.lo());
}

inline Real100 to_real100(const acoustic_pulse::DoubleDouble& x) {
  return Real100(x.hi()) + Real100(x.lo());
}

inline acoustic_pulse::DoubleDouble to_dd(const Real50& x) {
  const double hi = static_cast<double>(x);
  const double lo = static_cast<double>(x - Real50(hi));
  return acoustic_pulse::DoubleDouble(hi, lo);
}
