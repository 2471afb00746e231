#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "quadrature.hpp"
#include "scalar.hpp"

namespace acoustic_pulse {

// Evaluation branch chosen for a point; see classify().
enum class RegionTag : std::uint8_t {
  SmallT,        // t < eps, closed form
  Zero,          // signal has not arrived
  Form1GL,       // Fourier-Bessel integral, Gauss-Legendre
  Form2Uniform,  // shifted-Gaussian integral, uniform-step rule
  Form2Jacobi,   // regularized shifted-Gaussian integral, Gauss-Jacobi
  Form3GL,       // Kirchhoff-type integral with scaled I, Gauss-Legendre
  Series,        // small-r Hermite expansion with asymptotic I_n
};

inline constexpr RegionTag kAllRegions[] = {RegionTag::SmallT,       RegionTag::Zero,
                                            RegionTag::Form1GL,      RegionTag::Form2Uniform,
                                            RegionTag::Form2Jacobi,  RegionTag::Form3GL,
                                            RegionTag::Series};

inline constexpr std::string_view to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::SmallT: return "SmallT";
    case RegionTag::Zero: return "Zero";
    case RegionTag::Form1GL: return "Form1GL";
    case RegionTag::Form2Uniform: return "Form2Uniform";
    case RegionTag::Form2Jacobi: return "Form2Jacobi";
    case RegionTag::Form3GL: return "Form3GL";
    case RegionTag::Series: return "Series";
  }
  return "?";
}

inline std::optional<RegionTag> region_from_string(std::string_view name) {
  for (RegionTag tag : kAllRegions) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

// Largest accuracy for which the zone constants are calibrated; looser
// requests are clamped to it.
inline constexpr double kMaxCalibratedEps = 2e-16;

template <class T>
struct PrecisionParams {
  T requested_eps;
  T eps;  // effective accuracy after clamping
  bool clamped = false;
  T H;    // cropping radius sqrt(-2 ln(eps/2))
  T R1;   // (7.5 eps)^(1/6)
  T R2;   // 5 eps^(1/10)
  int M2 = 0;  // uniform-step half count, ceil(0.2 H^2)
  int M3 = 0;  // Gauss node count, ceil(0.71 H^2) + 1
  int M = 0;   // asymptotic series order, floor(H^2)
  UniformRule<T> uniform;
  T near_threshold;    // 1.05 H
  T shift_threshold;   // 1.152 H
  T series_threshold;  // 1.31 H
};

template <class T>
PrecisionParams<T> make_params(const T& eps) {
  using std::pow;
  if (!is_finite(eps) || !(eps > T(0))) {
    throw std::domain_error("make_params: eps must be finite and > 0");
  }
  PrecisionParams<T> p;
  p.requested_eps = eps;
  p.eps = eps;
  if (eps > T(kMaxCalibratedEps)) {
    p.eps = T(kMaxCalibratedEps);
    p.clamped = true;
  }
  p.H = cropping_radius(p.eps);
  const T H2 = p.H * p.H;
  p.R1 = pow(T(7.5) * p.eps, T(1) / T(6));
  p.R2 = T(5) * pow(p.eps, T(1) / T(10));
  p.M2 = ceil_int(T(0.2) * H2);
  p.M3 = ceil_int(T(0.71) * H2) + 1;
  p.M = floor_int(H2);
  p.uniform = uniform_rule(p.eps);
  p.near_threshold = T(1.05) * p.H;
  p.shift_threshold = T(1.152) * p.H;
  p.series_threshold = T(1.31) * p.H;
  return p;
}

template <class T>
RegionTag classify(const T& t, const T& r, const PrecisionParams<T>& p) {
  if (t - r > p.shift_threshold) {
    if (r > p.R1) return RegionTag::Form2Uniform;
    if (t >= p.series_threshold) return RegionTag::Series;
    return RegionTag::Form3GL;
  }
  if (t < p.eps) return RegionTag::SmallT;
  if (t < r - p.near_threshold) return RegionTag::Zero;
  if (t + r < p.near_threshold) return RegionTag::Form1GL;
  if (r <= p.R2) return RegionTag::Form3GL;
  return RegionTag::Form2Jacobi;
}

}  // namespace acoustic_pulse
