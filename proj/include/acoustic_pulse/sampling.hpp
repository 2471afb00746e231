#pragma once

// Point sets shared by the CLI, the tests and the acceptance run.

#include <array>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "evaluator.hpp"
#include "params.hpp"

namespace acoustic_pulse {

struct LatticeSpec {
  int n_min = -600;
  int n_max = 600;
  int m_min = -600;
  int m_max = 600;
  int stride = 25;
  double base = 1.01;
};

// t = base^n, r = base^m, row-major in n.
inline std::vector<Point<double>> geometric_lattice(const LatticeSpec& spec) {
  if (spec.stride < 1) throw std::invalid_argument("lattice stride must be >= 1");
  if (spec.n_max < spec.n_min || spec.m_max < spec.m_min) {
    throw std::invalid_argument("lattice range is empty");
  }
  std::vector<Point<double>> pts;
  for (int n = spec.n_min; n <= spec.n_max; n += spec.stride) {
    for (int m = spec.m_min; m <= spec.m_max; m += spec.stride) {
      pts.push_back({std::pow(spec.base, n), std::pow(spec.base, m)});
    }
  }
  return pts;
}

struct RegionBox {
  double t_lo, t_hi, r_lo, r_hi;
};

// A (t, r) box that contains a sizeable part of the region.
inline RegionBox region_box(const PrecisionParams<double>& p, RegionTag tag) {
  const double H = p.H;
  switch (tag) {
    case RegionTag::SmallT: return {0.0, p.eps, 0.0, 4.0 * H};
    case RegionTag::Zero: return {0.0, 4.0 * H, 0.0, 8.0 * H};
    case RegionTag::Form1GL: return {0.0, p.near_threshold, 0.0, p.near_threshold};
    case RegionTag::Form2Uniform: return {0.0, 40.0 * H, 0.0, 40.0 * H};
    case RegionTag::Form2Jacobi: return {0.0, 40.0 * H, 0.0, 40.0 * H};
    case RegionTag::Form3GL: return {0.0, p.series_threshold, 0.0, p.R2};
    case RegionTag::Series: return {p.series_threshold, 40.0 * H, 0.0, p.R1};
  }
  throw std::logic_error("region_box: unknown region");
}

// Uniform in the region's box, rejected until classify() agrees.
inline Point<double> sample_in_region(const Evaluator<double>& ev, RegionTag tag,
                                      std::mt19937_64& rng) {
  const RegionBox box = region_box(ev.params(), tag);
  std::uniform_real_distribution<double> ut(box.t_lo, box.t_hi);
  std::uniform_real_distribution<double> ur(box.r_lo, box.r_hi);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Point<double> pt{ut(rng), ur(rng)};
    if (ev.classify(pt.t, pt.r) == tag) return pt;
  }
  throw std::runtime_error("sample_in_region: no point found for " + std::string(to_string(tag)));
}

inline constexpr std::uint64_t kBenchSeed = 20240611ULL;

// n points, an equal share per region tag, interleaved so that every prefix
// is stratified.
inline std::vector<Point<double>> stratified_points(const Evaluator<double>& ev, std::size_t n,
                                                    std::uint64_t seed = kBenchSeed) {
  std::mt19937_64 rng(seed);
  std::vector<Point<double>> pts;
  pts.reserve(n);
  constexpr std::size_t kRegions = std::size(kAllRegions);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(sample_in_region(ev, kAllRegions[i % kRegions], rng));
  }
  return pts;
}

}  // namespace acoustic_pulse
