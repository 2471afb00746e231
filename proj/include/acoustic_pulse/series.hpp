#pragma once

// Small-r, large-t approximation. With
//   I_n(t) = int_0^inf He_n(w) exp(-w^2/2) exp(i t w) dw,
// the Taylor expansion of w J0(r w), w J1(r w) in the Hermite basis gives
// p and ur as short combinations of Re I_n / Im I_n, and
//   I_n(t) ~ -i^(n-1) sum_{l=ceil(n/2)}^{floor((M-1)/2)} (2l-1)!! / t^(2l-n+1).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "forms.hpp"
#include "params.hpp"

namespace acoustic_pulse {

inline constexpr int kMaxHermiteIndex = 6;

template <class T>
struct AsymptoticSums {
  // S_n = sum_l (2l-1)!! / t^(2l-n+1), n = 0..6, all with the same cut
  std::array<T, kMaxHermiteIndex + 1> sum;
  int terms = 0;  // number of l values visited
};

// All seven truncated sums in one pass over l. With stop_eps > 0 the loop
// ends at the first l where every active term is below stop_eps / 8 and
// the term ratio (2l+1)/t^2 is still below one; otherwise it runs to
// floor((M-1)/2).
template <class T>
AsymptoticSums<T> asymptotic_sums(const T& t, int M, const T& stop_eps) {
  using std::abs;
  AsymptoticSums<T> out;
  out.sum.fill(T(0));
  std::array<T, kMaxHermiteIndex + 1> tpow;
  tpow[0] = T(1);
  for (int n = 1; n <= kMaxHermiteIndex; ++n) tpow[n] = tpow[n - 1] * t;
  const T inv_t2 = T(1) / (t * t);
  const int last = (M - 1) / 2;
  T base = T(1) / t;  // (2l-1)!! / t^(2l+1)
  for (int l = 0; l <= last; ++l) {
    if (l > 0) base = base * T(2 * l - 1) * inv_t2;
    const int n_max = std::min(2 * l, kMaxHermiteIndex);
    T largest(0);
    for (int n = 0; n <= n_max; ++n) {
      const T term = base * tpow[n];
      out.sum[n] += term;
      if (abs(term) > largest) largest = abs(term);
    }
    ++out.terms;
    if (stop_eps > T(0) && n_max == kMaxHermiteIndex && largest < stop_eps / T(8) &&
        T(2 * l + 1) * inv_t2 < T(1)) {
      break;
    }
  }
  return out;
}

// Re I_n(t) for odd n: sign (-1)^((n-1)/2 + 1).
template <class T>
T asymptotic_In_real_part(int n, const T& t, int M, const T& stop_eps) {
  if (n != 1 && n != 3 && n != 5) throw std::invalid_argument("real part needs n in {1,3,5}");
  const T s = asymptotic_sums(t, M, stop_eps).sum[n];
  return ((n - 1) / 2) % 2 == 0 ? -s : s;
}

// Im I_n(t) for even n: sign (-1)^(n/2).
template <class T>
T asymptotic_In_imag_part(int n, const T& t, int M, const T& stop_eps) {
  if (n < 0 || n > 6 || n % 2 != 0) throw std::invalid_argument("imag part needs n in {0,2,4,6}");
  const T s = asymptotic_sums(t, M, stop_eps).sum[n];
  return (n / 2) % 2 == 0 ? s : -s;
}

template <class T>
T asymptotic_In_real_part(int n, const T& t, const PrecisionParams<T>& p) {
  return asymptotic_In_real_part(n, t, p.M, p.eps);
}
template <class T>
T asymptotic_In_imag_part(int n, const T& t, const PrecisionParams<T>& p) {
  return asymptotic_In_imag_part(n, t, p.M, p.eps);
}

// Hermite coefficients of the truncated Taylor expansions
//   w J0(r w) = sum p_coeffs[k] He_{2k+1}(w) + O(r^6),
//   w J1(r w) = sum u_coeffs[k] He_{2k}(w)   + O(r^7).
template <class T>
struct SeriesCoeffs {
  std::array<T, 3> p_coeffs;  // He1, He3, He5
  std::array<T, 4> u_coeffs;  // He0, He2, He4, He6
};

template <class T>
SeriesCoeffs<T> series_coeffs(const T& r) {
  const T r2 = r * r;
  const T r3 = r2 * r;
  const T r4 = r2 * r2;
  const T r5 = r4 * r;
  SeriesCoeffs<T> c;
  c.p_coeffs = {T(15) / T(64) * r4 - T(3) / T(4) * r2 + T(1),
                T(5) / T(32) * r4 - T(1) / T(4) * r2,
                r4 / T(64)};
  c.u_coeffs = {T(5) / T(128) * r5 - T(3) / T(16) * r3 + r / T(2),
                T(15) / T(128) * r5 - T(3) / T(8) * r3 + r / T(2),
                T(5) / T(128) * r5 - r3 / T(16),
                r5 / T(384)};
  return c;
}

template <class T>
PulseSolution<T> series_eval(const FormContext<T>& ctx, const T& t, const T& r) {
  const PrecisionParams<T>& p = ctx.params;
  const AsymptoticSums<T> s = asymptotic_sums(t, p.M, p.eps);
  const SeriesCoeffs<T> c = series_coeffs(r);
  // Re I1 = -S1, Re I3 = S3, Re I5 = -S5; Im I0 = S0, Im I2 = -S2, ...
  const T pressure = -c.p_coeffs[0] * s.sum[1] + c.p_coeffs[1] * s.sum[3] - c.p_coeffs[2] * s.sum[5];
  const T velocity = c.u_coeffs[0] * s.sum[0] - c.u_coeffs[1] * s.sum[2] +
                     c.u_coeffs[2] * s.sum[4] - c.u_coeffs[3] * s.sum[6];
  return {pressure, velocity, p.eps, RegionTag::Series, static_cast<std::uint32_t>(s.terms)};
}

}  // namespace acoustic_pulse
