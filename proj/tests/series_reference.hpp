#pragma once

// Multiprecision quadrature of
//   I_n(t) = int_0^inf He_n(w) exp(-w^2/2) exp(i t w) dw,  n = 0..6,
// by composite Gauss-Legendre, for checking the asymptotic sums.

#include <array>
#include <cmath>

#include "acoustic_pulse/oracle.hpp"
#include "support.hpp"

template <class R>
struct HermiteFourier {
  std::array<R, 7> re;
  std::array<R, 7> im;
};

template <class R>
HermiteFourier<R> hermite_fourier(const R& t, double extent, int nodes_per_panel = 32) {
  static const acoustic_pulse::ReferenceRule<R> rule =
      acoustic_pulse::reference_gauss_legendre<R>(nodes_per_panel);
  const double tt = static_cast<double>(t);
  const double width = std::min(0.5, 3.141592653589793 / (4.0 * std::max(tt, 1.0)));
  const int panels = static_cast<int>(std::ceil(extent / width));
  HermiteFourier<R> out;
  out.re.fill(R(0));
  out.im.fill(R(0));
  acoustic_pulse::composite_gauss_legendre(rule, R(0), R(extent), panels, [&](const R& w, const R& wt) {
    const R g = wt * exp(-(w * w) / 2);
    const R c = cos(t * w), s = sin(t * w);
    // He_{k+1} = w He_k - k He_{k-1}
    R he_prev = 1, he = w;
    out.re[0] += g * c;
    out.im[0] += g * s;
    for (int k = 1; k <= 6; ++k) {
      out.re[k] += g * he * c;
      out.im[k] += g * he * s;
      const R next = w * he - R(k) * he_prev;
      he_prev = he;
      he = next;
    }
  });
  return out;
}
