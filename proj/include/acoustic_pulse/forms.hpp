#pragma once

// The three integral representations of the pulse solution, each cropped
// and mapped onto a fixed quadrature rule. None of these functions check
// the zone preconditions; the dispatcher guarantees them, and tests use
// them slightly outside their zones to compare neighbouring branches.

#include <cmath>
#include <cstdint>
#include <memory>
#include <type_traits>
#include <vector>

#include "params.hpp"
#include "quadrature.hpp"
#include "scalar.hpp"
#include "specfun.hpp"

namespace acoustic_pulse {

template <class T>
struct PulseSolution {
  T p;
  T ur;
  T eps;
  RegionTag region = RegionTag::Zero;
  std::uint32_t kernel_evals = 0;  // integrand / series-term evaluations spent
};

// Immutable per-eps state shared by all forms: constants and Gauss rules.
template <class T>
struct FormContext {
  PrecisionParams<T> params;
  std::shared_ptr<const QuadratureRule<T>> legendre;
  std::shared_ptr<const QuadratureRule<T>> jacobi;
  // Form 1 nodes w = H (1 + x) / 2 as w_hi + w_lo from a Wider<T> rule,
  // and the fixed factor weight * H / 2 * w e^{-w^2/2}.
  std::vector<T> f1_w_hi, f1_w_lo, f1_amp;
};

template <class T>
FormContext<T> make_form_context(const T& eps) {
  using std::exp;
  using W = typename Wider<T>::type;
  FormContext<T> ctx;
  ctx.params = make_params(eps);
  ctx.legendre = rule_cache_get<T>(RuleKind::GaussLegendre, ctx.params.M3);
  ctx.jacobi = rule_cache_get<T>(RuleKind::GaussJacobiHalfSingular, ctx.params.M3);
  const auto wide = rule_cache_get<W>(RuleKind::GaussLegendre, ctx.params.M3);
  const W half_h = W(ctx.params.H) / W(2);
  for (int i = 0; i < wide->size(); ++i) {
    const W w = half_h * (W(1) + wide->nodes[i]);
    const T hi = narrow<T>(w);
    ctx.f1_w_hi.push_back(hi);
    ctx.f1_w_lo.push_back(narrow<T>(w - W(hi)));
    ctx.f1_amp.push_back(narrow<T>(wide->weights[i] * half_h * w * exp(-(w * w) / W(2))));
  }
  return ctx;
}

template <class T>
PulseSolution<T> small_t_eval(const FormContext<T>& ctx, const T& t, const T& r) {
  using std::exp;
  const T g = exp(-(r * r) / T(2));
  // 0 - tr keeps ur = +0 at t = 0
  return {g, (T(0) - t * r) * g, ctx.params.eps, RegionTag::SmallT, 1};
}

template <class T>
PulseSolution<T> zero_eval(const FormContext<T>& ctx, const T&, const T&) {
  return {T(0), T(0), ctx.params.eps, RegionTag::Zero, 0};
}

// p = int_0^H w e^{-w^2/2} J0(r w) cos(t w) dw, ur likewise with J1, sin;
// w = H (1 + x) / 2 maps the cropped range onto [-1, 1]. In double the
// phases t w and r w reach ~1.05 H^2, so their rounding and that of the
// nodes is put back to first order: cos(a + d) = cos a - d sin a,
// J0'(x) = -J1(x), J1'(x) = J0(x) - J1(x) / x.
template <class T>
PulseSolution<T> form1_eval(const FormContext<T>& ctx, const T& t, const T& r) {
  const int n = static_cast<int>(ctx.f1_w_hi.size());
  Accumulator<T> sum_p, sum_u;
  for (int i = 0; i < n; ++i) {
    const T& w = ctx.f1_w_hi[i];
    T s, c;
    BesselPair<T> jn;
    if constexpr (std::is_same_v<T, double>) {
      const DoubleDouble ph = DoubleDouble::two_prod(t, w);
      const double dph = ph.lo() + t * ctx.f1_w_lo[i];
      sin_cos(ph.hi(), s, c);
      const double c0 = c;
      c -= s * dph;
      s += c0 * dph;
      const DoubleDouble x = DoubleDouble::two_prod(r, w);
      const double dx = x.lo() + r * ctx.f1_w_lo[i];
      jn = bessel_j01(x.hi());
      if (dx != 0.0) {
        const double j0 = jn.j0;
        jn.j0 -= jn.j1 * dx;
        jn.j1 += (j0 - jn.j1 / x.hi()) * dx;
      }
    } else {
      jn = bessel_j01(r * w);
      sin_cos(t * w, s, c);
    }
    sum_p.add(ctx.f1_amp[i] * jn.j0 * c);
    sum_u.add(ctx.f1_amp[i] * jn.j1 * s);
  }
  return {sum_p.value(), sum_u.value(), ctx.params.eps, RegionTag::Form1GL, static_cast<std::uint32_t>(n)};
}

template <class T>
struct ShiftedGaussianPair {
  T j0;  // J_0(tau, r)
  T j1;  // J_1(tau, r)
  std::uint32_t evals = 0;
};

// f_j(eta) + f_j(-eta) for f_j(eta) = eta (1 + xi)^j (xi (xi + 2))^(-1/2)
// Theta(xi), xi(eta) = (d + eta) / r, d = tau - r, eta > 0. With
// A = d +- eta and S = sqrt(A (A + 2r)) = r sqrt(xi (xi + 2)), the pair is
// put over a common denominator using S_p^2 - S_m^2 = 4 (r + d) eta, so the
// two singular factors never cancel. Evaluated in Wider<T>; returns false
// when both halves are cut off by Theta.
template <class T>
bool shifted_gaussian_pair_term(const T& tau, const T& r, const T& d, const T& eta, T& pair0,
                                T& pair1) {
  using std::sqrt;
  using W = typename Wider<T>::type;
  (void)tau;  // r + d is used so the pair depends on (d, r, eta) only
  const W rw(r), dw(d), ew(eta);
  const W a_p = dw + ew;
  if (!(a_p > W(0))) return false;
  const W s_p = sqrt(a_p * (a_p + W(2) * rw));
  const W tw = rw + dw;
  const W a_m = dw - ew;
  if (!(a_m > W(0))) {
    pair0 = static_cast<T>(ew * rw / s_p);
    pair1 = static_cast<T>(ew * (tw + ew) / s_p);
    return true;
  }
  const W s_m = sqrt(a_m * (a_m + W(2) * rw));
  const W num = W(4) * tw * ew * ew * rw / (s_p * s_m);
  pair0 = static_cast<T>(-num / (s_p + s_m));
  pair1 = static_cast<T>(-num * rw / ((tw + ew) * s_m + (tw - ew) * s_p));
  return true;
}

// J_j(tau, r) by the uniform-step rule in eta = r - tau + r xi.
template <class T>
ShiftedGaussianPair<T> shifted_gaussian_uniform(const FormContext<T>& ctx, const T& tau,
                                                const T& r) {
  using std::exp;
  const UniformRule<T>& rule = ctx.params.uniform;
  const T d = tau - r;
  ShiftedGaussianPair<T> out{T(0), T(0), 0};
  // Heaviside factor vanishes on every node
  if (!(d + T(rule.M2) * rule.h > T(0))) return out;
  Accumulator<T> s0, s1;
  for (int k = 1; k <= rule.M2; ++k) {
    const T eta = T(k) * rule.h;
    T pair0, pair1;
    if (!shifted_gaussian_pair_term(tau, r, d, eta, pair0, pair1)) continue;
    out.evals += 2;
    const T gauss = exp(-(eta * eta) / T(2));
    s0.add(gauss * pair0);
    s1.add(gauss * pair1);
  }
  const T scale = rule.h * ScalarTraits<T>::inv_sqrt_2pi() / r;
  out.j0 = scale * s0.value();
  out.j1 = scale * s1.value();
  return out;
}

template <class T>
PulseSolution<T> form2_uniform_eval(const FormContext<T>& ctx, const T& t, const T& r) {
  const ShiftedGaussianPair<T> plus = shifted_gaussian_uniform(ctx, t, r);
  const ShiftedGaussianPair<T> minus = shifted_gaussian_uniform(ctx, -t, r);
  return {plus.j0 + minus.j0, plus.j1 - minus.j1, ctx.params.eps, RegionTag::Form2Uniform,
          plus.evals + minus.evals};
}

// Regularized shifted-Gaussian integrand at u = 1 + xi, without the
// singular factor (xi (xi + 2))^(-1/2) that the change of variables absorbs:
//   g_j = (2 pi)^(-1/2) exp(-(r u - tau)^2 / 2) ((r u - tau) / u^j + j / (r u^2)).
template <class T>
struct RegularizedPair {
  T g0;
  T g1;
};

template <class T>
RegularizedPair<T> regularized_integrand(const T& tau, const T& r, const T& u) {
  using std::exp;
  const T shift = r * u - tau;  // r - tau + r xi
  const T gauss = ScalarTraits<T>::inv_sqrt_2pi() * exp(-(shift * shift) / T(2));
  return {gauss * shift, gauss * (shift / u + T(1) / (r * u * u))};
}

// J_j(tau, r) from the regularized integrand, cropped to xi in (0, b) with
// b = (tau + H) / r - 1, by Gauss-Jacobi with weight (1 + eta)^(-1/2).
template <class T>
ShiftedGaussianPair<T> shifted_gaussian_jacobi(const FormContext<T>& ctx, const T& tau,
                                               const T& r) {
  using std::sqrt;
  ShiftedGaussianPair<T> out{T(0), T(0), 0};
  const T b = (tau + ctx.params.H) / r - T(1);
  // beyond the cropped support; the term is below eps / 2
  if (!(b > T(0))) return out;
  const QuadratureRule<T>& rule = *ctx.jacobi;
  const T half_b = b / T(2);
  const T gap = T(4) / b;  // eta - c = (1 + eta) + 4 / b
  Accumulator<T> s0, s1;
  for (int i = 0; i < rule.size(); ++i) {
    const T one_plus = T(1) + rule.nodes[i];
    const RegularizedPair<T> g = regularized_integrand(tau, r, T(1) + half_b * one_plus);
    const T w = rule.weights[i] / sqrt(one_plus + gap);
    s0.add(w * g.g0);
    s1.add(w * g.g1);
  }
  out.evals = static_cast<std::uint32_t>(rule.size());
  out.j0 = s0.value();
  out.j1 = s1.value();
  return out;
}

template <class T>
PulseSolution<T> form2_jacobi_eval(const FormContext<T>& ctx, const T& t, const T& r) {
  const ShiftedGaussianPair<T> plus = shifted_gaussian_jacobi(ctx, t, r);
  const ShiftedGaussianPair<T> minus = shifted_gaussian_jacobi(ctx, -t, r);
  return {plus.j0 + minus.j0, plus.j1 - minus.j1, ctx.params.eps, RegionTag::Form2Jacobi,
          plus.evals + minus.evals};
}

template <class T>
struct KirchhoffIntegrals {
  T j01;
  T j03;
  T j12;
  std::uint32_t evals = 0;
};

// J_{j,n}(t, r) = int_0^1 exp(-(r - t + t xi)^2 / 2) Itilde_j(r t (1 - xi))
//                 (1 - xi)^n / sqrt(xi (2 - xi)) dxi
// cropped to (a, 1), a = 1 - (r + H) / t, by Gauss-Legendre. The three
// needed (j, n) pairs share one node loop.
template <class T>
KirchhoffIntegrals<T> kirchhoff_integrals(const FormContext<T>& ctx, const T& t, const T& r) {
  using std::exp;
  using std::sqrt;
  const QuadratureRule<T>& rule = *ctx.legendre;
  T a = T(1) - (r + ctx.params.H) / t;
  if (a < T(0)) a = T(0);
  const T half = (T(1) - a) / T(2);
  const T mid = (T(1) + a) / T(2);
  const T rt = r * t;
  Accumulator<T> s01, s03, s12;
  for (int i = 0; i < rule.size(); ++i) {
    const T x = rule.nodes[i];
    const T zeta = half * (T(1) - x);  // 1 - xi
    const T xi = mid + half * x;
    const T gap = r - t * zeta;
    const BesselPair<T> itilde = scaled_bessel_i01(rt * zeta);
    const T base = rule.weights[i] * half * exp(-(gap * gap) / T(2)) / sqrt(xi * (T(1) + zeta));
    const T zeta2 = zeta * zeta;
    s01.add(base * zeta * itilde.j0);
    s03.add(base * zeta2 * zeta * itilde.j0);
    s12.add(base * zeta2 * itilde.j1);
  }
  return {s01.value(), s03.value(), s12.value(), static_cast<std::uint32_t>(rule.size())};
}

template <class T>
PulseSolution<T> form3_eval(const FormContext<T>& ctx, const T& t, const T& r) {
  const KirchhoffIntegrals<T> k = kirchhoff_integrals(ctx, t, r);
  const T t2 = t * t;
  const T rt = r * t;
  return {k.j01 - t2 * k.j03 + rt * k.j12, rt * k.j01 - t2 * k.j12, ctx.params.eps,
          RegionTag::Form3GL, k.evals};
}

// Wave potential W = -t J_{0,1}(t, r); p = -dW/dt and ur = dW/dr.
template <class T>
T wave_potential(const FormContext<T>& ctx, const T& t, const T& r) {
  return -t * kirchhoff_integrals(ctx, t, r).j01;
}

}  // namespace acoustic_pulse
