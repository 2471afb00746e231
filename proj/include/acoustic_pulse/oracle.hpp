#pragma once

// Slow reference evaluator for tests and the self-check: double-double
// composite Gauss-Legendre on the uncropped-to-machine-precision integral
// forms. Every point is computed by two independent representations and
// the disagreement is reported as the error estimate.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "double_double.hpp"
#include "scalar.hpp"
#include "specfun.hpp"

namespace acoustic_pulse {

// Gauss-Legendre rule by Newton iteration on P_n (independent of the
// Golub-Welsch path used in production).
template <class T>
struct ReferenceRule {
  std::vector<T> nodes;
  std::vector<T> weights;
};

template <class T>
ReferenceRule<T> reference_gauss_legendre(int n) {
  using std::abs;
  using std::cos;
  ReferenceRule<T> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const T eps = ScalarTraits<T>::epsilon();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    T x(std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5)));
    T dp(0);
    for (int iter = 0; iter < 100; ++iter) {
      T p0(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        const T p2 = (T(2 * k - 1) * x * p1 - T(k - 1) * p0) / T(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = T(1);
      // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
      dp = T(n) * (x * p1 - p0) / (x * x - T(1));
      const T dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= eps * T(4)) break;
    }
    {
      T p0(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        const T p2 = (T(2 * k - 1) * x * p1 - T(k - 1) * p0) / T(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = T(1);
      dp = T(n) * (x * p1 - p0) / (x * x - T(1));
    }
    const T w = T(2) / ((T(1) - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Calls f(x, weight) on a composite rule over [a, b] with equal panels.
template <class T, class F>
void composite_gauss_legendre(const ReferenceRule<T>& rule, const T& a, const T& b, int panels,
                              F&& f) {
  const T width = (b - a) / T(panels);
  const T half = width / T(2);
  for (int k = 0; k < panels; ++k) {
    const T mid = a + width * T(k) + half;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      f(mid + half * rule.nodes[i], half * rule.weights[i]);
    }
  }
}

enum class OracleForm { FourierBessel, ShiftedGaussian, Kirchhoff };

inline const char* to_string(OracleForm f) {
  switch (f) {
    case OracleForm::FourierBessel: return "FourierBessel";
    case OracleForm::ShiftedGaussian: return "ShiftedGaussian";
    case OracleForm::Kirchhoff: return "Kirchhoff";
  }
  return "?";
}

struct OracleResult {
  DoubleDouble p_ref;
  DoubleDouble ur_ref;
  double est_err = 0.0;
  OracleForm form_a = OracleForm::FourierBessel;
  OracleForm form_b = OracleForm::ShiftedGaussian;
};

class OracleRejected : public std::runtime_error {
 public:
  OracleRejected(double t, double r, double est_err, double bound)
      : std::runtime_error(message(t, r, est_err, bound)), t_(t), r_(r), est_err_(est_err) {}
  double t() const { return t_; }
  double r() const { return r_; }
  double est_err() const { return est_err_; }

 private:
  static std::string message(double t, double r, double est_err, double bound) {
    std::ostringstream os;
    os.precision(17);
    os << "oracle rejected point (t=" << t << ", r=" << r << "): forms disagree by " << est_err
       << " > " << bound;
    return os.str();
  }
  double t_, r_, est_err_;
};

namespace oracle_detail {

using DD = DoubleDouble;

inline const ReferenceRule<DD>& panel_rule() {
  static const ReferenceRule<DD> rule = reference_gauss_legendre<DD>(32);
  return rule;
}

// Integration half-width beyond which the Gaussian factor is below
// 1e-6 * tol.
inline DD gaussian_extent(double tol) {
  return sqrt(DD(-2.0) * log(DD(tol * 1e-6)));
}

struct Pair {
  DD p;
  DD ur;
};

inline Pair fourier_bessel(const DD& t, const DD& r, const DD& extent) {
  const double freq = std::max({to_double(t), to_double(r), 1.0});
  const int panels = static_cast<int>(std::ceil(to_double(extent) * 2.0 * freq / 3.141592653589793));
  DD sp(0), su(0);
  composite_gauss_legendre(panel_rule(), DD(0), extent, panels, [&](const DD& w, const DD& wt) {
    const DD amp = wt * w * exp(-(w * w) / DD(2));
    const BesselPair<DD> jn = bessel_j01(r * w);
    DD s, c;
    sincos(t * w, s, c);
    sp += amp * jn.j0 * c;
    su += amp * jn.j1 * s;
  });
  return {sp, su};
}

// J_j(tau, r), xi = s^2 removes the endpoint singularity:
// J_j = (2 pi)^(-1/2) int 2 exp(-eta^2/2) eta (1 + s^2)^j / sqrt(s^2 + 2) ds
inline Pair shifted_gaussian_term(const DD& tau, const DD& r, const DD& extent) {
  const DD hi2 = (tau - r + extent) / r;
  if (!(hi2 > DD(0))) return {DD(0), DD(0)};
  DD lo2 = (tau - r - extent) / r;
  if (lo2 < DD(0)) lo2 = DD(0);
  const DD s_lo = sqrt(lo2);
  const DD s_hi = sqrt(hi2);
  const double span = to_double(s_hi - s_lo);
  const int panels = static_cast<int>(std::ceil(span * 2.0 * to_double(r * s_hi) / 0.5)) + 8;
  DD s0(0), s1(0);
  composite_gauss_legendre(panel_rule(), s_lo, s_hi, panels, [&](const DD& s, const DD& wt) {
    const DD s2 = s * s;
    const DD eta = r - tau + r * s2;
    const DD g = wt * DD(2) * exp(-(eta * eta) / DD(2)) * eta / sqrt(s2 + DD(2));
    s0 += g;
    s1 += g * (DD(1) + s2);
  });
  const DD k = ScalarTraits<DD>::inv_sqrt_2pi();
  return {k * s0, k * s1};
}

inline Pair shifted_gaussian(const DD& t, const DD& r, const DD& extent) {
  const Pair plus = shifted_gaussian_term(t, r, extent);
  const Pair minus = shifted_gaussian_term(-t, r, extent);
  return {plus.p + minus.p, plus.ur - minus.ur};
}

// J_{j,n} with xi = s^2, zeta = 1 - s^2:
// int 2 exp(-(r - t zeta)^2/2) Itilde_j(r t zeta) zeta^n / sqrt(2 - s^2) ds
inline Pair kirchhoff(const DD& t, const DD& r, const DD& extent) {
  if (t == DD(0)) return {exp(-(r * r) / DD(2)), DD(0)};
  DD xi_lo = DD(1) - (r + extent) / t;
  DD xi_hi = DD(1) - (r - extent) / t;
  if (xi_lo < DD(0)) xi_lo = DD(0);
  if (xi_hi > DD(1)) xi_hi = DD(1);
  if (!(xi_hi > xi_lo)) return {DD(0), DD(0)};
  const DD s_lo = sqrt(xi_lo);
  const DD s_hi = sqrt(xi_hi);
  const double scale = std::max(to_double(t), 1.0);
  const int panels = static_cast<int>(std::ceil(to_double(s_hi - s_lo) * 2.0 * scale / 0.25)) + 8;
  DD j01(0), j03(0), j12(0);
  const DD rt = r * t;
  composite_gauss_legendre(panel_rule(), s_lo, s_hi, panels, [&](const DD& s, const DD& wt) {
    const DD s2 = s * s;
    const DD zeta = DD(1) - s2;
    const DD gap = r - t * zeta;
    const BesselPair<DD> itilde = scaled_bessel_i01(rt * zeta);
    const DD g = wt * DD(2) * exp(-(gap * gap) / DD(2)) / sqrt(DD(2) - s2);
    j01 += g * zeta * itilde.j0;
    j03 += g * zeta * zeta * zeta * itilde.j0;
    j12 += g * zeta * zeta * itilde.j1;
  });
  const DD t2 = t * t;
  return {j01 - t2 * j03 + rt * j12, rt * j01 - t2 * j12};
}

}  // namespace oracle_detail

// Below this radius the shifted-Gaussian form loses digits to cancellation
// between its two terms; the Kirchhoff form is used as the second route.
inline constexpr double kOracleShiftedGaussianMinRadius = 0.25;

inline OracleResult oracle_eval(double t, double r, double target_tol) {
  using namespace oracle_detail;
  if (!(t >= 0.0) || !(r >= 0.0) || !std::isfinite(t) || !std::isfinite(r)) {
    throw std::domain_error("oracle_eval: t and r must be finite and >= 0");
  }
  if (!(target_tol >= 1e-20)) throw std::domain_error("oracle_eval: target_tol must be >= 1e-20");
  const DD td(t), rd(r);
  const DD extent = gaussian_extent(target_tol);
  const Pair a = fourier_bessel(td, rd, extent);
  OracleResult out;
  out.form_a = OracleForm::FourierBessel;
  Pair b;
  if (r >= kOracleShiftedGaussianMinRadius) {
    b = shifted_gaussian(td, rd, extent);
    out.form_b = OracleForm::ShiftedGaussian;
  } else {
    b = kirchhoff(td, rd, extent);
    out.form_b = OracleForm::Kirchhoff;
  }
  out.p_ref = a.p;
  out.ur_ref = a.ur;
  if (t == 0.0) {
    // the Cauchy data itself; form a is still compared against it
    b = {exp(-(rd * rd) / DD(2)), DD(0)};
    out.p_ref = b.p;
    out.ur_ref = b.ur;
  }
  out.est_err = std::max(std::abs(to_double(a.p - b.p)), std::abs(to_double(a.ur - b.ur)));
  const double bound = 1e-3 * target_tol;
  if (!(out.est_err <= bound)) throw OracleRejected(t, r, out.est_err, bound);
  return out;
}

// p(t, 0) = 1 - sqrt(2) t D(t / sqrt(2)) with the Dawson integral
// D(x) = exp(-x^2) sum_k x^(2k+1) / (k! (2k+1)).
inline DoubleDouble oracle_pressure_at_origin(const DoubleDouble& t) {
  using DD = DoubleDouble;
  const DD x = t / ScalarTraits<DD>::sqrt2();
  const DD x2 = x * x;
  DD power = x;  // x^(2k+1) / k!
  DD sum = x;
  for (int k = 1; k < 400; ++k) {
    power = power * x2 / DD(k);
    const DD term = power / DD(2 * k + 1);
    sum += term;
    if (term < sum * DD(1e-34)) break;
  }
  const DD dawson = exp(-x2) * sum;
  return DD(1) - ScalarTraits<DD>::sqrt2() * t * dawson;
}

}  // namespace acoustic_pulse
