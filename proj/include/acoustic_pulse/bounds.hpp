#pragma once

// A-priori error bounds for the two quadrature families, used by the test
// suite to certify the empirical errors.

#include <cmath>
#include <optional>
#include <stdexcept>

namespace acoustic_pulse {

// Uniform-step rule h sum_{|k|<=n} f(kh) exp(-(kh)^2/2).
template <class T>
struct TrapezoidBoundInput {
  T h;     // step, 0 < h <= pi
  int n;   // half node count
  T L;     // (n + 1/2) h
  T f0;    // max |f| on |Im z| = 2 pi / h, |Re z| <= L
  T f1;    // max |f| on |Re z| = L, |Im z| <= 2 pi / h
  T tail;  // |int_{|x|>L} f exp(-x^2/2) dx|
};

template <class T>
TrapezoidBoundInput<T> make_trapezoid_input(const T& h, int n, const T& f0, const T& f1,
                                            const T& tail) {
  return {h, n, (T(n) + T(0.5)) * h, f0, f1, tail};
}

template <class T>
T trapezoid_bound(const TrapezoidBoundInput<T>& in) {
  using std::exp;
  const T pi = T(3.141592653589793238462643383279502884L);
  if (!(in.h > T(0)) || in.h > pi) throw std::domain_error("trapezoid_bound: need 0 < h <= pi");
  if (in.n < 0) throw std::domain_error("trapezoid_bound: need n >= 0");
  return in.tail + T(4) * in.h / pi * exp(-(in.L * in.L) / T(2)) * in.f1 +
         T(5.2) * exp(-T(2) * pi * pi / (in.h * in.h)) * in.f0;
}

template <class T, class F>
T gaussian_trapezoid(F&& f, const T& h, int n) {
  using std::exp;
  T sum = f(T(0));
  for (int k = 1; k <= n; ++k) {
    const T x = T(k) * h;
    sum += (f(x) + f(-x)) * exp(-(x * x) / T(2));
  }
  return h * sum;
}

// Data of a weight singularity at x = c outside [-1, 1].
template <class T>
struct BranchData {
  T c;
  T g_c;      // |g(c)|
  int delta;  // 1 if c lies inside the ellipse, else 0
};

template <class T>
struct GaussBoundInput {
  int m;
  T mu0;   // integral of the weight
  T fmax;  // max |f| on the ellipse with foci +-1, semi-axes sqrt(2) and 1
  std::optional<BranchData<T>> branch;
};

// The asymptotic constant in front of both terms is taken as 1; callers
// apply their own slack.
template <class T>
T gauss_bound(const GaussBoundInput<T>& in) {
  using std::abs;
  using std::pow;
  using std::sqrt;
  if (in.m < 1) throw std::domain_error("gauss_bound: need m >= 1");
  if (!(in.mu0 > T(0))) throw std::domain_error("gauss_bound: need mu0 > 0");
  const T rho = T(1) + sqrt(T(2));
  T bound = T(4) * in.mu0 * in.fmax * pow(rho, -2 * in.m) * rho / (rho - T(1));
  if (in.branch) {
    const BranchData<T>& b = *in.branch;
    const T ac = abs(b.c);
    if (!(ac > T(1))) throw std::domain_error("gauss_bound: branch point needs |c| > 1");
    if (b.delta != 0) {
      const T pi = T(3.141592653589793238462643383279502884L);
      const T root = sqrt(b.c * b.c - T(1));
      bound += T(2) * T(b.delta) * in.mu0 * sqrt(root) /
               (sqrt(T(2) * pi * T(in.m)) * pow(ac + root, 2 * in.m - 2) * (ac - T(1))) * b.g_c;
    }
  }
  return bound;
}

}  // namespace acoustic_pulse
