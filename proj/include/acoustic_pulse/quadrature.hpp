#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace acoustic_pulse {

enum class RuleKind {
  GaussLegendre,            // w(x) = 1
  GaussJacobiHalfSingular,  // w(x) = (1 + x)^(-1/2)
};

inline const char* to_string(RuleKind kind) {
  return kind == RuleKind::GaussLegendre ? "GaussLegendre" : "GaussJacobiHalfSingular";
}

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
struct QuadratureRule {
  RuleKind kind = RuleKind::GaussLegendre;
  std::vector<T> nodes;    // strictly increasing, in (-1, 1)
  std::vector<T> weights;  // positive

  int size() const { return static_cast<int>(nodes.size()); }
};

// Three-term recurrence of the monic orthogonal polynomials:
// p_{k+1} = (x - a_k) p_k - b_k p_{k-1}.
template <class T>
struct Recurrence {
  T a;
  T b;
};

template <class T>
Recurrence<T> recurrence_coefficients(RuleKind kind, int k) {
  if (kind == RuleKind::GaussLegendre) {
    if (k == 0) return {T(0), T(0)};
    const T k2(static_cast<double>(k) * k);
    return {T(0), k2 / (T(4) * k2 - T(1))};
  }
  // Jacobi, alpha = 0, beta = -1/2
  const T kk(static_cast<double>(k));
  const T beta(-0.5);
  const T s = T(2) * kk + beta;  // 2k + alpha + beta
  const T a = beta * beta / (s * (s + T(2)));
  if (k == 0) return {a, T(0)};
  const T b = T(4) * kk * kk * (kk + beta) * (kk + beta) / (s * s * (s + T(1)) * (s - T(1)));
  return {a, b};
}

// Zeroth moment of the weight function.
template <class T>
T weight_moment0(RuleKind kind) {
  using std::sqrt;
  return kind == RuleKind::GaussLegendre ? T(2) : T(2) * sqrt(T(2));
}

namespace detail {

// Implicit QL with Wilkinson-type shifts on the symmetric tridiagonal Jacobi
// matrix, tracking only the first row of the eigenvector matrix.
template <class T>
void tridiagonal_ql(std::vector<T>& d, std::vector<T>& e, std::vector<T>& z,
                    int iteration_budget = 64) {
  using std::abs;
  using std::sqrt;
  const int n = static_cast<int>(d.size());
  const T eps = ScalarTraits<T>::epsilon();
  auto hypot2 = [](const T& a, const T& b) { return sqrt(a * a + b * b); };
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const T dd = abs(d[m]) + abs(d[m + 1]);
        if (abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == iteration_budget) {
          throw QuadratureError("Golub-Welsch: QL iteration did not converge for eigenvalue " +
                                std::to_string(l));
        }
        T g = (d[l + 1] - d[l]) / (T(2) * e[l]);
        T r = hypot2(g, T(1));
        g = d[m] - d[l] + e[l] / (g + (g >= T(0) ? abs(r) : -abs(r)));
        T s(1), c(1), p(0);
        int i;
        for (i = m - 1; i >= l; --i) {
          T f = s * e[i];
          const T b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == T(0)) {
            d[i + 1] -= p;
            e[m] = T(0);
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + T(2) * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (r == T(0) && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = T(0);
      }
    } while (m != l);
  }
}

// Newton refinement of a node on the orthonormal polynomial of degree m,
// then the Christoffel weight 1 / sum_{k<m} phat_k(x)^2.
template <class T>
void polish_node(RuleKind kind, int m, const T& mu0, T& x, T& w) {
  using std::abs;
  using std::sqrt;
  std::vector<T> sqrt_b(m + 1);
  for (int k = 1; k <= m; ++k) sqrt_b[k] = sqrt(recurrence_coefficients<T>(kind, k).b);
  auto evaluate = [&](const T& at, T& value, T& deriv, T& christoffel) {
    T p_prev(0), p(T(1) / sqrt(mu0));
    T dp_prev(0), dp(0);
    christoffel = p * p;
    for (int k = 0; k < m; ++k) {
      const T a = recurrence_coefficients<T>(kind, k).a;
      const T sb_prev = k > 0 ? sqrt_b[k] : T(0);
      const T p_next = ((at - a) * p - sb_prev * p_prev) / sqrt_b[k + 1];
      const T dp_next = ((at - a) * dp + p - sb_prev * dp_prev) / sqrt_b[k + 1];
      p_prev = p;
      p = p_next;
      dp_prev = dp;
      dp = dp_next;
      if (k + 1 < m) christoffel += p * p;
    }
    value = p;
    deriv = dp;
  };
  T value, deriv, christoffel;
  for (int it = 0; it < 3; ++it) {
    evaluate(x, value, deriv, christoffel);
    const T step = value / deriv;
    x -= step;
    if (abs(step) <= ScalarTraits<T>::epsilon()) break;
  }
  evaluate(x, value, deriv, christoffel);
  w = T(1) / christoffel;
}

// Newton polishing runs one precision level up where one is available, so
// double rules come out correctly rounded, endpoint weights included.
template <class T>
struct PolishScalar {
  using type = T;
  static T round(const T& x) { return x; }
};
template <>
struct PolishScalar<double> {
  using type = DoubleDouble;
  static double round(const DoubleDouble& x) { return static_cast<double>(x); }
};

}  // namespace detail

// Gauss rule for the given weight by the Golub-Welsch construction.
template <class T>
QuadratureRule<T> golub_welsch(RuleKind kind, int m) {
  if (m < 1) throw std::invalid_argument("golub_welsch: node count must be >= 1");
  using std::sqrt;
  std::vector<T> d(m), e(m, T(0)), z(m, T(0));
  for (int k = 0; k < m; ++k) {
    d[k] = recurrence_coefficients<T>(kind, k).a;
    if (k + 1 < m) e[k] = sqrt(recurrence_coefficients<T>(kind, k + 1).b);
  }
  z[0] = T(1);
  detail::tridiagonal_ql(d, e, z);

  const T mu0 = weight_moment0<T>(kind);
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

  QuadratureRule<T> rule;
  rule.kind = kind;
  rule.nodes.reserve(m);
  rule.weights.reserve(m);
  for (int idx : order) {
    using Polish = detail::PolishScalar<T>;
    typename Polish::type x(d[idx]);
    typename Polish::type w(mu0 * z[idx] * z[idx]);
    detail::polish_node(kind, m, weight_moment0<typename Polish::type>(kind), x, w);
    rule.nodes.push_back(Polish::round(x));
    rule.weights.push_back(Polish::round(w));
  }
  for (int i = 0; i < m; ++i) {
    const bool ordered = i == 0 || rule.nodes[i - 1] < rule.nodes[i];
    if (!ordered || !(rule.nodes[i] > T(-1)) || !(rule.nodes[i] < T(1)) ||
        !(rule.weights[i] > T(0))) {
      throw QuadratureError("Golub-Welsch: invalid rule produced for m = " + std::to_string(m));
    }
  }
  return rule;
}

// Shared, lazily built rules; the returned object is the same on every call.
template <class T>
std::shared_ptr<const QuadratureRule<T>> rule_cache_get(RuleKind kind, int m) {
  static std::mutex mutex;
  static std::map<std::pair<RuleKind, int>, std::shared_ptr<const QuadratureRule<T>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{kind, m}];
  if (!slot) slot = std::make_shared<const QuadratureRule<T>>(golub_welsch<T>(kind, m));
  return slot;
}

// Uniform-step rule for Gaussian-damped integrands: 2 * M2 + 1 nodes k*h,
// |k| <= M2, with h * (M2 + 1/2) = L.
template <class T>
struct UniformRule {
  int M2 = 0;
  T h;
  T L;
};

template <class T>
T cropping_radius(const T& eps) {
  using std::log;
  using std::sqrt;
  return sqrt(T(-2) * log(eps / T(2)));
}

template <class T>
UniformRule<T> uniform_rule(const T& eps) {
  using std::sqrt;
  if (!(eps > T(0)) || !is_finite(eps)) throw std::domain_error("uniform_rule: eps must be > 0");
  const T H = cropping_radius(eps);
  UniformRule<T> rule;
  rule.M2 = ceil_int(T(0.2) * H * H);
  const T two_pi = T(2) * ScalarTraits<T>::pi();
  const T half_count = T(rule.M2) + T(0.5);
  rule.h = sqrt(two_pi / half_count);
  rule.L = sqrt(two_pi * half_count);
  return rule;
}

// "node,weight" per line, 17 significant digits.
template <class T>
void write_rule_csv(std::ostream& os, const QuadratureRule<T>& rule) {
  char buf[64];
  os << "node,weight\n";
  for (int i = 0; i < rule.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", to_double(rule.nodes[i]),
                  to_double(rule.weights[i]));
    os << buf;
  }
}

}  // namespace acoustic_pulse
