#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "forms.hpp"
#include "params.hpp"
#include "series.hpp"

namespace acoustic_pulse {

template <class T>
struct Point {
  T t;
  T r;
};

// Pressure and radial velocity of the Gaussian acoustic pulse to absolute
// accuracy eps. Immutable after construction; evaluate() is thread-safe and
// does not allocate.
template <class T>
class Evaluator {
 public:
  explicit Evaluator(const T& eps) : ctx_(make_form_context(eps)) {}

  const PrecisionParams<T>& params() const { return ctx_.params; }
  const FormContext<T>& context() const { return ctx_; }

  RegionTag classify(const T& t, const T& r) const { return acoustic_pulse::classify(t, r, ctx_.params); }

  PulseSolution<T> evaluate(const T& t, const T& r) const {
    if (!is_finite(t) || !is_finite(r) || t < T(0) || r < T(0)) {
      throw std::domain_error("evaluate: t and r must be finite and >= 0");
    }
    return evaluate_in(classify(t, r), t, r);
  }

  // Forces a branch regardless of classification; used to compare
  // neighbouring branches across a zone boundary.
  PulseSolution<T> evaluate_in(RegionTag region, const T& t, const T& r) const {
    switch (region) {
      case RegionTag::SmallT: return small_t_eval(ctx_, t, r);
      case RegionTag::Zero: return zero_eval(ctx_, t, r);
      case RegionTag::Form1GL: return form1_eval(ctx_, t, r);
      case RegionTag::Form2Uniform: return form2_uniform_eval(ctx_, t, r);
      case RegionTag::Form2Jacobi: return form2_jacobi_eval(ctx_, t, r);
      case RegionTag::Form3GL: return form3_eval(ctx_, t, r);
      case RegionTag::Series: return series_eval(ctx_, t, r);
    }
    throw std::logic_error("evaluate_in: unknown region");
  }

  // Element-wise evaluate(); threads > 1 splits the points into contiguous
  // chunks, results are identical to the sequential call.
  std::vector<PulseSolution<T>> evaluate_batch(std::span<const Point<T>> points,
                                               unsigned threads = 1) const {
    // validate up front so worker threads never throw
    for (const Point<T>& pt : points) {
      if (!is_finite(pt.t) || !is_finite(pt.r) || pt.t < T(0) || pt.r < T(0)) {
        throw std::domain_error("evaluate_batch: t and r must be finite and >= 0");
      }
    }
    std::vector<PulseSolution<T>> out(points.size());
    const std::size_t n = points.size();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n == 0 ? 1 : n)));
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) out[i] = evaluate(points[i].t, points[i].r);
    };
    if (threads == 1) {
      work(0, n);
      return out;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned k = 0; k < threads; ++k) {
      const std::size_t begin = std::min(n, k * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
    return out;
  }

 private:
  FormContext<T> ctx_;
};

template <class T>
PulseSolution<T> evaluate(const T& t, const T& r, const T& eps) {
  return Evaluator<T>(eps).evaluate(t, r);
}

}  // namespace acoustic_pulse
