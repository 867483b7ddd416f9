#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace swe {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // accumulated bound on |value - exact|
};

namespace detail {

template <class F>
QuadResult simpson_step(const F& f, double a, double fa, double b, double fb,
                        double fm, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return {left + right + delta / 15.0, std::abs(delta) / 15.0};
  }
  QuadResult l = simpson_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1);
  QuadResult r = simpson_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
  return {l.value + r.value, l.error + r.error};
}

}  // namespace detail

// Adaptive Simpson with the usual Richardson error estimate.
template <class F>
QuadResult adaptive_simpson(const F& f, double a, double b, double tol,
                            int max_depth = 48) {
  if (!(b >= a)) throw std::invalid_argument("adaptive_simpson: b < a");
  if (a == b) return {0.0, 0.0};
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

// Fixed-panel composite Simpson (oracle-grade, no adaptivity).
template <class F>
double composite_simpson(const F& f, double a, double b, std::size_t panels) {
  if (panels == 0 || panels % 2)
    throw std::invalid_argument("composite_simpson: panel count must be even");
  double h = (b - a) / static_cast<double>(panels);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i)
    sum += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return sum * h / 3.0;
}

}  // namespace swe
