#pragma once

#include <cmath>
#include <utility>

namespace wlc::detail {

struct Bracket {
  double root = 0.0;
  int iterations = 0;
};

// Plain bisection. f(lo) and f(hi) must differ in sign (or one be zero).
// Stops when the bracket is narrower than max(abs_tol, rel_tol * |mid|).
template <class F>
Bracket bisect(F&& f, double lo, double hi, double abs_tol, double rel_tol, int max_iter = 400) {
  double f_lo = f(lo);
  if (f_lo == 0.0) return {lo, 0};
  if (f(hi) == 0.0) return {hi, 0};
  Bracket out;
  for (out.iterations = 1; out.iterations <= max_iter; ++out.iterations) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) {
      out.root = mid;
      return out;
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (std::abs(hi - lo) <= std::max(abs_tol, rel_tol * std::abs(0.5 * (lo + hi)))) break;
  }
  out.root = 0.5 * (lo + hi);
  return out;
}

}  // namespace wlc::detail
