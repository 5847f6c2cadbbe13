#pragma once

#include <cmath>
#include <type_traits>

#include "stalab/errors.hpp"
#include "stalab/vec.hpp"

namespace stalab {

namespace detail {
template <typename V>
double magnitude(const V& v) {
  if constexpr (std::is_arithmetic_v<V>) {
    return std::abs(v);
  } else {
    return v.norm();
  }
}
}  // namespace detail

/// Adaptive Simpson on [a, b] with the usual (S2 - S1)/15 correction. Stops
/// when the local error estimate is below `abs_tol` (split between halves);
/// throws ToleranceNotMet if `max_depth` is reached first.
template <typename V, typename F>
V adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth = 40) {
  struct Rec {
    F& f;
    int max_depth;
    V step(double a, double b, const V& fa, const V& fm, const V& fb, const V& whole, double tol,
           int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const V flm = f(lm), frm = f(rm);
      const double h = (b - a) / 12.0;
      const V left = (fa + 4.0 * flm + fm) * h;
      const V right = (fm + 4.0 * frm + fb) * h;
      const V delta = left + right - whole;
      if (detail::magnitude(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      if (depth >= max_depth) throw ToleranceNotMet("adaptive Simpson: depth limit reached");
      return step(a, m, fa, flm, fm, left, tol / 2, depth + 1) +
             step(m, b, fm, frm, fb, right, tol / 2, depth + 1);
    }
  } rec{f, max_depth};
  const V fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  // one forced split so a lucky symmetric first estimate cannot end the search
  const double m = 0.5 * (a + b);
  const V fl = f(0.5 * (a + m)), fr = f(0.5 * (m + b));
  const double h = (b - a) / 12.0;
  return rec.step(a, m, fa, fl, fm, (fa + 4.0 * fl + fm) * h, abs_tol / 2, 1) +
         rec.step(m, b, fm, fr, fb, (fm + 4.0 * fr + fb) * h, abs_tol / 2, 1);
}

}  // namespace stalab
