#pragma once

#include <cmath>

#include "fracckn/errors.hpp"

namespace fracckn {

template <class F>
double bracketed_root(F&& f, double a, double b, double fa, double fb, double ftol, double xtol, int max_iter) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw ConvergenceError("bracketed_root: endpoints do not bracket a root", a, b - a);
  int side = 0;
  double x = a;
  for (int it = 0; it < max_iter; ++it) {
    x = b - fb * (b - a) / (fb - fa);
    double lo = std::fmin(a, b), hi = std::fmax(a, b);
    // stay well inside the bracket, otherwise bisect
    if (!(x > lo + 1e-3 * (hi - lo) && x < hi - 1e-3 * (hi - lo)) || it % 6 == 5) x = 0.5 * (a + b);
    double fx = f(x);
    if (std::fabs(fx) <= ftol) return x;
    if ((fx > 0) == (fa > 0)) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    if (std::fabs(b - a) <= xtol) return std::fabs(fa) < std::fabs(fb) ? a : b;
  }
  throw ConvergenceError("bracketed_root: iteration limit", x, std::fabs(b - a));
}

}  // namespace fracckn
