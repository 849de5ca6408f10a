#pragma once

#include <algorithm>
#include <random>

#include "fracckn/constants.hpp"

namespace testsupport {

struct Config {
  fracckn::FracParams P;
  fracckn::Weight w;
};

// random admissible (N, s, p, beta); p_min >= 2 restricts to the analytic derivative branch
inline Config random_config(std::mt19937_64& g, double p_min = 1.3, double p_max = 4.0) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (;;) {
    int N = 1 + static_cast<int>(U(g) * 5);
    double p = p_min + (p_max - p_min) * U(g);
    double s = 0.1 + 0.8 * U(g);
    if (!(p * s < 0.9 * N)) continue;
    fracckn::FracParams P(N, s, p);
    double lo = -0.8 * P.ps(), hi = 0.4 * (N - P.ps());
    double beta = lo + (hi - lo) * U(g);
    return {P, fracckn::Weight(beta, P)};
  }
}

}  // namespace testsupport
