#pragma once

#include <optional>

#include "fracckn/constants.hpp"
#include "fracckn/params.hpp"

namespace fracckn {

struct RootPair {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double lambda = 0.0;
  double residual = 0.0;
};

struct ExponentSet {
  double p_star_s = 0.0;
  double p_star_s_q = 0.0;
  std::optional<double> q_plus;
};

// tol bounds |Lambda(gamma_i) - lambda|
RootPair gamma_roots(double lambda, const Weight& w, const FracParams& params, double tol = 1e-10,
                     const QuadratureConfig& cfg = {});

double critical_exponent_qplus(double lambda, const FracParams& params, double tol = 1e-10,
                               const QuadratureConfig& cfg = {});

ExponentSet sobolev_exponents(const FracParams& params, double q);

// bracketed secant with Illinois weighting and bisection fallback; fa, fb of opposite sign
template <class F>
double bracketed_root(F&& f, double a, double b, double fa, double fb, double ftol, double xtol, int max_iter = 200);

}  // namespace fracckn

#include "fracckn/detail/bracketed_root.ipp"
