#pragma once

#include <limits>
#include <vector>

#include "fracckn/constants.hpp"
#include "fracckn/params.hpp"
#include "fracckn/profile.hpp"

namespace fracckn {

struct QuotientValue {
  ConstantResult numerator;
  ConstantResult denominator;
  double ratio = 0.0;
};

// |S| int int |u(r) - u(r sigma)|^p sigma^{N-1-beta} K(sigma) r^{N-1-2beta-order p}, K built with N + order p;
// with a finite domain_radius both points are restricted to the ball of that radius
ConstantResult weighted_seminorm(const RadialProfile& u, double beta, double order, const FracParams& params,
                                 const QuadratureConfig& cfg = {},
                                 double domain_radius = std::numeric_limits<double>::infinity());

// |S| int |u|^exponent r^{N-1-weight_exponent} dr
ConstantResult weighted_lp_norm(const RadialProfile& u, double weight_exponent, double exponent,
                                const FracParams& params, const QuadratureConfig& cfg = {});

QuotientValue hardy_quotient(const RadialProfile& u, double beta, const FracParams& params,
                             const QuadratureConfig& cfg = {});

// unbounded form: exponent p*_s, weight 2 beta p*_s / p
QuotientValue ckn_quotient(const RadialProfile& u, double beta, const FracParams& params,
                           const QuadratureConfig& cfg = {});
// critical bounded form: beta = (N - ps)/2, exponent p*_{s,q}, weight 2 beta p*_{s,q} / p
QuotientValue ckn_bounded_quotient(const RadialProfile& u, double q, const FracParams& params,
                                   const QuadratureConfig& cfg = {});

// seminorm(u) - Lambda_{N,p,s} int |u|^p / |x|^{ps}
ConstantResult ground_state_remainder(const RadialProfile& u, const FracParams& params,
                                      const QuadratureConfig& cfg = {});
// r^{(N-ps)/p} u
RadialProfile ground_state_transform(const RadialProfile& u, const FracParams& params);

struct OperatorCheck {
  std::vector<double> radii;
  std::vector<double> operator_values;
  std::vector<double> predicted;
  double lambda = 0.0;
  double worst_defect = 0.0;
};

// L_{s,p,beta}(|x|^{-gamma}) at each radius by the rho-integral, against Lambda(gamma) r^{-gamma(p-1)-ps-2beta}
OperatorCheck power_law_operator_check(double gamma, double beta, const std::vector<double>& r_points,
                                       const FracParams& params, const QuadratureConfig& cfg = {});

struct OptimalityCertificate {
  double n = 0.0;
  RadialProfile w_n;
  QuotientValue quotient;
  double I_n = 0.0;
  double J_n = 0.0;
  double C_n = 0.0;
  double lower = 0.0;  // 2 Lambda(gamma0)
  double upper = 0.0;  // 2 Lambda(gamma0) (1 + C_n)
  bool certified = false;
};

OptimalityCertificate optimality_certificate(double n, const Weight& w, const FracParams& params,
                                             const QuadratureConfig& cfg = {});

// int int |u(x)|^p ||x|^{2beta/p} - |y|^{2beta/p}|^p / (|x|^{3beta} |y|^beta |x-y|^{N+ps})
ConstantResult g1_integral(const RadialProfile& u, double beta, const FracParams& params,
                           const QuadratureConfig& cfg = {});

}  // namespace fracckn
