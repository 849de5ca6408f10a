#pragma once

#include "fracckn/params.hpp"

namespace fracckn {

class Weight {
 public:
  // requires -ps < beta < (N - ps)/2
  Weight(double beta, const FracParams& params);

  double beta() const { return beta_; }
  // Lambda(gamma) > 0 exactly on (0, gamma_max)
  double gamma_max() const { return gamma_max_; }
  // maximizer of Lambda: (N - ps - 2 beta)/p
  double gamma0() const { return gamma0_; }
  // Lambda(gamma) is finite only for gamma(p-1) < N - beta
  double gamma_finite() const { return gamma_finite_; }

 private:
  double beta_, gamma_max_, gamma0_, gamma_finite_;
};

ConstantResult lambda_folded(double gamma, const Weight& w, const FracParams& params, const QuadratureConfig& cfg = {});
ConstantResult lambda_unfolded(double gamma, const Weight& w, const FracParams& params,
                               const QuadratureConfig& cfg = {});
ConstantResult lambda_derivative(double gamma, const Weight& w, const FracParams& params,
                                 const QuadratureConfig& cfg = {});
ConstantResult hardy_constant(const Weight& w, const FracParams& params, const QuadratureConfig& cfg = {});
ConstantResult mu_constant(double q, const FracParams& params, const QuadratureConfig& cfg = {});
// finite only for beta < ps
ConstantResult c3_constant(const Weight& w, const FracParams& params, const QuadratureConfig& cfg = {});
ConstantResult truncation_h(double r, double gamma, const FracParams& params, const QuadratureConfig& cfg = {});

}  // namespace fracckn
