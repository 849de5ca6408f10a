#pragma once

#include "fracckn/params.hpp"

namespace fracckn {

double angular_kernel(double sigma, const FracParams& params, const QuadratureConfig& cfg = {});
double angular_kernel(double sigma, KernelOrder order, const QuadratureConfig& cfg = {});
ConstantResult angular_kernel_detail(double sigma, KernelOrder order, const QuadratureConfig& cfg = {});

// K(1+delta)*delta^{1+sp} (above) or K(1-delta)*delta^{1+sp}; bounded as delta -> 0
double kernel_scaled(double delta, bool above, KernelOrder order, const QuadratureConfig& cfg = {});

// limit of K(sigma)|1-sigma|^{1+sp} at sigma = 1
double kernel_singular_coefficient(KernelOrder order);

double kernel_symmetry_defect(double xi, const FracParams& params, const QuadratureConfig& cfg = {});

ConstantResult kernel_tail_moment(double a, double exponent, const FracParams& params,
                                  const QuadratureConfig& cfg = {});
ConstantResult kernel_tail_moment(double a, double exponent, KernelOrder order,
                                  const QuadratureConfig& cfg = {});

// large-sigma expansion K = |S| sigma^{-N-sp} sum_k c_k sigma^{-2k}, valid for sigma > 1
double kernel_series(double sigma, KernelOrder order);
double kernel_series_log(double log_sigma, KernelOrder order);

// int_a^b sigma^e K dsigma from the series, 1 < a < b (b may be +inf)
double kernel_series_moment(double a, double b, double e, KernelOrder order);
double kernel_series_moment_log(double log_a, double log_b, double e, KernelOrder order);

}  // namespace fracckn
