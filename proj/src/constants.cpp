#include "fracckn/constants.hpp"

#include <cmath>
#include <string>

#include "fracckn/errors.hpp"
#include "fracckn/kernel.hpp"
#include "quad.hpp"

namespace fracckn {

using detail::Tally;

Weight::Weight(double beta, const FracParams& P) : beta_(beta) {
  const double N = P.N(), p = P.p(), ps = P.ps();
  if (!(beta > -ps && beta < 0.5 * (N - ps)))
    throw DomainError("weight exponent beta must lie in (-ps, (N-ps)/2), got " + std::to_string(beta));
  gamma_max_ = (N - ps - 2.0 * beta) / (p - 1.0);
  gamma0_ = (N - ps - 2.0 * beta) / p;
  gamma_finite_ = (N - beta) / (p - 1.0);
}

namespace {

constexpr double kPairModelDelta = 1e-6;

double log_expm1(double x) { return x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x)); }

// (sigma^a - 1)/d for sigma = 1 + d
double rise_above(double a, double d) { return d == 0.0 ? a : std::expm1(a * std::log1p(d)) / d; }
// (1 - sigma^a)/d for sigma = 1 - d
double rise_below(double a, double d) { return d == 0.0 ? a : -std::expm1(a * std::log1p(-d)) / d; }

// log K(e^l) for l > 0, direct quadrature up to the cutoff
double log_kernel_above(double l, KernelOrder k, const QuadratureConfig& cfg) {
  if (l >= std::log(cfg.tail_cutoff)) return kernel_series_log(l, k);
  return std::log(angular_kernel(std::exp(l), k, cfg));
}

double scaled(double d, bool above, KernelOrder k, const QuadratureConfig& cfg) {
  if (d < 1e-300) return kernel_singular_coefficient(k);
  return kernel_scaled(d, above, k, cfg);
}

void check_finite_lambda(double gamma, const Weight& w) {
  if (!(gamma >= 0.0)) throw DomainError("Lambda(gamma) needs gamma >= 0");
  if (!(gamma < w.gamma_finite())) throw DomainError("Lambda(gamma) diverges for gamma(p-1) >= N - beta");
}

// int_0^U psi, psi = |1-s^-g|^{p-2}(1-s^-g) s^{N-b-1} K(s); U > 1, possibly infinite.
// Around sigma = 1 the two sides are paired so the principal value is never sampled.
Tally unfolded_pv(double g, double b, const FracParams& P, const QuadratureConfig& cfg, double U) {
  const KernelOrder k = kernel_order(P);
  const double p = P.p(), N = P.N(), ps = P.ps();
  const double tol = cfg.rel_tol;
  const double w = std::min(0.5, U - 1.0);
  Tally t;

  auto psi_below = [&](double s) {
    if (s <= 0.0) return 0.0;
    double l = std::log(s);
    return -std::exp((p - 1.0) * log_expm1(-g * l) + (N - b - 1.0) * l) * angular_kernel(s, k, cfg);
  };
  detail::tanh_sinh(psi_below, 0.0, 1.0 - w, tol, t);

  auto bracket = [&](double d) {
    double up = -std::expm1(-g * std::log1p(d)) / d;
    double dn = std::expm1(-g * std::log1p(-d)) / d;
    double hi = std::pow(up, p - 1.0) * std::pow(1.0 + d, N - b - 1.0) * scaled(d, true, k, cfg);
    double lo = std::pow(dn, p - 1.0) * std::pow(1.0 - d, N - b - 1.0) * scaled(d, false, k, cfg);
    return (hi - lo) / d;
  };
  const double model = bracket(std::min(kPairModelDelta, 0.5 * w));
  auto pair = [&](double d) { return d < kPairModelDelta ? model : bracket(d); };
  detail::near_one(pair, p - 1.0 - ps, w, tol, t);

  auto psi_above_log = [&](double l) {
    return (p - 1.0) * std::log(-std::expm1(-g * l)) + (N - b - 1.0) * l + log_kernel_above(l, k, cfg);
  };
  const double s0 = 1.0 + w;
  if (std::isinf(U)) {
    auto f = [&](double u) {
      double l = std::log(s0) + u;
      return std::exp(psi_above_log(l) + l);
    };
    detail::exp_sinh(f, tol, t);
  } else if (U > s0) {
    auto f = [&](double s) { return std::exp(psi_above_log(std::log(s))); };
    detail::tanh_sinh(f, s0, U, tol, t);
  }
  return t;
}

}  // namespace

ConstantResult lambda_folded(double gamma, const Weight& w, const FracParams& P, const QuadratureConfig& cfg) {
  check_finite_lambda(gamma, w);
  if (gamma == 0.0) return {};
  const KernelOrder k = kernel_order(P);
  const double p = P.p(), N = P.N(), ps = P.ps(), b = w.beta();
  const double A = N - 1.0 - b - gamma * (p - 1.0), B = b + ps - 1.0;
  Tally t;
  auto near = [&](double d) {
    double br = d == 0.0 ? A - B : (std::expm1(A * std::log1p(d)) - std::expm1(B * std::log1p(d))) / d;
    return scaled(d, true, k, cfg) * std::pow(rise_above(gamma, d), p - 1.0) * br;
  };
  detail::near_one(near, p - 1.0 - ps, 1.0, cfg.rel_tol, t);
  auto far = [&](double u) {
    double l = std::log(2.0) + u;
    double L = log_kernel_above(l, k, cfg) + (p - 1.0) * log_expm1(gamma * l) + l;
    return std::exp(L + A * l) - std::exp(L + B * l);
  };
  detail::exp_sinh(far, cfg.rel_tol, t);
  detail::require_converged(t, cfg, "lambda_folded");
  return t.result();
}

ConstantResult lambda_unfolded(double gamma, const Weight& w, const FracParams& P, const QuadratureConfig& cfg) {
  check_finite_lambda(gamma, w);
  if (gamma == 0.0) return {};
  Tally t = unfolded_pv(gamma, w.beta(), P, cfg, INFINITY);
  detail::require_converged(t, cfg, "lambda_unfolded");
  return t.result();
}

ConstantResult lambda_derivative(double gamma, const Weight& w, const FracParams& P, const QuadratureConfig& cfg) {
  check_finite_lambda(gamma, w);
  const double p = P.p(), N = P.N(), ps = P.ps(), b = w.beta();
  if (p < 2.0) {
    // central differences; the error estimate compares steps h and 2h
    if (!(gamma > 0.0)) throw DomainError("lambda_derivative for p < 2 needs gamma > 0");
    double h = std::min(1e-4 * std::max(1.0, gamma), 0.25 * gamma);
    h = std::min(h, 0.25 * (w.gamma_finite() - gamma));
    auto L = [&](double x) { return lambda_folded(x, w, P, cfg); };
    ConstantResult a = L(gamma + h), c = L(gamma - h), a2 = L(gamma + 2 * h), c2 = L(gamma - 2 * h);
    double d1 = (a.value - c.value) / (2 * h), d2 = (a2.value - c2.value) / (4 * h);
    double qerr = (a.abs_error + c.abs_error) / (2 * h);
    return {d1, std::fabs(d1 - d2) + qerr, a.evaluations + c.evaluations + a2.evaluations + c2.evaluations};
  }
  if (gamma == 0.0 && p > 2.0) return {};
  const KernelOrder k = kernel_order(P);
  const double A = N - 1.0 - b - gamma * (p - 1.0), B = b + ps + gamma - 1.0;
  // at the maximizer the bracket vanishes identically
  if (std::fabs(A - B) <= 4e-16 * (std::fabs(A) + std::fabs(B))) return {};
  Tally t;
  auto near = [&](double d) {
    double br = d == 0.0 ? A - B : (std::expm1(A * std::log1p(d)) - std::expm1(B * std::log1p(d))) / d;
    double lg = d == 0.0 ? 1.0 : std::log1p(d) / d;
    double gq = p == 2.0 ? 1.0 : std::pow(rise_above(gamma, d), p - 2.0);
    return (p - 1.0) * scaled(d, true, k, cfg) * lg * gq * br;
  };
  detail::near_one(near, p - 1.0 - ps, 1.0, cfg.rel_tol, t);
  auto far = [&](double u) {
    double l = std::log(2.0) + u;
    double L = log_kernel_above(l, k, cfg) + std::log(l) + l;
    if (p != 2.0) L += (p - 2.0) * log_expm1(gamma * l);
    return (p - 1.0) * (std::exp(L + A * l) - std::exp(L + B * l));
  };
  detail::exp_sinh(far, cfg.rel_tol, t);
  detail::require_converged(t, cfg, "lambda_derivative");
  return t.result();
}

ConstantResult hardy_constant(const Weight& w, const FracParams& P, const QuadratureConfig& cfg) {
  ConstantResult r = lambda_folded(w.gamma0(), w, P, cfg);
  return {2.0 * r.value, 2.0 * r.abs_error, r.evaluations};
}

ConstantResult mu_constant(double q, const FracParams& P, const QuadratureConfig& cfg) {
  const double p = P.p(), N = P.N(), s = P.s();
  if (!(q > 1.0 && q < p)) throw DomainError("mu_constant needs 1 < q < p");
  const KernelOrder k{P.N(), q * s};
  const double a = (N - P.ps()) / p;
  const double e = a * p * (p - 1.0) + N - 1.0;
  Tally t;
  auto below = [&](double d) {
    if (d >= 1.0) return 0.0;
    double sg = 1.0 - d;
    return scaled(d, false, k, cfg) * std::pow(rise_below(a, d), p) * std::pow(sg, e) *
           std::pow(1.0 + std::pow(sg, a * p), -p);
  };
  detail::near_one(below, p - 1.0 - q * s, 1.0, cfg.rel_tol, t);
  auto above = [&](double d) {
    double sg = 1.0 + d;
    return scaled(d, true, k, cfg) * std::pow(rise_above(a, d), p) * std::pow(sg, e) *
           std::pow(1.0 + std::pow(sg, a * p), -p);
  };
  detail::near_one(above, p - 1.0 - q * s, 1.0, cfg.rel_tol, t);
  auto far = [&](double u) {
    double l = std::log(2.0) + u;
    double L = p * log_expm1(a * l) + e * l - p * (a * p * l + std::log1p(std::exp(-a * p * l))) +
               log_kernel_above(l, k, cfg) + l;
    return std::exp(L);
  };
  detail::exp_sinh(far, cfg.rel_tol, t);
  detail::require_converged(t, cfg, "mu_constant");
  return t.result();
}

ConstantResult c3_constant(const Weight& w, const FracParams& P, const QuadratureConfig& cfg) {
  const double p = P.p(), N = P.N(), ps = P.ps(), b = w.beta();
  if (b == 0.0) throw DomainError("c3_constant needs beta != 0");
  if (!(b < ps)) throw DomainError("C3 diverges at infinity unless beta < ps");
  const KernelOrder k = kernel_order(P);
  const double a = 2.0 * b / p;
  Tally t;
  auto below = [&](double d) {
    if (d >= 1.0) return 0.0;
    return scaled(d, false, k, cfg) * std::pow(std::fabs(rise_below(a, d)), p) * std::pow(1.0 - d, N - 1.0 - b);
  };
  detail::near_one(below, p - 1.0 - ps, 1.0, cfg.rel_tol, t);
  auto above = [&](double d) {
    return scaled(d, true, k, cfg) * std::pow(std::fabs(rise_above(a, d)), p) * std::pow(1.0 + d, N - 1.0 - b);
  };
  detail::near_one(above, p - 1.0 - ps, 1.0, cfg.rel_tol, t);
  auto far = [&](double u) {
    double l = std::log(2.0) + u;
    double x = a * l;
    double lab = x > 30.0 ? log_expm1(x) : std::log(std::fabs(std::expm1(x)));
    return std::exp(p * lab + (N - 1.0 - b) * l + log_kernel_above(l, k, cfg) + l);
  };
  detail::exp_sinh(far, cfg.rel_tol, t);
  detail::require_converged(t, cfg, "c3_constant");
  return t.result();
}

ConstantResult truncation_h(double r, double gamma, const FracParams& P, const QuadratureConfig& cfg) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("truncation_h needs 0 < r < 1");
  const double gmax = (P.N() - P.ps()) / (P.p() - 1.0);
  if (!(gamma > 0.0 && gamma < gmax)) throw DomainError("truncation_h needs 0 < gamma < (N-ps)/(p-1)");
  Tally t = unfolded_pv(gamma, 0.0, P, cfg, 1.0 / r);
  ConstantResult tail = kernel_tail_moment(1.0 / r, P.N() - 1.0, P, cfg);
  double f = -std::expm1(gamma * std::log(r));
  t.value += f * tail.value;
  t.err += f * tail.abs_error;
  t.evals += tail.evaluations;
  detail::require_converged(t, cfg, "truncation_h");
  return t.result();
}

}  // namespace fracckn
