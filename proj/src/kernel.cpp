#include "fracckn/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "fracckn/errors.hpp"

namespace fracckn {

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;
constexpr double kPi = std::numbers::pi;

// below this distance from sigma = 1 the leading singular term is exact to roundoff
constexpr double kAsymptoticDelta = 1e-11;

double prefactor(int N) { return 2.0 * std::pow(kPi, 0.5 * (N - 1)) / std::tgamma(0.5 * (N - 1)); }

// theta quadrature; the integrand lives on a scale delta near theta = 0,
// so panels [0,d], [d,2d], [2d,4d], ... up to pi
// d = |1 - sigma| passed separately so it is not rounded through sigma
ConstantResult theta_integral(double sigma, double d, KernelOrder k, const QuadratureConfig& cfg) {
  const double e = 0.5 * (k.N + k.sp);
  const int nm2 = k.N - 2;
  std::int64_t evals = 0;
  auto f = [&](double th) {
    ++evals;
    double sn = std::sin(0.5 * th);
    double D = d * d + 4.0 * sigma * sn * sn;
    double w = nm2 == 0 ? 1.0 : std::pow(std::sin(th), nm2);
    return w * std::pow(D, -e);
  };
  // Kronrod vs embedded Gauss difference per panel; bisect panels that miss the tolerance
  double tot = 0.0, err = 0.0;
  auto panel = [&](auto&& self, double a, double b, int depth) -> void {
    double k31 = gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0);
    double g15 = gauss<double, 15>::integrate(f, a, b);
    double e = std::fabs(k31 - g15);
    if (e > 0.1 * cfg.rel_tol * std::fabs(k31) && depth < cfg.max_subdivisions) {
      double m = 0.5 * (a + b);
      self(self, a, m, depth + 1);
      self(self, m, b, depth + 1);
      return;
    }
    tot += k31;
    err += e;
  };
  double a = 0.0, b = std::min(std::max(d, 1e-300), kPi);
  for (;;) {
    panel(panel, a, b, 0);
    if (b >= kPi) break;
    a = b;
    b = std::min(2.0 * b, kPi);
  }
  double c = prefactor(k.N);
  return {c * tot, c * err, evals};
}

double two_point(double sigma, double sp) {
  return std::pow(std::fabs(1.0 - sigma), -(1.0 + sp)) + std::pow(1.0 + sigma, -(1.0 + sp));
}

void check_order(KernelOrder k) {
  if (k.N < 1 || !(k.sp > 0.0) || !(k.sp < k.N)) throw DomainError("kernel order needs N >= 1 and 0 < sp < N");
}

}  // namespace

double kernel_singular_coefficient(KernelOrder k) {
  if (k.N == 1) return 1.0;
  return prefactor(k.N) * 0.5 * boost::math::beta(0.5 * (k.N - 1), 0.5 * (1.0 + k.sp));
}

ConstantResult angular_kernel_detail(double sigma, KernelOrder k, const QuadratureConfig& cfg) {
  check_order(k);
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("angular_kernel: sigma must be finite and >= 0");
  if (sigma == 1.0) throw DomainError("angular_kernel: K diverges at sigma = 1");
  if (k.N == 1) return {two_point(sigma, k.sp), 0.0, 1};
  if (sigma == 0.0) return {sphere_area(k.N), 0.0, 0};
  const double d = std::fabs(1.0 - sigma);
  if (sigma >= cfg.tail_cutoff) return {kernel_series(sigma, k), 0.0, 0};
  if (d < kAsymptoticDelta) {
    double v = kernel_singular_coefficient(k) * std::pow(d, -1.0 - k.sp) * std::pow(sigma, -0.5 * (k.N - 1));
    return {v, v * d, 0};
  }
  ConstantResult r = theta_integral(sigma, d, k, cfg);
  if (!(r.abs_error <= std::max(10.0 * cfg.rel_tol * r.value, cfg.abs_tol)))
    throw ConvergenceError("angular_kernel: quadrature did not converge", r.value, r.abs_error);
  return r;
}

double angular_kernel(double sigma, KernelOrder k, const QuadratureConfig& cfg) {
  return angular_kernel_detail(sigma, k, cfg).value;
}

double angular_kernel(double sigma, const FracParams& params, const QuadratureConfig& cfg) {
  return angular_kernel_detail(sigma, kernel_order(params), cfg).value;
}

double kernel_scaled(double delta, bool above, KernelOrder k, const QuadratureConfig& cfg) {
  check_order(k);
  if (!(delta > 0.0)) throw DomainError("kernel_scaled: delta must be positive");
  if (!above && !(delta < 1.0)) throw DomainError("kernel_scaled: delta must be < 1 below sigma = 1");
  double sigma = above ? 1.0 + delta : 1.0 - delta;
  if (k.N == 1) {
    // exact: 1 + (delta/(2 +- delta))^{1+sp}
    return 1.0 + std::pow(delta / (1.0 + sigma), 1.0 + k.sp);
  }
  if (delta < kAsymptoticDelta) return kernel_singular_coefficient(k) * std::pow(sigma, -0.5 * (k.N - 1));
  if (sigma >= cfg.tail_cutoff)
    return std::exp(kernel_series_log(std::log(sigma), k) + (1.0 + k.sp) * std::log(delta));
  ConstantResult r = theta_integral(sigma, delta, k, cfg);
  if (!(r.abs_error <= std::max(10.0 * cfg.rel_tol * r.value, cfg.abs_tol)))
    throw ConvergenceError("kernel_scaled: quadrature did not converge", r.value, r.abs_error);
  return r.value * std::pow(delta, 1.0 + k.sp);
}

double kernel_symmetry_defect(double xi, const FracParams& params, const QuadratureConfig& cfg) {
  if (!(xi > 0.0) || xi == 1.0) throw DomainError("kernel_symmetry_defect: xi must be positive and != 1");
  KernelOrder k = kernel_order(params);
  double lhs = angular_kernel(1.0 / xi, k, cfg);
  double rhs = std::pow(xi, k.N + k.sp) * angular_kernel(xi, k, cfg);
  return std::fabs(lhs - rhs) / lhs;
}

namespace {

template <class F>
void series_terms(KernelOrder k, F&& visit) {
  const double a = 0.5 * (k.N + k.sp), b = 0.5 * (k.sp + 2.0), c = 0.5 * k.N;
  double ck = 1.0;
  for (int j = 0; j < 4000; ++j) {
    if (!visit(j, ck)) return;
    ck *= (a + j) * (b + j) / ((c + j) * (j + 1.0));
  }
  throw ConvergenceError("kernel series did not converge", 0.0, 0.0);
}

}  // namespace

double kernel_series_log(double log_sigma, KernelOrder k) {
  if (!(log_sigma > 0.0)) throw DomainError("kernel_series: sigma must exceed 1");
  const double z = std::exp(-2.0 * log_sigma);
  double sum = 0.0, zk = 1.0;
  series_terms(k, [&](int, double ck) {
    double t = ck * zk;
    sum += t;
    zk *= z;
    return t > 1e-17 * sum;
  });
  return std::log(sphere_area(k.N)) - (k.N + k.sp) * log_sigma + std::log(sum);
}

double kernel_series(double sigma, KernelOrder k) { return std::exp(kernel_series_log(std::log(sigma), k)); }

double kernel_series_moment_log(double la, double lb, double e, KernelOrder k) {
  if (!(la > 0.0) || !(lb >= la)) throw DomainError("kernel_series_moment: need 1 < a <= b");
  const bool inf = std::isinf(lb);
  const double E0 = e + 1.0 - k.N - k.sp;
  if (inf && !(E0 < 0.0)) throw DomainError("kernel_series_moment: integrand not integrable at infinity");
  double sum = 0.0;
  series_terms(k, [&](int j, double ck) {
    double Ek = E0 - 2.0 * j;
    double t;
    if (Ek == 0.0) {
      t = ck * (lb - la);
    } else {
      double ua = std::exp(Ek * la);
      double ub = inf ? 0.0 : std::exp(Ek * lb);
      t = ck * (ub - ua) / Ek;
    }
    sum += t;
    return j < 2 || std::fabs(t) > 1e-17 * std::fabs(sum);
  });
  return sphere_area(k.N) * sum;
}

double kernel_series_moment(double a, double b, double e, KernelOrder k) {
  if (!(a > 1.0) || !(b >= a)) throw DomainError("kernel_series_moment: need 1 < a <= b");
  return kernel_series_moment_log(std::log(a), std::isinf(b) ? b : std::log(b), e, k);
}

ConstantResult kernel_tail_moment(double a, double exponent, KernelOrder k, const QuadratureConfig& cfg) {
  check_order(k);
  if (!(a > 1.0)) throw DomainError("kernel_tail_moment: a must exceed 1");
  if (!(exponent - (k.N + k.sp) < -1.0)) throw DomainError("kernel_tail_moment: sigma^e K not integrable at infinity");
  const double cut = cfg.tail_cutoff;
  if (a >= cut) return {kernel_series_moment(a, INFINITY, exponent, k), 0.0, 0};
  std::int64_t evals = 0;
  // sigma = 1 + e^w removes the (sigma-1)^{-1-sp} blow-up near a ~ 1
  auto f = [&](double w) {
    double d = std::exp(w);
    double sig = 1.0 + d;
    ++evals;
    return std::pow(sig, exponent) * kernel_scaled(d, true, k, cfg) * std::exp(-k.sp * w);
  };
  double err = 0.0;
  double v = gauss_kronrod<double, 31>::integrate(f, std::log(a - 1.0), std::log(cut - 1.0), cfg.max_subdivisions,
                                                  0.1 * cfg.rel_tol, &err);
  if (!(err <= std::max(10.0 * cfg.rel_tol * std::fabs(v), cfg.abs_tol)))
    throw ConvergenceError("kernel_tail_moment: quadrature did not converge", v, err);
  double tail = kernel_series_moment(cut, INFINITY, exponent, k);
  return {v + tail, err, evals};
}

ConstantResult kernel_tail_moment(double a, double exponent, const FracParams& params, const QuadratureConfig& cfg) {
  return kernel_tail_moment(a, exponent, kernel_order(params), cfg);
}

}  // namespace fracckn
