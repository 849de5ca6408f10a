#pragma once

// thin wrappers over Boost double-exponential rules with error/evaluation bookkeeping

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracckn/errors.hpp"
#include "fracckn/params.hpp"

namespace fracckn::detail {

struct Tally {
  double value = 0.0;
  double err = 0.0;
  std::int64_t evals = 0;

  ConstantResult result() const { return {value, err, evals}; }
  void add(const ConstantResult& r) {
    value += r.value;
    err += r.abs_error;
    evals += r.evaluations;
  }
};

// the Boost 1.74 integrate() overloads are not callable on const objects
inline boost::math::quadrature::tanh_sinh<double>& ts_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  return rule;
}

inline boost::math::quadrature::exp_sinh<double>& es_rule() {
  thread_local boost::math::quadrature::exp_sinh<double> rule(15);
  return rule;
}

template <class F>
double tanh_sinh(F&& f, double a, double b, double tol, Tally& t) {
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  auto g = [&](double x) {
    ++t.evals;
    double y = f(x);
    return std::isfinite(y) ? y : 0.0;
  };
  double v = ts_rule().integrate(g, a, b, tol, &err, &l1, &levels);
  t.value += v;
  t.err += err;
  return v;
}

// int_0^inf f(u) du
template <class F>
double exp_sinh(F&& f, double tol, Tally& t) {
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  auto g = [&](double x) {
    ++t.evals;
    double y = f(x);
    return std::isfinite(y) ? y : 0.0;
  };
  double v = es_rule().integrate(g, 0.0, std::numeric_limits<double>::infinity(), tol, &err, &l1, &levels);
  t.value += v;
  t.err += err;
  return v;
}

// int_0^D d^q g(d) dd with q > -1, through d = v^m, m = 1/(1+q); the integrand becomes m g(v^m)
template <class G>
double near_one(G&& g, double q, double D, double tol, Tally& t) {
  const double m = 1.0 / (1.0 + q);
  auto f = [&](double v) { return m * g(std::pow(v, m)); };
  return tanh_sinh(f, 0.0, std::pow(D, 1.0 / m), tol, t);
}

inline void require_converged(const Tally& t, const QuadratureConfig& cfg, const char* what) {
  if (!(t.err <= std::max(100.0 * cfg.rel_tol * std::fabs(t.value), cfg.abs_tol)) || !std::isfinite(t.value))
    throw ConvergenceError(std::string(what) + ": quadrature did not converge", t.value, t.err);
}

}  // namespace fracckn::detail
