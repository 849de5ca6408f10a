#include "fracckn/kernel_table.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <boost/math/quadrature/gauss.hpp>

#include "fracckn/errors.hpp"
#include "fracckn/kernel.hpp"

namespace fracckn {

template <class F>
ChebPanels::ChebPanels(double lo, double hi, double width, int degree, F&& f) : lo_(lo), hi_(hi), deg_(degree) {
  n_ = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
  h_ = (hi - lo) / n_;
  const int m = deg_ + 1;
  std::vector<double> vals(static_cast<size_t>(n_) * m);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < m; ++j) {
      double x = std::cos(std::numbers::pi * (j + 0.5) / m);
      vals[i * m + j] = f(lo_ + h_ * (i + 0.5 * (x + 1.0)));
    }
  fit(vals);
}

void ChebPanels::fit(const std::vector<double>& vals) {
  const int m = deg_ + 1;
  coef_.assign(vals.size(), 0.0);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < m; ++k) {
      double c = 0.0;
      for (int j = 0; j < m; ++j) c += vals[i * m + j] * std::cos(std::numbers::pi * k * (j + 0.5) / m);
      coef_[i * m + k] = c * (k == 0 ? 1.0 : 2.0) / m;
    }
}

double ChebPanels::operator()(double x) const {
  int i = static_cast<int>((x - lo_) / h_);
  i = std::clamp(i, 0, n_ - 1);
  double t = 2.0 * (x - lo_ - h_ * i) / h_ - 1.0;
  const double* c = &coef_[static_cast<size_t>(i) * (deg_ + 1)];
  double b1 = 0.0, b2 = 0.0;
  for (int k = deg_; k >= 1; --k) {
    double b0 = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}

namespace {
constexpr double kDeltaLo = 1e-11;
constexpr double kTauLo = 1e-10;
}  // namespace

KernelTable::KernelTable(KernelOrder order, const QuadratureConfig& cfg)
    : order_(order), cutoff_(cfg.tail_cutoff), delta_lo_(kDeltaLo), c0_(kernel_singular_coefficient(order)) {
  if (order.N == 1) return;
  g_ = ChebPanels(std::log(delta_lo_), std::log(cutoff_ - 1.0), 1.0, 16,
                  [&](double w) { return std::log(kernel_scaled(std::exp(w), true, order, cfg)); });
}

double KernelTable::scaled_above(double d) const {
  const double sp = order_.sp;
  if (order_.N == 1) return 1.0 + std::pow(d / (2.0 + d), 1.0 + sp);
  if (d < delta_lo_) return c0_ * std::pow(1.0 + d, -0.5 * (order_.N - 1));
  if (1.0 + d >= cutoff_) return std::exp(kernel_series_log(std::log1p(d), order_) + (1.0 + sp) * std::log(d));
  return std::exp(g_(std::log(d)));
}

double KernelTable::scaled_below(double d) const {
  if (order_.N == 1) return 1.0 + std::pow(d / (2.0 - d), 1.0 + order_.sp);
  return std::pow(1.0 - d, 1.0 - order_.N) * scaled_above(d / (1.0 - d));
}

double KernelTable::operator()(double sigma) const {
  if (sigma == 1.0 || !(sigma >= 0.0)) throw DomainError("KernelTable: sigma must be >= 0 and != 1");
  if (sigma == 0.0) return order_.N == 1 ? 2.0 : sphere_area(order_.N);
  if (sigma > 1.0) {
    if (sigma >= cutoff_) return kernel_series(sigma, order_);
    double d = sigma - 1.0;
    return scaled_above(d) * std::pow(d, -1.0 - order_.sp);
  }
  double d = 1.0 - sigma;
  return scaled_below(d) * std::pow(d, -1.0 - order_.sp);
}

double KernelTable::log_above(double t) const {
  if (t >= std::log(cutoff_)) return kernel_series_log(t, order_);
  double d = std::expm1(t);
  double ld = std::log(d);
  if (order_.N != 1 && d >= delta_lo_) return g_(ld) - (1.0 + order_.sp) * ld;
  return std::log(scaled_above(d)) - (1.0 + order_.sp) * ld;
}

std::shared_ptr<const KernelTable> KernelTable::shared(KernelOrder order, const QuadratureConfig& cfg) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double, double>, std::shared_ptr<const KernelTable>> cache;
  auto key = std::make_tuple(order.N, order.sp, cfg.tail_cutoff, cfg.rel_tol);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto t = std::make_shared<const KernelTable>(order, cfg);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, t).first->second;
}

KernelMomentTable::KernelMomentTable(const KernelTable& kt, double exponent)
    : order_(kt.order()), e_(exponent), tau_c_(std::log(kt.cutoff())), tau_lo_(kTauLo) {
  integrable_ = exponent + 1.0 - order_.N - order_.sp < 0.0;
  const double sp = order_.sp;
  // integrand in w = log t
  auto F = [&](double w) {
    double t = std::exp(w);
    return std::exp(t * (e_ + 1.0) + kt.log_above(t) + w);
  };
  const double wlo = std::log(tau_lo_), whi = std::log(tau_c_);
  // collect node abscissae, then accumulate int_w^{whi} F downward
  std::vector<double> ws;
  ChebPanels probe(wlo, whi, 0.5, 16, [&](double w) {
    ws.push_back(w);
    return 0.0;
  });
  std::vector<double> sorted = ws;
  sorted.push_back(whi);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::map<double, double> Mw;
  double acc = 0.0;
  Mw[whi] = 0.0;
  for (size_t i = sorted.size() - 1; i > 0; --i) {
    acc += boost::math::quadrature::gauss<double, 15>::integrate(F, sorted[i - 1], sorted[i]);
    Mw[sorted[i - 1]] = acc;
  }
  std::vector<double> vals;
  vals.reserve(ws.size());
  for (double w : ws) vals.push_back(Mw[w] * std::exp(sp * w));
  h_ = probe;
  h_.fit(vals);
}

double KernelMomentTable::M(double tau) const {
  const double sp = order_.sp;
  if (tau < tau_lo_) return h_(std::log(tau_lo_)) * std::pow(tau, -sp);
  if (tau <= tau_c_) return h_(std::log(tau)) * std::pow(tau, -sp);
  if (std::isinf(tau)) return -kernel_series_moment_log(tau_c_, tau, e_, order_);
  return -kernel_series_moment_log(tau_c_, tau, e_, order_);
}

double KernelMomentTable::between(double tau1, double tau2) const {
  if (!(tau1 > 0.0) || !(tau2 >= tau1)) throw DomainError("KernelMomentTable: need 0 < tau1 <= tau2");
  if (std::isinf(tau2) && !integrable_) throw DomainError("kernel moment diverges at infinity");
  return M(tau1) - M(tau2);
}

std::shared_ptr<const KernelMomentTable> KernelMomentTable::shared(KernelOrder order, double exponent,
                                                                   const QuadratureConfig& cfg) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double, double, double>, std::shared_ptr<const KernelMomentTable>> cache;
  auto key = std::make_tuple(order.N, order.sp, exponent, cfg.tail_cutoff, cfg.rel_tol);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto kt = KernelTable::shared(order, cfg);
  auto t = std::make_shared<const KernelMomentTable>(*kt, exponent);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, t).first->second;
}

}  // namespace fracckn
