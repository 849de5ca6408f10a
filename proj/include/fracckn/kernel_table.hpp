#pragma once

#include <memory>
#include <vector>

#include "fracckn/params.hpp"

namespace fracckn {

// piecewise Chebyshev interpolant on [lo, hi], equal panels
class ChebPanels {
 public:
  ChebPanels() = default;
  template <class F>
  ChebPanels(double lo, double hi, double width, int degree, F&& f);

  double operator()(double x) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int panels() const { return n_; }

 private:
  double lo_ = 0, hi_ = 0, h_ = 1;
  int n_ = 0, deg_ = 0;
  std::vector<double> coef_;

  void fit(const std::vector<double>& vals);
  friend class KernelTable;
  friend class KernelMomentTable;
};

// fast K(sigma) for one kernel order; interpolates log(K(1+d) d^{1+sp}) in log d
class KernelTable {
 public:
  KernelTable(KernelOrder order, const QuadratureConfig& cfg);

  static std::shared_ptr<const KernelTable> shared(KernelOrder order, const QuadratureConfig& cfg);

  KernelOrder order() const { return order_; }
  double cutoff() const { return cutoff_; }

  double operator()(double sigma) const;
  double scaled_above(double delta) const;
  double scaled_below(double delta) const;
  // log K(e^t) for t > 0
  double log_above(double t) const;

 private:
  KernelOrder order_;
  double cutoff_;
  double delta_lo_;
  double c0_;
  ChebPanels g_;
};

// M(tau) = int_tau^{log cutoff} e^{t(e+1)} K(e^t) dt, extended past the cutoff by the series
class KernelMomentTable {
 public:
  KernelMomentTable(const KernelTable& kt, double exponent);

  static std::shared_ptr<const KernelMomentTable> shared(KernelOrder order, double exponent,
                                                         const QuadratureConfig& cfg);

  // int_{tau1}^{tau2} e^{t(e+1)} K(e^t) dt, 0 < tau1 <= tau2 (tau2 may be +inf)
  double between(double tau1, double tau2) const;
  bool integrable_at_infinity() const { return integrable_; }

 private:
  double M(double tau) const;

  KernelOrder order_;
  double e_;
  double tau_c_;
  double tau_lo_;
  bool integrable_;
  ChebPanels h_;
};

}  // namespace fracckn
