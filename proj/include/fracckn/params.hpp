#pragma once

#include <cstdint>

namespace fracckn {

class FracParams {
 public:
  FracParams(int N, double s, double p);

  int N() const { return N_; }
  double s() const { return s_; }
  double p() const { return p_; }
  double ps() const { return p_ * s_; }

 private:
  int N_;
  double s_;
  double p_;
};

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 20;
  double tail_cutoff = 1e3;

  // Gauss points per cell in the radial double integrals (fine level)
  int panel_points = 10;

  void validate() const;
};

struct ConstantResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::int64_t evaluations = 0;
};

// |S^{N-1}|; for N = 1 the two-point sphere, area 2
double sphere_area(int N);

// the kernel depends on (N, order*p) only; this is that pair
struct KernelOrder {
  int N;
  double sp;
};

inline KernelOrder kernel_order(const FracParams& params) { return {params.N(), params.ps()}; }

}  // namespace fracckn
