#pragma once

#include <vector>

namespace fracckn {

struct PairSample {
  double ux, uy;  // u(x), u(y)
  double wx, wy;  // w(x), w(y) > 0
};

// |u(x)-u(y)|^p - (|v(x)|^p w(x) - |v(y)|^p w(y)) |w(x)-w(y)|^{p-2} (w(x)-w(y)), v = u/w
double picone_phi(const PairSample& s, double p);
// minimum over the samples
double picone_defect(const std::vector<PairSample>& samples, double p);

// |a-t|^p - (1-t)^{p-1} (|a|^p - t), 0 <= t <= 1
double elementary_inequality_defect(double a, double t, double p);

}  // namespace fracckn
