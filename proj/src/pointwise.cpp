#include "fracckn/pointwise.hpp"

#include <cmath>
#include <limits>

#include "fracckn/errors.hpp"

namespace fracckn {

double picone_phi(const PairSample& s, double p) {
  if (!(p > 1.0)) throw DomainError("Picone defect needs p > 1");
  if (!(s.wx > 0.0) || !(s.wy > 0.0)) throw DomainError("Picone defect needs w > 0");
  const double lhs = std::pow(std::fabs(s.ux - s.uy), p);
  const double dw = s.wx - s.wy;
  const double gx = std::pow(std::fabs(s.ux), p) / std::pow(s.wx, p - 1.0);
  const double gy = std::pow(std::fabs(s.uy), p) / std::pow(s.wy, p - 1.0);
  const double pw = dw == 0.0 ? 0.0 : std::pow(std::fabs(dw), p - 2.0) * dw;
  return lhs - (gx - gy) * pw;
}

double picone_defect(const std::vector<PairSample>& samples, double p) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) m = std::min(m, picone_phi(s, p));
  return m;
}

double elementary_inequality_defect(double a, double t, double p) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("elementary inequality needs 0 <= t <= 1");
  if (!(p > 1.0)) throw DomainError("elementary inequality needs p > 1");
  return std::pow(std::fabs(a - t), p) - std::pow(1.0 - t, p - 1.0) * (std::pow(std::fabs(a), p) - t);
}

}  // namespace fracckn
