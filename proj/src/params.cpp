#include "fracckn/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracckn/errors.hpp"

namespace fracckn {

FracParams::FracParams(int N, double s, double p) : N_(N), s_(s), p_(p) {
  if (N < 1) throw DomainError("N must be >= 1, got " + std::to_string(N));
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1), got " + std::to_string(s));
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("p must be > 1, got " + std::to_string(p));
  if (!(p * s < N)) throw DomainError("need ps < N");
}

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0)) throw DomainError("tolerances must be positive");
  if (!(tail_cutoff > 1)) throw DomainError("tail_cutoff must exceed 1");
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
  if (panel_points < 4 || panel_points > 40) throw DomainError("panel_points must lie in [4,40]");
}

double sphere_area(int N) {
  if (N == 1) return 2.0;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

}  // namespace fracckn
