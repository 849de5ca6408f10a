#include "fracckn/exponents.hpp"

#include <algorithm>
#include <cmath>

#include "fracckn/errors.hpp"

namespace fracckn {

RootPair gamma_roots(double lambda, const Weight& w, const FracParams& P, double tol, const QuadratureConfig& cfg) {
  if (!(tol > 0)) throw DomainError("gamma_roots: tol must be positive");
  const double g0 = w.gamma0(), gmax = w.gamma_max();
  QuadratureConfig qc = cfg;
  const double L0 = lambda_folded(g0, w, P, qc).value;
  qc.rel_tol = std::min(cfg.rel_tol, 0.1 * tol / std::max(L0, 1.0));
  if (!(lambda > 0.0)) throw DomainError("gamma_roots: lambda must be positive");
  if (lambda > L0 + tol) throw DomainError("gamma_roots: lambda exceeds Lambda(gamma0), no root");
  RootPair out;
  out.lambda = lambda;
  if (std::fabs(L0 - lambda) <= tol) {
    out.gamma1 = out.gamma2 = g0;
    out.residual = std::fabs(L0 - lambda);
    return out;
  }
  auto f = [&](double g) { return lambda_folded(g, w, P, qc).value - lambda; };
  const double xtol = 1e-15 * g0;

  double a = 1e-6 * g0, fa = f(a);
  while (fa >= 0.0) {
    if (a < 1e-280) throw ConvergenceError("gamma_roots: left bracket failed", a, a);
    a *= 1e-3;
    fa = f(a);
  }
  out.gamma1 = bracketed_root(f, a, g0, fa, L0 - lambda, tol, xtol);

  double b = gmax * (1.0 - 1e-6), fb = f(b);
  if (fb >= 0.0) {
    // Lambda changes sign at gamma_max; step past it, short of the divergence point
    b = gmax + 0.5 * (w.gamma_finite() - gmax);
    fb = f(b);
  }
  out.gamma2 = bracketed_root(f, g0, b, L0 - lambda, fb, tol, xtol);
  out.residual = std::max(std::fabs(f(out.gamma1)), std::fabs(f(out.gamma2)));
  return out;
}

double critical_exponent_qplus(double lambda, const FracParams& P, double tol, const QuadratureConfig& cfg) {
  Weight w(0.0, P);
  RootPair r = gamma_roots(lambda, w, P, tol, cfg);
  return P.p() - 1.0 + P.ps() / r.gamma1;
}

ExponentSet sobolev_exponents(const FracParams& P, double q) {
  const double N = P.N(), p = P.p(), s = P.s();
  if (!(q > 0.0 && q <= p)) throw DomainError("sobolev_exponents needs 0 < q <= p");
  if (!(q * s < N)) throw DomainError("sobolev_exponents needs qs < N");
  ExponentSet e;
  e.p_star_s = p * N / (N - P.ps());
  e.p_star_s_q = p * N / (N - q * s);
  return e;
}

}  // namespace fracckn
