#include <doctest.h>

#include <cmath>

#include "fracckn/errors.hpp"
#include "fracckn/exponents.hpp"

using namespace fracckn;

TEST_CASE("bracketed root") {
  auto f = [](double x) { return std::cos(x) - x; };
  double r = bracketed_root(f, 0.0, 1.0, f(0.0), f(1.0), 1e-15, 1e-15);
  CHECK(r == doctest::Approx(0.7390851332151607).epsilon(1e-14));
}

TEST_CASE("root pair at half the maximum") {
  FracParams P(3, 0.5, 2);
  Weight w(0.0, P);
  const double L0 = lambda_folded(w.gamma0(), w, P).value;
  RootPair r = gamma_roots(0.5 * L0, w, P, 1e-10);
  CHECK(r.gamma1 < w.gamma0());
  CHECK(r.gamma2 > w.gamma0());
  CHECK(r.gamma2 < w.gamma_max());
  CHECK(r.residual <= 1e-8);
  CHECK(std::fabs(lambda_folded(r.gamma1, w, P).value - 0.5 * L0) <= 1e-8);
  CHECK(std::fabs(lambda_folded(r.gamma2, w, P).value - 0.5 * L0) <= 1e-8);
}

TEST_CASE("root pair collapses at the maximum") {
  FracParams P(3, 0.5, 2);
  Weight w(0.0, P);
  const double L0 = lambda_folded(w.gamma0(), w, P).value;
  RootPair r = gamma_roots(L0 - 1e-10, w, P);
  CHECK(std::fabs(r.gamma1 - w.gamma0()) <= 1e-3);
  CHECK(std::fabs(r.gamma2 - w.gamma0()) <= 1e-3);
  RootPair e = gamma_roots(L0, w, P);
  CHECK(e.gamma1 == doctest::Approx(w.gamma0()).epsilon(1e-6));
  CHECK_THROWS_AS(gamma_roots(1.1 * L0, w, P), DomainError);
  CHECK_THROWS_AS(gamma_roots(0.0, w, P), DomainError);
  CHECK_THROWS_AS(gamma_roots(-1.0, w, P), DomainError);
}

TEST_CASE("root pair with weight") {
  FracParams P(3, 0.4, 2.5);
  Weight w(0.2, P);
  const double L0 = lambda_folded(w.gamma0(), w, P).value;
  RootPair r = gamma_roots(0.3 * L0, w, P);
  CHECK(r.gamma1 < w.gamma0());
  CHECK(r.gamma2 > w.gamma0());
  CHECK(r.residual <= 1e-8);
}

TEST_CASE("q_plus at the maximum equals p*_s - 1") {
  for (auto P : {FracParams(3, 0.5, 2), FracParams(3, 0.4, 3), FracParams(4, 0.3, 2.5), FracParams(2, 0.6, 1.5)}) {
    Weight w(0.0, P);
    const double L0 = lambda_folded(w.gamma0(), w, P).value;
    double expect = (P.p() * P.N() - P.N() + P.ps()) / (P.N() - P.ps());
    CHECK(critical_exponent_qplus(L0, P) == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("q_plus monotone in lambda") {
  FracParams P(3, 0.5, 2);
  Weight w(0.0, P);
  const double L0 = lambda_folded(w.gamma0(), w, P).value;
  CHECK(critical_exponent_qplus(0.5 * L0, P) > 2.0);
  CHECK(critical_exponent_qplus(1e-6 * L0, P) > 100.0);
  double prev_q = INFINITY, prev_g1 = 0.0, prev_g2 = INFINITY;
  for (int i = 1; i <= 20; ++i) {
    double lam = L0 * i / 20.0;
    RootPair r = gamma_roots(lam, w, P);
    double q = P.p() - 1 + P.ps() / r.gamma1;
    CHECK(q < prev_q);
    CHECK(r.residual <= 1e-8);
    if (i < 20) {
      CHECK(r.gamma1 > prev_g1);
      CHECK(r.gamma2 < prev_g2);
    }
    prev_q = q;
    prev_g1 = r.gamma1;
    prev_g2 = r.gamma2;
  }
}

TEST_CASE("sobolev exponents") {
  ExponentSet a = sobolev_exponents(FracParams(3, 0.5, 2), 2);
  CHECK(a.p_star_s == doctest::Approx(3.0));
  CHECK(a.p_star_s_q == doctest::Approx(3.0));
  CHECK(sobolev_exponents(FracParams(3, 0.5, 2), 1).p_star_s_q == doctest::Approx(2.4));
  CHECK(sobolev_exponents(FracParams(2, 0.5, 3), 3).p_star_s == doctest::Approx(12.0));
  CHECK_THROWS_AS(sobolev_exponents(FracParams(3, 0.5, 2), 2.5), DomainError);
  CHECK_THROWS_AS(sobolev_exponents(FracParams(1, 0.45, 2), 2.4), DomainError);
}
