#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracckn/constants.hpp"
#include "fracckn/errors.hpp"
#include "fracckn/exponents.hpp"
#include "fracckn/kernel.hpp"
#include "support.hpp"

using namespace fracckn;

namespace {

// int_0^inf f(sigma) K(sigma) d sigma straight from the angular quadrature, split at sigma = 1 and 2
template <class F>
double kernel_integral(F&& f, KernelOrder order) {
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  auto below = [&](double d) { return d < 1e-14 ? 0.0 : f(1.0 - d) * angular_kernel(1.0 - d, order); };
  auto above = [&](double d) { return d < 1e-14 ? 0.0 : f(1.0 + d) * angular_kernel(1.0 + d, order); };
  auto tail = [&](double x) { return x > 1e30 ? 0.0 : f(2.0 + x) * angular_kernel(2.0 + x, order); };
  return ts.integrate(below, 0.0, 1.0, 1e-12) + ts.integrate(above, 0.0, 1.0, 1e-12) + es.integrate(tail, 1e-12);
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("weight bounds") {
  FracParams P(3, 0.5, 2);
  CHECK_THROWS_AS(Weight(-1.0, P), DomainError);
  CHECK_THROWS_AS(Weight(1.0, P), DomainError);
  Weight w(0.0, P);
  CHECK(w.gamma0() == doctest::Approx(1.0));
  CHECK(w.gamma_max() == doctest::Approx(2.0));
  FracParams Q(3, 0.4, 2.5);
  Weight wb(0.2, Q);
  CHECK(wb.gamma0() == doctest::Approx((3 - 1.0 - 0.4) / 2.5));
  CHECK(wb.gamma_max() == doctest::Approx((3 - 1.0 - 0.4) / 1.5));
}

TEST_CASE("Lambda sign structure") {
  FracParams P(3, 0.5, 2);
  Weight w(0.0, P);
  CHECK(lambda_folded(0.0, w, P).value == 0.0);
  for (int i = 1; i < 20; ++i) CHECK(lambda_folded(w.gamma_max() * i / 20.0, w, P).value > 0.0);
  CHECK(lambda_folded(w.gamma_max() + 0.1, w, P).value < 0.0);
  CHECK_THROWS_AS(lambda_folded(-0.1, w, P), DomainError);
  CHECK_THROWS_AS(lambda_folded(w.gamma_finite(), w, P), DomainError);
}

TEST_CASE("fold identity on random configurations") {
  std::mt19937_64 g(20);
  std::uniform_real_distribution<double> U(0.05, 0.95);
  for (int i = 0; i < 20; ++i) {
    auto c = testsupport::random_config(g);
    double gamma = U(g) * c.w.gamma_max();
    double f = lambda_folded(gamma, c.w, c.P).value;
    double u = lambda_unfolded(gamma, c.w, c.P).value;
    INFO("N=" << c.P.N() << " p=" << c.P.p() << " s=" << c.P.s() << " beta=" << c.w.beta() << " gamma=" << gamma);
    CHECK(rel(u, f) <= 1e-6);
  }
  FracParams P2(2, 0.5, 2);
  Weight w2(0.0, P2);
  CHECK(rel(lambda_unfolded(w2.gamma0(), w2, P2).value, lambda_folded(w2.gamma0(), w2, P2).value) <= 1e-6);
  FracParams P3(3, 0.4, 2.5);
  Weight w3(0.2, P3);
  CHECK(rel(lambda_unfolded(w3.gamma0(), w3, P3).value, lambda_folded(w3.gamma0(), w3, P3).value) <= 1e-6);
}

TEST_CASE("unfolded form is continuous at gamma = 0") {
  FracParams P(3, 0.4, 3);
  Weight w(0.0, P);
  CHECK(std::fabs(lambda_unfolded(1e-6, w, P).value) <= 1e-3);
}

TEST_CASE("hardy constant") {
  FracParams P(3, 0.5, 2);
  Weight w(0.0, P);
  double H = hardy_constant(w, P).value;
  CHECK(rel(H, 2 * lambda_unfolded(w.gamma0(), w, P).value) <= 1e-6);
  for (int i = 1; i <= 50; ++i) {
    double gamma = w.gamma_max() * i / 51.0;
    CHECK(H >= 2 * lambda_folded(gamma, w, P).value);
  }
  Weight edge(0.5 * (3 - P.ps()) - 1e-3, P);
  double He = hardy_constant(edge, P).value;
  CHECK(std::isfinite(He));
  CHECK(He > 0.0);
}

TEST_CASE("Lambda is unimodal with maximizer gamma0") {
  std::mt19937_64 g(30);
  for (int k = 0; k < 4; ++k) {
    auto c = testsupport::random_config(g);
    const double gm = c.w.gamma_max(), g0 = c.w.gamma0();
    std::vector<double> gs, ls;
    for (int i = 1; i <= 100; ++i) {
      gs.push_back(gm * i / 101.0);
      ls.push_back(lambda_folded(gs.back(), c.w, c.P).value);
    }
    size_t arg = std::max_element(ls.begin(), ls.end()) - ls.begin();
    CHECK(std::fabs(gs[arg] - g0) <= gm / 101.0);
    for (size_t i = 1; i < gs.size(); ++i) {
      if (gs[i] < g0) CHECK(ls[i] > ls[i - 1]);
      if (gs[i - 1] > g0) CHECK(ls[i] < ls[i - 1]);
    }
  }
}

TEST_CASE("Lambda derivative") {
  FracParams P(3, 0.5, 2);
  Weight w(0.0, P);
  double L0 = lambda_folded(w.gamma0(), w, P).value;
  CHECK(std::fabs(lambda_derivative(w.gamma0(), w, P).value) <= 1e-6 * L0);
  CHECK(lambda_derivative(0.5 * w.gamma0(), w, P).value > 0.0);
  FracParams P3(3, 0.4, 3);
  Weight w3(0.0, P3);
  CHECK(lambda_derivative(0.0, w3, P3).value == 0.0);

  std::mt19937_64 g(40);
  std::uniform_real_distribution<double> U(0.05, 0.95);
  for (int i = 0; i < 10; ++i) {
    auto c = testsupport::random_config(g, 2.0, 4.0);
    double gamma = U(g) * c.w.gamma_max();
    double h = 1e-4;
    double fd = (lambda_folded(gamma + h, c.w, c.P).value - lambda_folded(gamma - h, c.w, c.P).value) / (2 * h);
    double d = lambda_derivative(gamma, c.w, c.P).value;
    INFO("p=" << c.P.p() << " gamma=" << gamma);
    CHECK(std::fabs(d - fd) <= 1e-3 * std::max(std::fabs(fd), 1e-3 * lambda_folded(gamma, c.w, c.P).value));
  }

  FracParams Ps(3, 0.5, 1.5);
  Weight ws(0.0, Ps);
  CHECK(std::fabs(lambda_derivative(ws.gamma0(), ws, Ps).value) <= 1e-5 * lambda_folded(ws.gamma0(), ws, Ps).value);
  CHECK_THROWS_AS(lambda_derivative(0.0, ws, Ps), DomainError);
}

TEST_CASE("mu constant") {
  FracParams P(3, 0.5, 3);
  double a = mu_constant(3 - 1e-6, P).value, b = mu_constant(2.0, P).value;
  CHECK(std::isfinite(a));
  CHECK(std::isfinite(b));
  CHECK(a > 0.0);
  CHECK(b > 0.0);
  CHECK(rel(a, b) > 1e-3);
  CHECK_THROWS_AS(mu_constant(1.0, P), DomainError);
  CHECK_THROWS_AS(mu_constant(3.0, P), DomainError);

  FracParams Q(4, 0.6, 2);
  const double q = 1.5, alpha = (4 - Q.ps()) / 2;
  auto f = [&](double sg) {
    double t = std::pow(sg, alpha);
    return std::pow(std::fabs(1 - t), 2.0) * std::pow(sg, alpha * 2 + 3) * std::pow(1 + t * t, -2.0);
  };
  double oracle = kernel_integral(f, KernelOrder{4, q * 0.6});
  CHECK(rel(mu_constant(q, Q).value, oracle) <= 1e-4);
}

TEST_CASE("C3 constant") {
  FracParams P(3, 0.5, 2);
  CHECK(c3_constant(Weight(1e-4, P), P).value <= 1e-2);
  CHECK_THROWS_AS(c3_constant(Weight(0.0, P), P), DomainError);

  const double beta = 0.4, a = 2 * beta / 2;
  auto folded = [&](double x) {
    return std::pow(std::fabs(1 - std::pow(x, a)), 2.0) * std::pow(x, 3 - 1 - beta) +
           std::pow(std::fabs(1 - std::pow(x, -a)), 2.0) * std::pow(x, beta + P.ps() - 1);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  KernelOrder ko{3, P.ps()};
  double oracle = ts.integrate([&](double d) { return d < 1e-14 ? 0.0 : folded(1 + d) * angular_kernel(1 + d, ko); },
                               0.0, 1.0, 1e-12) +
                  es.integrate([&](double x) { return x > 1e30 ? 0.0 : folded(2 + x) * angular_kernel(2 + x, ko); }, 1e-12);
  CHECK(rel(c3_constant(Weight(beta, P), P).value, oracle) <= 1e-6);

  FracParams Q(2, 0.4, 2);
  double c = c3_constant(Weight(0.2, Q), Q).value;
  CHECK(std::isfinite(c));
  CHECK(c > 0.0);
}

TEST_CASE("truncation h stays below lambda") {
  FracParams P(3, 0.5, 2);
  Weight w(0.0, P);
  const double L0 = lambda_folded(w.gamma0(), w, P).value;
  for (double lam : {0.5 * L0, L0}) {
    double g1 = gamma_roots(lam, w, P).gamma1;
    double h0 = truncation_h(1e-4, g1, P).value;
    CHECK(h0 <= lam + 1e-8);
    CHECK(lam - h0 <= 1e-2);
    CHECK(truncation_h(0.5, g1, P).value <= lam);
    CHECK(std::isfinite(truncation_h(0.99, g1, P).value));
    for (int i = 1; i <= 50; ++i) CHECK(truncation_h(i / 51.0, g1, P).value <= lam + 1e-8);
  }
  CHECK_THROWS_AS(truncation_h(1.0, 0.5, P), DomainError);
}
