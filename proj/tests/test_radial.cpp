#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "fracckn/errors.hpp"
#include "fracckn/radial.hpp"

using namespace fracckn;
using std::numbers::pi;

namespace {

RadialProfile tent() { return RadialProfile::from_function([](double r) { return 1 - r; }, 1e-4, 1.0, 120); }

RadialProfile bump() {
  return RadialProfile::from_function(
      [](double r) {
        double z = (r - 0.5) / 0.3;
        return std::fabs(z) < 1 ? std::exp(1 - 1 / (1 - z * z)) : 0.0;
      },
      1e-3, 0.8, 80, [] {
        std::vector<double> e;
        for (int i = 1; i < 40; ++i) e.push_back(0.2 + 0.6 * i / 40.0);
        return e;
      }());
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// 6-dimensional Monte-Carlo estimate of int int |u(x)-u(y)|^2 / |x-y|^4 over R^3 x R^3 for the unit tent,
// x uniform in the ball, y = x + rho e with rho drawn from a density mixing [0,2] and a 1/rho^2 tail
std::pair<double, double> tent_seminorm_mc(long n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> U(0, 1);
  std::normal_distribution<double> Z;
  double sum = 0, sum2 = 0;
  for (long i = 0; i < n; ++i) {
    double x[3];
    do {
      for (auto& c : x) c = 2 * U(g) - 1;
    } while (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] >= 1);
    double d[3], nn = 0;
    for (auto& c : d) {
      c = Z(g);
      nn += c * c;
    }
    nn = std::sqrt(nn);
    double rho, dens;
    if (U(g) < 0.5) {
      rho = 2 * U(g);
      dens = 0.25;
    } else {
      rho = 2 / (1 - U(g));
      dens = 1 / (rho * rho);
    }
    double y[3];
    for (int k = 0; k < 3; ++k) y[k] = x[k] + rho * d[k] / nn;
    double rx = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    double ry = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
    double ux = 1 - rx, uy = ry < 1 ? 1 - ry : 0;
    double mult = ry < 1 ? 1 : 2;
    double f = mult * (ux - uy) * (ux - uy) / std::pow(rho, 4.0) * 4 * pi * rho * rho / dens * (4 * pi / 3);
    sum += f;
    sum2 += f * f;
  }
  double m = sum / n;
  return {m, std::sqrt((sum2 / n - m * m) / n)};
}

}  // namespace

TEST_CASE("profile construction and evaluation") {
  CHECK_THROWS_AS(RadialProfile::sampled({0.1, 1.0}, {1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(RadialProfile::sampled({0.5, 0.1}, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(RadialProfile::sampled({0.0, 1.0}, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(RadialProfile::sampled({0.1}, {0.0}), DomainError);
  auto u = RadialProfile::sampled({0.1, 0.5, 1.0}, {2.0, 1.0, 0.0});
  CHECK(u(0.05) == 2.0);
  CHECK(u(0.3) == doctest::Approx(1.5));
  CHECK(u(0.75) == doctest::Approx(0.5));
  CHECK(u(1.0) == 0.0);
  CHECK(u(3.0) == 0.0);
  CHECK(u.support_radius() == 1.0);
  CHECK(u.origin_exponent() == 0.0);
  CHECK_THROWS_AS(u(0.0), DomainError);
  CHECK(u.dilated(2.0)(0.6) == doctest::Approx(u(0.3)));
  CHECK(u.scaled(-3)(0.3) == doctest::Approx(-4.5));
  CHECK(u.times_power(2)(0.3) == doctest::Approx(0.09 * 1.5));
  CHECK(!u.is_zero());
  CHECK(u.scaled(0).is_zero());
}

TEST_CASE("power-law profile") {
  auto w = RadialProfile::power_law(0.5, 4.0);
  CHECK(w(1.0) == doctest::Approx(1 - 0.5));
  CHECK(w(4.0) == 0.0);
  CHECK(w.origin_exponent() == -0.5);
  auto wc = RadialProfile::power_law(0.5, 4.0, 1.0);
  CHECK(wc(0.25) == doctest::Approx(0.5));
  CHECK(wc.origin_exponent() == 0.0);
  auto d = wc.dilated(2.0);
  for (double r : {0.3, 1.7, 3.0, 7.9}) CHECK(d(r) == doctest::Approx(wc(r / 2)));
  CHECK_THROWS_AS(RadialProfile::power_law(-1, 1), DomainError);
  CHECK_THROWS_AS(RadialProfile::power_law(1, 1, 1), DomainError);
}

TEST_CASE("profile file round trips") {
  auto dir = std::filesystem::temp_directory_path();
  auto csv = (dir / "fracckn_profile_rt.csv").string();
  auto u = tent();
  u.write_csv(csv);
  auto v = RadialProfile::load(csv);
  for (double r : {1e-3, 0.2, 0.77}) CHECK(v(r) == doctest::Approx(u(r)).epsilon(1e-15));
  auto js = (dir / "fracckn_profile_rt.json").string();
  {
    std::ofstream f(js);
    f << RadialProfile::power_law(0.8, 3.0, 0.5).to_json();
  }
  auto p = RadialProfile::load(js);
  CHECK(p.kind() == RadialProfile::Kind::PowerLaw);
  CHECK(p.gamma() == 0.8);
  CHECK(p.core_radius() == 0.5);
  CHECK(p.support_radius() == 3.0);
  {
    std::ofstream f(js);
    f << "{\"gamma\": 1.0}";
  }
  CHECK_THROWS_AS(RadialProfile::load(js), DomainError);
  CHECK_THROWS_AS(RadialProfile::load((dir / "fracckn_missing.csv").string()), DomainError);
  std::filesystem::remove(csv);
  std::filesystem::remove(js);
}

TEST_CASE("tent seminorm against Monte-Carlo") {
  FracParams P(3, 0.5, 2);
  double S = weighted_seminorm(tent(), 0, 0.5, P).value;
  auto [m, se] = tent_seminorm_mc(1000000, 1);
  INFO("quadrature " << S << " Monte-Carlo " << m << " +- " << se);
  CHECK(std::fabs(S - m) <= 3 * se);
}

TEST_CASE("seminorm scaling laws") {
  FracParams P(3, 0.5, 2);
  auto u = tent();
  for (double beta : {0.0, 0.3, -0.5}) {
    double S = weighted_seminorm(u, beta, 0.5, P).value;
    for (double R : {2.0, 5.0}) {
      double SR = weighted_seminorm(u.dilated(R), beta, 0.5, P).value;
      CHECK(rel(SR / S, std::pow(R, 3 - P.ps() - 2 * beta)) <= 1e-4);
    }
  }
  FracParams Q(2, 0.3, 3);
  auto b = bump();
  double S = weighted_seminorm(b, 0.1, 0.3, Q).value;
  CHECK(rel(weighted_seminorm(b.scaled(-1.7), 0.1, 0.3, Q).value, std::pow(1.7, 3) * S) <= 1e-12);
  CHECK(weighted_seminorm(b.scaled(0), 0.1, 0.3, Q).value == 0.0);
  CHECK_THROWS_AS(weighted_seminorm(b, -1.0, 0.3, Q), DomainError);
  CHECK_THROWS_AS(weighted_seminorm(b, 0.0, 1.2, Q), DomainError);
  CHECK_THROWS_AS(weighted_seminorm(b, 0.0, 0.3, Q, {}, 0.5), DomainError);
}

TEST_CASE("restricting the seminorm to a ball") {
  FracParams P(3, 0.5, 2);
  auto u = tent();
  double full = weighted_seminorm(u, 0, 0.5, P).value;
  double ball = weighted_seminorm(u, 0, 0.5, P, {}, 1.0).value;
  double big = weighted_seminorm(u, 0, 0.5, P, {}, 1e6).value;
  CHECK(ball < full);
  CHECK(big <= full);
  CHECK(rel(big, full) <= 1e-5);
  double divergent_free = weighted_seminorm(u, -2.0, 0.5, P, {}, 4.0).value;
  CHECK(std::isfinite(divergent_free));
}

TEST_CASE("weighted Lebesgue norm") {
  FracParams P(3, 0.5, 2);
  auto u = tent();
  CHECK(rel(weighted_lp_norm(u, 0, 2, P).value, 4 * pi / 30) <= 1e-10);
  CHECK(rel(weighted_lp_norm(u, 0.5, 3, P).value, 4 * pi * std::beta(2.5, 4.0)) <= 1e-10);
  CHECK(weighted_lp_norm(u.scaled(0), 1, 2, P).value == 0.0);
  for (double beta : {0.0, 0.4}) {
    double a = weighted_lp_norm(u, P.ps() + 2 * beta, 2, P).value;
    double b = weighted_lp_norm(u.dilated(3.0), P.ps() + 2 * beta, 2, P).value;
    CHECK(rel(b / a, std::pow(3.0, 3 - P.ps() - 2 * beta)) <= 1e-10);
  }
  CHECK_THROWS_AS(weighted_lp_norm(u, 3.5, 2, P), DomainError);
  CHECK_THROWS_AS(weighted_lp_norm(u, 0, 0.5, P), DomainError);
  auto w = RadialProfile::power_law(0.5, 2.0);
  double closed = 4 * pi * [] {
    // int_0^2 (r^{-1/2} - 2^{-1/2})^2 r^2 dr
    double a = 1 / std::sqrt(2.0);
    return 4.0 / 2 - 2 * a * std::pow(2.0, 2.5) / 2.5 + a * a * 8.0 / 3;
  }();
  CHECK(rel(weighted_lp_norm(w, 0, 2, P).value, closed) <= 1e-10);
}

TEST_CASE("hardy and ckn quotients") {
  FracParams P(3, 0.5, 2);
  Weight w(0.0, P);
  const double H = hardy_constant(w, P).value;
  auto u = tent();
  QuotientValue q = hardy_quotient(u, 0, P);
  CHECK(q.ratio >= H * (1 - 1e-3));
  CHECK(q.ratio == doctest::Approx(q.numerator.value / q.denominator.value));
  for (double R : {0.5, 3.0}) CHECK(rel(hardy_quotient(u.dilated(R), 0, P).ratio, q.ratio) <= 1e-6);
  CHECK_THROWS_AS(hardy_quotient(u.scaled(0), 0, P), DomainError);

  QuotientValue c = ckn_quotient(u, 0, P);
  CHECK(c.ratio > 0);
  CHECK(std::isfinite(c.ratio));
  for (double beta : {0.0, 0.2}) {
    double a = ckn_quotient(u, beta, P).ratio;
    CHECK(rel(ckn_quotient(u.dilated(4.0), beta, P).ratio, a) <= 1e-6);
  }
  CHECK_THROWS_AS(ckn_quotient(u, 1.0, P), DomainError);
  QuotientValue cb = ckn_bounded_quotient(u, 1.5, P);
  CHECK(cb.ratio > 0);
  CHECK_THROWS_AS(ckn_bounded_quotient(u, 2.0, P), DomainError);
}

TEST_CASE("ground-state representation") {
  FracParams P(3, 0.5, 2);
  auto u = tent();
  double h = ground_state_remainder(u, P).value;
  double sv = weighted_seminorm(ground_state_transform(u, P), 0.5 * (3 - P.ps()), 0.5, P).value;
  CHECK(rel(h, sv) <= 1e-3);
  auto b = bump();
  double hb = ground_state_remainder(b, P).value;
  double svb = weighted_seminorm(ground_state_transform(b, P), 0.5 * (3 - P.ps()), 0.5, P).value;
  CHECK(rel(hb, svb) <= 1e-3);

  FracParams P3(3, 0.5, 3);
  double h3 = ground_state_remainder(u, P3).value;
  double s3 = weighted_seminorm(u, 0, 0.5, P3).value;
  double v3 = weighted_seminorm(ground_state_transform(u, P3), 0.5 * (3 - P3.ps()), 0.5, P3).value;
  CHECK(h3 >= -1e-6 * s3);
  CHECK(h3 / v3 > 0);
}

TEST_CASE("operator identity on power laws") {
  FracParams P(3, 0.5, 2);
  Weight w(0.0, P);
  OperatorCheck c = power_law_operator_check(w.gamma0(), 0, {0.5, 1, 2}, P);
  CHECK(c.worst_defect <= 1e-4);
  CHECK(c.lambda == doctest::Approx(lambda_folded(w.gamma0(), w, P).value));
  for (size_t i = 0; i < 3; ++i) {
    double scale = c.operator_values[i] * std::pow(c.radii[i], w.gamma0() + P.ps());
    CHECK(rel(scale, c.operator_values[1]) <= 1e-6);
  }
  OperatorCheck neg = power_law_operator_check(w.gamma_max() + 0.1, 0, {0.5, 1, 2}, P);
  for (double v : neg.operator_values) CHECK(v < 0);

  FracParams Q(4, 0.3, 3);
  Weight wq(0.2, Q);
  for (double g : {0.5 * wq.gamma0(), wq.gamma0(), 0.5 * (wq.gamma0() + wq.gamma_max())})
    CHECK(power_law_operator_check(g, 0.2, {0.5, 1, 2}, Q).worst_defect <= 1e-4);
  CHECK_THROWS_AS(power_law_operator_check(0, 0, {1}, P), DomainError);
}

TEST_CASE("optimality certificate") {
  FracParams P(3, 0.5, 2);
  Weight w(0.0, P);
  double prev = INFINITY;
  for (double n : {2.0, 10.0, 100.0}) {
    OptimalityCertificate c = optimality_certificate(n, w, P);
    CHECK(c.I_n >= 0);
    CHECK(c.J_n >= 0);
    CHECK(c.C_n < prev);
    CHECK(c.certified);
    CHECK(c.quotient.ratio >= c.lower * (1 - 1e-6));
    CHECK(c.quotient.ratio <= c.upper);
    CHECK(c.w_n(0.5) == doctest::Approx(1 - std::pow(n, -1.0)));
    prev = c.C_n;
  }
  CHECK_THROWS_AS(optimality_certificate(1.5, w, P), DomainError);
}

TEST_CASE("symbolic power law agrees with a sampled copy") {
  FracParams P(3, 0.5, 2);
  auto w = RadialProfile::power_law(0.7, 2.0, 0.1);
  auto s = RadialProfile::from_function([&](double r) { return w(r); }, 1e-3, 2.0, 600);
  CHECK(rel(weighted_seminorm(s, 0, 0.5, P).value, weighted_seminorm(w, 0, 0.5, P).value) <= 1e-4);
}

TEST_CASE("g1 integral") {
  FracParams P(3, 0.5, 2);
  auto u = tent();
  for (double beta : {0.3, -0.2}) {
    double g = g1_integral(u, beta, P).value;
    double rhs = c3_constant(Weight(beta, P), P).value * weighted_lp_norm(u, 2 * beta + P.ps(), 2, P).value;
    CHECK(rel(g, rhs) <= 1e-3);
  }
  double g = g1_integral(u, 0.3, P).value;
  CHECK(rel(g1_integral(u.scaled(2), 0.3, P).value, 4 * g) <= 1e-10);
  CHECK(g1_integral(u.scaled(0), 0.3, P).value == 0.0);
  FracParams Q(3, 0.25, 2);
  CHECK_THROWS_AS(g1_integral(u, 0.8, Q), DomainError);
}
