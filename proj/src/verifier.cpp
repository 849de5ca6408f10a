#include "fracckn/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracckn/constants.hpp"
#include "fracckn/errors.hpp"
#include "fracckn/exponents.hpp"
#include "fracckn/pointwise.hpp"
#include "fracckn/radial.hpp"

namespace fracckn {

using nlohmann::json;

json VerificationReport::to_json() const {
  json j;
  j["check"] = check;
  j["verdict"] = pass ? "pass" : "fail";
  j["worst_defect"] = worst_defect;
  j["empirical_constant"] = empirical_constant ? json(*empirical_constant) : json(nullptr);
  j["trials"] = trials;
  j["seed"] = seed;
  j["params"] = params;
  j["details"] = details;
  j["warnings"] = warnings;
  return j;
}

json params_json(const FracParams& P) { return {{"N", P.N()}, {"s", P.s()}, {"p", P.p()}}; }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// folds one trial into the verdict: defect >= -tol passes, a shortfall within 10x the quadrature error passes
// with a warning, anything beyond fails
void judge(VerificationReport& r, int trial, double defect, double tol, double quad_err) {
  if (trial == 0 || defect < r.worst_defect) r.worst_defect = defect;
  if (defect >= -tol) return;
  if (-defect <= tol + 10.0 * quad_err) {
    r.warnings.push_back("trial " + std::to_string(trial) + ": defect " + std::to_string(defect) +
                         " within quadrature noise");
    return;
  }
  r.pass = false;
}

double rel_err(const QuotientValue& q) {
  return q.numerator.abs_error / std::fabs(q.numerator.value) + q.denominator.abs_error / q.denominator.value;
}

double bump(double r, double c, double w) {
  double z = (r - c) / w;
  if (std::fabs(z) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - z * z));
}

// quotients of u(./R) for a few R, relative spread
json dilation_spread(const RadialProfile& u, double& spread, auto&& quotient) {
  json d;
  std::vector<double> radii{1.0, 0.5, 2.0, 5.0}, ratios;
  for (double R : radii) ratios.push_back(quotient(R == 1.0 ? u : u.dilated(R)).ratio);
  spread = 0.0;
  for (double x : ratios) spread = std::max(spread, std::fabs(x / ratios[0] - 1.0));
  d["radii"] = radii;
  d["ratios"] = ratios;
  d["spread"] = spread;
  return d;
}

}  // namespace

RadialProfile random_bump_profile(Rng& rng) {
  const int k = 1 + std::min(2, static_cast<int>(3.0 * rng.uniform()));
  std::vector<double> c(k), w(k), a(k);
  double R = 0.0;
  for (int i = 0; i < k; ++i) {
    w[i] = std::pow(10.0, rng.uniform(-3.0, 0.0));
    c[i] = rng.uniform();
    a[i] = rng.uniform(0.5, 1.5) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    R = std::max(R, c[i] + w[i]);
  }
  const double rmin = 1e-4 * R;
  std::vector<double> extra;
  for (int i = 0; i < k; ++i) {
    double lo = std::max(c[i] - w[i], rmin), hi = c[i] + w[i];
    for (int j = 0; j <= 24; ++j) extra.push_back(lo + (hi - lo) * j / 24.0);
  }
  auto f = [&](double r) {
    double v = 0.0;
    for (int i = 0; i < k; ++i) v += a[i] * bump(r, c[i], w[i]);
    return v;
  };
  return RadialProfile::from_function(f, rmin, R, 60, extra);
}

RadialProfile reference_bump() {
  std::vector<double> extra;
  for (int j = 0; j <= 24; ++j) extra.push_back(0.2 + 0.8 * j / 24.0);
  return RadialProfile::from_function([](double r) { return bump(r, 0.6, 0.4) + 0.5 * bump(r, 0.0, 0.5); }, 1e-4, 1.0,
                                      60, extra);
}

RadialProfile tent_profile() {
  return RadialProfile::from_function([](double r) { return 1.0 - r; }, 1e-4, 1.0, 60);
}

VerificationReport verify_hardy(int family_size, double beta, const FracParams& P, std::uint64_t seed,
                                const QuadratureConfig& cfg) {
  Weight w(beta, P);
  VerificationReport r;
  r.check = "hardy";
  r.seed = seed;
  r.trials = family_size;
  r.params = params_json(P);
  r.params["beta"] = beta;
  r.pass = true;
  const double tol = 1e-3;
  const double bound = hardy_constant(w, P, cfg).value;
  r.details["bound"] = bound;
  r.details["gamma0"] = w.gamma0();
  r.details["tolerance"] = tol;
  Rng rng(seed);
  json trials = json::array();
  double best = kInf;
  RadialProfile first = tent_profile();
  for (int i = 0; i < family_size; ++i) {
    RadialProfile u = random_bump_profile(rng);
    if (i == 0) first = u;
    QuotientValue q = hardy_quotient(u, beta, P, cfg);
    double defect = q.ratio / bound - 1.0;
    judge(r, i, defect, tol, rel_err(q));
    best = std::min(best, q.ratio);
    trials.push_back({{"trial", i}, {"ratio", q.ratio}, {"defect", defect}, {"quadrature_error", rel_err(q)}});
  }
  r.details["trials"] = trials;
  if (family_size > 0) {
    r.empirical_constant = best;
    double spread = 0.0;
    r.details["dilation"] = dilation_spread(first, spread, [&](const RadialProfile& v) {
      return hardy_quotient(v, beta, P, cfg);
    });
    if (spread > 1e-6) {
      r.pass = false;
      r.warnings.push_back("dilated quotients differ by " + std::to_string(spread));
    }
  }
  return r;
}

VerificationReport verify_improved_hardy(int family_size, double q, const FracParams& P, std::uint64_t seed,
                                         const QuadratureConfig& cfg) {
  if (!(P.p() >= 2.0)) throw DomainError("improved Hardy inequality needs p >= 2");
  if (!(q > 1.0 && q < P.p())) throw DomainError("improved Hardy inequality needs 1 < q < p");
  VerificationReport r;
  r.check = "improved-hardy";
  r.seed = seed;
  r.trials = family_size;
  r.params = params_json(P);
  r.params["q"] = q;
  r.params["domain_radius"] = 1.0;
  r.pass = true;
  const bool identity = P.p() == 2.0;
  const double beta_v = 0.5 * (P.N() - P.ps());
  Rng rng(seed);
  json trials = json::array();
  double best = kInf, worst_identity = 0.0;
  for (int i = 0; i < family_size; ++i) {
    RadialProfile u0 = random_bump_profile(rng);
    RadialProfile u = u0.dilated(1.0 / u0.support_radius());
    ConstantResult h = ground_state_remainder(u, P, cfg);
    ConstantResult sem = weighted_seminorm(u, 0.0, P.s(), P, cfg);
    ConstantResult semq = weighted_seminorm(u, 0.0, q * P.s() / P.p(), P, cfg, 1.0);
    double defect = h.value / sem.value;
    judge(r, i, defect, 1e-6, h.abs_error / sem.value);
    double ratio = h.value / semq.value;
    best = std::min(best, ratio);
    json t{{"trial", i}, {"remainder", h.value}, {"ratio", ratio}, {"defect", defect}};
    if (identity) {
      ConstantResult sv = weighted_seminorm(ground_state_transform(u, P), beta_v, P.s(), P, cfg);
      double d = std::fabs(h.value - sv.value) / sv.value;
      worst_identity = std::max(worst_identity, d);
      t["ground_state_seminorm"] = sv.value;
      t["identity_defect"] = d;
    }
    trials.push_back(t);
  }
  r.details["trials"] = trials;
  if (family_size > 0) {
    r.empirical_constant = best;
    if (!(best > 0.0)) r.pass = false;
  }
  if (identity) {
    r.details["identity_worst"] = worst_identity;
    if (worst_identity > 1e-3) r.pass = false;
  }
  return r;
}

VerificationReport verify_ckn(int family_size, double beta, const FracParams& P, bool bounded,
                              std::optional<double> q, std::uint64_t seed, const QuadratureConfig& cfg) {
  const double crit = 0.5 * (P.N() - P.ps());
  VerificationReport r;
  r.check = bounded ? "ckn-bounded" : "ckn";
  r.seed = seed;
  r.trials = family_size;
  r.params = params_json(P);
  r.pass = true;
  double pstar;
  if (bounded) {
    if (!q) throw DomainError("bounded CKN check needs q");
    if (std::fabs(beta - crit) > 1e-12 * std::max(1.0, crit)) throw DomainError("bounded CKN check needs beta = (N-ps)/2");
    if (!(*q > 1.0 && *q < P.p())) throw DomainError("bounded CKN check needs 1 < q < p");
    beta = crit;
    pstar = sobolev_exponents(P, *q).p_star_s_q;
    r.params["q"] = *q;
    r.params["domain_radius"] = 1.0;
  } else {
    Weight w(beta, P);
    pstar = sobolev_exponents(P, P.p()).p_star_s;
  }
  r.params["beta"] = beta;
  r.details["exponent"] = pstar;
  r.details["weight_exponent"] = 2.0 * beta * pstar / P.p();
  auto quotient = [&](const RadialProfile& u) {
    return bounded ? ckn_bounded_quotient(u, *q, P, cfg) : ckn_quotient(u, beta, P, cfg);
  };
  Rng rng(seed);
  json trials = json::array();
  double best = kInf;
  RadialProfile first = tent_profile();
  for (int i = 0; i < family_size; ++i) {
    RadialProfile u = random_bump_profile(rng);
    if (bounded) u = u.dilated(1.0 / u.support_radius());
    if (i == 0) first = u;
    QuotientValue qv = quotient(u);
    best = std::min(best, qv.ratio);
    if (i == 0 || qv.ratio < r.worst_defect) r.worst_defect = qv.ratio;
    if (!(qv.ratio > 0.0)) r.pass = false;
    trials.push_back({{"trial", i}, {"ratio", qv.ratio}, {"quadrature_error", rel_err(qv)}});
  }
  r.details["trials"] = trials;
  if (family_size > 0) {
    r.empirical_constant = best;
    if (!bounded) {
      double spread = 0.0;
      r.details["dilation"] = dilation_spread(first, spread, quotient);
      if (spread > 1e-6) {
        r.pass = false;
        r.warnings.push_back("dilated quotients differ by " + std::to_string(spread));
      }
    }
  }
  return r;
}

VerificationReport verify_ground_state(int family_size, const FracParams& P, std::uint64_t seed,
                                       const QuadratureConfig& cfg) {
  VerificationReport r;
  r.check = "ground-state";
  r.seed = seed;
  r.trials = family_size;
  r.params = params_json(P);
  r.pass = true;
  const bool identity = P.p() == 2.0;
  const double beta_v = 0.5 * (P.N() - P.ps());
  r.details["mode"] = identity ? "identity" : "inequality";
  Rng rng(seed);
  json trials = json::array();
  double best = kInf;
  for (int i = 0; i < family_size; ++i) {
    RadialProfile u = random_bump_profile(rng);
    ConstantResult h = ground_state_remainder(u, P, cfg);
    ConstantResult sv = weighted_seminorm(ground_state_transform(u, P), beta_v, P.s(), P, cfg);
    double c = h.value / sv.value;
    double err = (h.abs_error + sv.abs_error) / sv.value;
    best = std::min(best, c);
    if (identity) {
      double d = std::fabs(c - 1.0);
      judge(r, i, -d, 1e-3, err);
    } else {
      judge(r, i, c, 1e-6, err);
    }
    trials.push_back({{"trial", i}, {"remainder", h.value}, {"ground_state_seminorm", sv.value}, {"ratio", c}});
  }
  r.details["trials"] = trials;
  if (family_size > 0) {
    r.empirical_constant = best;
    if (!identity && !(best > 0.0)) r.pass = false;
  }
  return r;
}

VerificationReport verify_g1_identity(const RadialProfile& u, double beta, const FracParams& P,
                                      const QuadratureConfig& cfg) {
  Weight w(beta, P);
  if (beta == 0.0) throw DomainError("g1 identity needs beta != 0");
  VerificationReport r;
  r.check = "g1-identity";
  r.trials = 1;
  r.params = params_json(P);
  r.params["beta"] = beta;
  r.pass = true;
  ConstantResult lhs = g1_integral(u, beta, P, cfg);
  ConstantResult c3 = c3_constant(w, P, cfg);
  ConstantResult nrm = weighted_lp_norm(u, 2.0 * beta + P.ps(), P.p(), P, cfg);
  const double rhs = c3.value * nrm.value;
  double d = 0.0;
  if (lhs.value != 0.0 || rhs != 0.0) d = std::fabs(lhs.value - rhs) / std::max(std::fabs(lhs.value), std::fabs(rhs));
  double err = rhs != 0.0 ? lhs.abs_error / std::fabs(rhs) : 0.0;
  judge(r, 0, -d, 1e-3, err);
  r.empirical_constant = c3.value;
  r.details = {{"double_integral", lhs.value}, {"c3", c3.value}, {"weighted_norm", nrm.value}, {"product", rhs},
               {"relative_defect", d}};
  return r;
}

VerificationReport verify_picone(int samples, const FracParams& P, std::uint64_t seed) {
  const double p = P.p();
  VerificationReport r;
  r.check = "picone";
  r.seed = seed;
  r.trials = samples;
  r.params = params_json(P);
  r.pass = true;
  Rng rng(seed);
  double raw = kInf, eq = 0.0;
  for (int i = 0; i < samples; ++i) {
    PairSample s;
    s.wx = std::pow(10.0, rng.uniform(-1.0, 1.0));
    s.wy = std::pow(10.0, rng.uniform(-1.0, 1.0));
    const bool equality = i % 10 == 9;
    if (equality) {
      double c = rng.uniform(-2.0, 2.0);
      s.ux = c * s.wx;
      s.uy = c * s.wy;
    } else {
      s.ux = rng.uniform(-2.0, 2.0);
      s.uy = rng.uniform(-2.0, 2.0);
    }
    double phi = picone_phi(s, p);
    double dw = s.wx - s.wy;
    double scale = std::pow(std::fabs(s.ux - s.uy), p) +
                   (std::pow(std::fabs(s.ux), p) / std::pow(s.wx, p - 1.0) +
                    std::pow(std::fabs(s.uy), p) / std::pow(s.wy, p - 1.0)) *
                       std::pow(std::fabs(dw), p - 1.0);
    double d = phi / std::max(1.0, scale);
    raw = std::min(raw, phi);
    if (equality) eq = std::max(eq, std::fabs(d));
    judge(r, i, d, 1e-12, 0.0);
  }
  r.empirical_constant = raw;
  r.details = {{"min_phi", raw}, {"equality_case_max_abs", eq}, {"normalization", "phi / max(1, |lhs| + |rhs|)"}};
  return r;
}

VerificationReport verify_elementary(int samples, std::uint64_t seed) {
  VerificationReport r;
  r.check = "elementary";
  r.seed = seed;
  r.pass = true;
  const std::vector<double> ps{1.5, 2.0, 3.0, 5.0};
  int n = 0;
  double raw = kInf;
  auto one = [&](double a, double t, double p) {
    double d = elementary_inequality_defect(a, t, p);
    double scale = std::pow(std::fabs(a - t), p) + std::pow(1.0 - t, p - 1.0) * (std::pow(std::fabs(a), p) + t);
    raw = std::min(raw, d);
    judge(r, n++, d / std::max(1.0, scale), 1e-12, 0.0);
  };
  for (double p : ps)
    for (int i = 0; i < 200; ++i)
      for (int j = 0; j < 50; ++j) one(-5.0 + 10.0 * i / 199.0, j / 49.0, p);
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) one(rng.uniform(-5.0, 5.0), rng.uniform(), rng.uniform(1.01, 6.0));
  r.trials = n;
  r.empirical_constant = raw;
  r.params = {{"p_grid", ps}, {"a_range", {-5.0, 5.0}}, {"t_range", {0.0, 1.0}}};
  r.details = {{"grid_points", 4 * 200 * 50}, {"random_samples", samples}, {"min_defect", raw}};
  return r;
}

VerificationReport verify_truncation_barrier(double lambda, const FracParams& P, const QuadratureConfig& cfg) {
  Weight w(0.0, P);
  RootPair roots = gamma_roots(lambda, w, P, 1e-10, cfg);
  VerificationReport r;
  r.check = "barrier";
  r.trials = 50;
  r.params = params_json(P);
  r.params["lambda"] = lambda;
  r.pass = true;
  const double tol = 1e-8;
  json rows = json::array();
  for (int i = 1; i <= 50; ++i) {
    double rad = i / 51.0;
    ConstantResult h = truncation_h(rad, roots.gamma1, P, cfg);
    double defect = lambda - h.value;
    judge(r, i - 1, defect, tol, h.abs_error);
    rows.push_back({{"r", rad}, {"h", h.value}});
  }
  ConstantResult h0 = truncation_h(1e-4, roots.gamma1, P, cfg);
  r.empirical_constant = r.worst_defect;
  r.details = {{"gamma1", roots.gamma1}, {"grid", rows}, {"h_near_origin", h0.value}, {"r_near_origin", 1e-4}};
  return r;
}

VerificationReport verify_divergence(double beta, const FracParams& P, int doublings, const QuadratureConfig& cfg) {
  if (!(beta < -P.ps())) throw DomainError("divergence check needs beta < -ps");
  if (doublings < 2) throw DomainError("divergence check needs at least two doublings");
  VerificationReport r;
  r.check = "divergence";
  r.trials = doublings + 1;
  r.params = params_json(P);
  r.params["beta"] = beta;
  r.pass = true;
  RadialProfile u = reference_bump();
  std::vector<double> radii, values, increments;
  double D = u.support_radius();
  for (int k = 0; k <= doublings; ++k, D *= 2.0) {
    radii.push_back(D);
    values.push_back(weighted_seminorm(u, beta, P.s(), P, cfg, D).value);
  }
  for (size_t k = 1; k < values.size(); ++k) increments.push_back(values[k] - values[k - 1]);
  std::vector<double> growth;
  for (size_t k = 1; k < increments.size(); ++k) growth.push_back(increments[k] / increments[k - 1]);
  double worst = kInf;
  for (size_t k = 0; k < increments.size(); ++k) worst = std::min(worst, increments[k] / values[k]);
  // increments settle to the geometric rate 2^{-(beta+ps)} > 1 once the truncation sphere leaves the support
  const double predicted = std::pow(2.0, -(beta + P.ps()));
  if (!(worst > 0.0)) r.pass = false;
  if (!(growth.back() > 1.0 && std::fabs(growth.back() / predicted - 1.0) <= 0.1)) r.pass = false;
  r.worst_defect = worst;
  r.empirical_constant = growth.empty() ? 0.0 : growth.back();
  r.details = {{"truncation_radii", radii},
               {"seminorms", values},
               {"increments", increments},
               {"increment_growth", growth},
               {"predicted_growth", predicted}};
  return r;
}

VerificationReport certify_supersolution(const ProblemSpec& spec, const FracParams& P, const QuadratureConfig& cfg) {
  const double p = P.p(), ps = P.ps(), q = spec.q, lam = spec.lambda;
  Weight w(0.0, P);
  const double L0 = lambda_folded(w.gamma0(), w, P, cfg).value;
  if (!(q > p - 1.0)) throw DomainError("supersolution certificate needs q > p-1");
  if (!(lam > 0.0 && lam < L0)) throw DomainError("supersolution certificate needs 0 < lambda < Lambda(gamma0)");
  if (!(spec.domain_radius > 0.0)) throw DomainError("domain radius must be positive");
  VerificationReport r;
  r.check = "supersolution";
  r.trials = 1;
  r.params = params_json(P);
  r.params["lambda"] = lam;
  r.params["q"] = q;
  r.params["domain_radius"] = spec.domain_radius;
  RootPair base = gamma_roots(lam, w, P, 1e-10, cfg);
  const double qplus = p - 1.0 + ps / base.gamma1;
  r.details["gamma1"] = base.gamma1;
  r.details["q_plus"] = qplus;
  if (!(q < qplus)) {
    r.pass = false;
    r.worst_defect = qplus - q;
    r.details["refused"] = true;
    r.details["reason"] = "q >= q_plus: gamma1 only grows with lambda1, so no lambda1 satisfies the exponent condition";
    return r;
  }
  // exponent condition gamma(p-1) + ps > q gamma  <=>  gamma < ps / (q - p + 1)
  const double gstar = ps / (q - p + 1.0);
  const double target = base.gamma1 + 0.5 * (std::min(gstar, w.gamma0()) - base.gamma1);
  const double lam1 = lambda_folded(target, w, P, cfg).value;
  RootPair r1 = gamma_roots(lam1, w, P, 1e-10, cfg);
  const double g = r1.gamma1;
  const double e = g * (p - 1.0) + ps - q * g;
  const double C = std::pow((lam1 - lam) * std::pow(spec.domain_radius, -e), 1.0 / (q - p + 1.0));
  double worst = kInf;
  for (int i = 0; i <= 20; ++i) {
    double rad = spec.domain_radius * std::pow(2.0, -i);
    double lhs = (lam1 - lam) * std::pow(C, p - 1.0) * std::pow(rad, -g * (p - 1.0) - ps);
    double rhs = std::pow(C, q) * std::pow(rad, -g * q);
    worst = std::min(worst, (lhs - rhs) / lhs);
  }
  r.worst_defect = std::min(e, worst);
  r.pass = lam1 > lam && lam1 < L0 && e > 0.0 && worst >= -1e-12;
  r.empirical_constant = C;
  r.details["lambda1"] = lam1;
  r.details["gamma1_lambda1"] = g;
  r.details["exponent_margin"] = e;
  r.details["scaling_constant"] = C;
  r.details["pointwise_worst_relative"] = worst;
  r.details["regime"] = "subcritical";
  return r;
}

VerificationReport nonexistence_witness(const ProblemSpec& spec, const FracParams& P, const QuadratureConfig& cfg) {
  const double p = P.p(), ps = P.ps(), q = spec.q;
  Weight w(0.0, P);
  RootPair base = gamma_roots(spec.lambda, w, P, 1e-10, cfg);
  const double qplus = p - 1.0 + ps / base.gamma1;
  if (!(q > qplus)) throw DomainError("nonexistence witness needs q > q_plus");
  VerificationReport r;
  r.check = "nonexistence";
  r.trials = 8;
  r.params = params_json(P);
  r.params["lambda"] = spec.lambda;
  r.params["q"] = q;
  r.params["domain_radius"] = spec.domain_radius;
  const double gap = base.gamma1 * (q - p + 1.0) - ps;
  const double eps = 0.25 * gap / (q - p + 1.0);
  const double rho = 0.5 * gap;
  const double lhs = (base.gamma1 - eps) * (q - (p - 1.0));
  RadialProfile phi = reference_bump();
  std::vector<double> ratios, growth;
  for (int k = 1; k <= 8; ++k) {
    RadialProfile pk = phi.dilated(std::pow(2.0, -k));
    double num = weighted_lp_norm(pk, ps + rho, p, P, cfg).value;
    double den = weighted_seminorm(pk, 0.0, P.s(), P, cfg).value;
    ratios.push_back(num / den);
  }
  const double predicted = std::pow(2.0, rho);
  double worst = kInf;
  bool monotone = true;
  for (size_t k = 1; k < ratios.size(); ++k) {
    growth.push_back(ratios[k] / ratios[k - 1]);
    if (!(ratios[k] > ratios[k - 1])) monotone = false;
    worst = std::min(worst, 0.2 - std::fabs(growth.back() / predicted - 1.0));
  }
  r.pass = rho > 0.0 && lhs > ps + rho && monotone && worst >= 0.0;
  r.worst_defect = worst;
  r.empirical_constant = growth.back();
  r.details = {{"gamma1", base.gamma1},  {"q_plus", qplus},       {"epsilon", eps},
               {"rho", rho}, {"witness_lhs", lhs}, {"witness_rhs", ps + rho},
               {"ratios", ratios}, {"growth", growth},
               {"predicted_growth", predicted}, {"regime", "supercritical"}};
  return r;
}

}  // namespace fracckn
