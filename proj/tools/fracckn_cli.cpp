#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracckn/constants.hpp"
#include "fracckn/errors.hpp"
#include "fracckn/exponents.hpp"
#include "fracckn/radial.hpp"
#include "fracckn/verifier.hpp"

using namespace fracckn;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kInvalid = 2, kCritical = 3 };

struct Options {
  int N = 3;
  double p = 2.0;
  double s = 0.5;
  double beta = 0.0;
  std::optional<double> gamma, lambda, q;
  double rel_tol = 1e-8;
  std::uint64_t seed = 0;
  int trials = 50;
  std::string out;
  std::string profile;
  double gamma_min = 0.0;
  std::optional<double> gamma_max;
  int steps = 100;
  double radius = 1.0;
  std::string check;
};

class Emitter {
 public:
  explicit Emitter(const std::string& path) : path_(path) {}
  void text(const std::string& s) {
    if (path_.empty()) {
      std::cout << s;
      std::cout.flush();
      return;
    }
    std::ofstream f(path_);
    if (!f) throw DomainError("cannot write " + path_);
    f << s;
  }
  void json_out(const json& j) { text(j.dump(2) + "\n"); }

 private:
  std::string path_;
};

std::string num(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json base_params(const Options& o) { return {{"N", o.N}, {"s", o.s}, {"p", o.p}, {"beta", o.beta}}; }

int cmd_constants(const Options& o, const FracParams& P, const QuadratureConfig& cfg, Emitter& em) {
  Weight w(o.beta, P);
  ConstantResult lam = lambda_folded(w.gamma0(), w, P, cfg);
  ConstantResult hc = hardy_constant(w, P, cfg);
  json j{{"params", base_params(o)},
         {"gamma0", w.gamma0()},
         {"gamma_max", w.gamma_max()},
         {"lambda_gamma0", lam.value},
         {"hardy_constant", hc.value},
         {"abs_error", hc.abs_error}};
  if (o.gamma) {
    j["gamma"] = *o.gamma;
    j["lambda_gamma"] = lambda_folded(*o.gamma, w, P, cfg).value;
  }
  em.json_out(j);
  return kPass;
}

int cmd_curve(const Options& o, const FracParams& P, const QuadratureConfig& cfg, Emitter& em) {
  Weight w(o.beta, P);
  const double gmax = o.gamma_max.value_or(w.gamma_max());
  if (!(o.gamma_min >= 0.0 && o.gamma_min < gmax)) throw DomainError("curve needs 0 <= gamma-min < gamma-max");
  if (!(gmax < w.gamma_finite())) throw DomainError("Lambda diverges for gamma >= (N-beta)/(p-1)");
  if (o.steps < 1) throw DomainError("curve needs steps >= 1");
  std::ostringstream os;
  os << "gamma,lambda,lambda_prime\n";
  for (int i = 0; i <= o.steps; ++i) {
    double g = o.gamma_min + (gmax - o.gamma_min) * i / o.steps;
    double lam = g == 0.0 ? 0.0 : lambda_folded(g, w, P, cfg).value;
    double d = g == 0.0 && P.p() < 2.0 ? std::nan("") : lambda_derivative(g, w, P, cfg).value;
    os << num(g) << ',' << num(lam) << ',' << num(d) << '\n';
  }
  em.text(os.str());
  return kPass;
}

int cmd_exponents(const Options& o, const FracParams& P, const QuadratureConfig& cfg, Emitter& em) {
  if (!o.lambda) throw DomainError("exponents needs --lambda");
  Weight w(o.beta, P);
  RootPair r = gamma_roots(*o.lambda, w, P, 1e-10, cfg);
  ExponentSet e = sobolev_exponents(P, o.q.value_or(P.p()));
  json j{{"params", base_params(o)},
         {"lambda", *o.lambda},
         {"gamma1", r.gamma1},
         {"gamma2", r.gamma2},
         {"residual", r.residual},
         {"p_star_s", e.p_star_s},
         {"p_star_s_q", e.p_star_s_q}};
  j["q_plus"] = o.beta == 0.0 ? json(P.p() - 1.0 + P.ps() / r.gamma1) : json(nullptr);
  em.json_out(j);
  return kPass;
}

int emit_report(const VerificationReport& r, Emitter& em, const std::optional<std::string>& regime = {}) {
  json j = r.to_json();
  if (regime) j["regime"] = *regime;
  em.json_out(j);
  return r.pass ? kPass : kFail;
}

int cmd_verify(const Options& o, const FracParams& P, const QuadratureConfig& cfg, Emitter& em) {
  const std::string& c = o.check;
  if (o.trials < 0) throw DomainError("trials must be >= 0");
  if (c == "hardy") return emit_report(verify_hardy(o.trials, o.beta, P, o.seed, cfg), em);
  if (c == "improved-hardy")
    return emit_report(verify_improved_hardy(o.trials, o.q.value_or(P.p() - 0.5), P, o.seed, cfg), em);
  if (c == "ckn") return emit_report(verify_ckn(o.trials, o.beta, P, false, std::nullopt, o.seed, cfg), em);
  if (c == "ckn-bounded") {
    double q = o.q.value_or(0.5 * (1.0 + P.p()));
    return emit_report(verify_ckn(o.trials, 0.5 * (P.N() - P.ps()), P, true, q, o.seed, cfg), em);
  }
  if (c == "picone") return emit_report(verify_picone(o.trials, P, o.seed), em);
  if (c == "elementary") return emit_report(verify_elementary(o.trials, o.seed), em);
  if (c == "ground-state") return emit_report(verify_ground_state(o.trials, P, o.seed, cfg), em);
  if (c == "g1-identity") {
    RadialProfile u = o.profile.empty() ? tent_profile() : RadialProfile::load(o.profile);
    return emit_report(verify_g1_identity(u, o.beta, P, cfg), em);
  }
  if (c == "barrier") {
    Weight w(0.0, P);
    double lam = o.lambda.value_or(0.5 * lambda_folded(w.gamma0(), w, P, cfg).value);
    return emit_report(verify_truncation_barrier(lam, P, cfg), em);
  }
  if (c == "divergence") return emit_report(verify_divergence(o.beta, P, 6, cfg), em);
  throw DomainError("unknown check '" + c + "'");
}

int cmd_certify(const Options& o, const FracParams& P, const QuadratureConfig& cfg, Emitter& em) {
  if (!o.lambda || !o.q) throw DomainError("certify needs --lambda and --q");
  if (!(*o.q > P.p() - 1.0)) throw DomainError("certify needs q > p-1");
  const double qplus = critical_exponent_qplus(*o.lambda, P, 1e-10, cfg);
  ProblemSpec spec{*o.lambda, *o.q, o.radius};
  if (std::fabs(*o.q - qplus) <= 1e-6 * qplus) {
    json j{{"check", "certify"}, {"regime", "critical"}, {"q", *o.q}, {"q_plus", qplus}, {"params", base_params(o)}};
    em.json_out(j);
    std::cerr << "critical: q is within tolerance of q_plus, undecidable at tolerance\n";
    return kCritical;
  }
  if (*o.q < qplus) return emit_report(certify_supersolution(spec, P, cfg), em, "subcritical");
  return emit_report(nonexistence_witness(spec, P, cfg), em, "supercritical");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"fractional Hardy and CKN constants, exponents and verification campaigns"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto add_common = [&](CLI::App* a) {
    a->add_option("--N", o.N, "spatial dimension");
    a->add_option("--p", o.p, "integrability exponent");
    a->add_option("--s", o.s, "fractional order");
    a->add_option("--beta", o.beta, "weight exponent");
    a->add_option("--gamma", o.gamma, "power-law exponent");
    a->add_option("--lambda", o.lambda, "Hardy coefficient of the problem");
    a->add_option("--q", o.q, "nonlinearity or seminorm exponent");
    a->add_option("--rel-tol", o.rel_tol, "relative quadrature tolerance")->envname("FRACCKN_REL_TOL");
    a->add_option("--seed", o.seed, "random seed");
    a->add_option("--trials", o.trials, "campaign size");
    a->add_option("--out", o.out, "write output to this file instead of standard output");
  };
  add_common(&app);
  auto* constants = app.add_subcommand("constants", "gamma0, Lambda(gamma0) and the sharp Hardy constant");
  auto* curve = app.add_subcommand("curve", "CSV of gamma, Lambda(gamma), Lambda'(gamma)");
  curve->add_option("--gamma-min", o.gamma_min);
  curve->add_option("--gamma-max", o.gamma_max);
  curve->add_option("--steps", o.steps);
  auto* exponents = app.add_subcommand("exponents", "root pair, q_plus and Sobolev exponents");
  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->add_option("check", o.check, "hardy | improved-hardy | ckn | ckn-bounded | picone | elementary | "
                                       "ground-state | g1-identity | barrier | divergence")
      ->required();
  verify->add_option("--profile", o.profile, "CSV or power-law JSON profile for g1-identity");
  auto* certify = app.add_subcommand("certify", "supersolution certificate or nonexistence witness");
  certify->add_option("--radius", o.radius, "domain radius");
  for (auto* sub : {constants, curve, exponents, verify, certify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    FracParams P(o.N, o.s, o.p);
    QuadratureConfig cfg;
    cfg.rel_tol = o.rel_tol;
    cfg.validate();
    Emitter em(o.out);
    if (constants->parsed()) return cmd_constants(o, P, cfg, em);
    if (curve->parsed()) return cmd_curve(o, P, cfg, em);
    if (exponents->parsed()) return cmd_exponents(o, P, cfg, em);
    if (verify->parsed()) return cmd_verify(o, P, cfg, em);
    if (certify->parsed()) return cmd_certify(o, P, cfg, em);
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const ConvergenceError& e) {
    std::cerr << "quadrature failure: " << e.what() << " (partial " << e.partial() << ")\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kInvalid;
}
