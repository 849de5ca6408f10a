#include "fracckn/radial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/special_functions/legendre.hpp>

#include "fracckn/errors.hpp"
#include "fracckn/exponents.hpp"
#include "fracckn/kernel_table.hpp"
#include "quad.hpp"

namespace fracckn {
namespace {

struct Rule {
  std::vector<double> x, w;  // Gauss-Legendre on [0, 1]
};

const Rule& gauss_rule(int n) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Rule r;
  for (double z : boost::math::legendre_p_zeros<double>(n)) {
    double d = boost::math::legendre_p_prime(n, z);
    double w = 1.0 / ((1.0 - z * z) * d * d);
    r.x.push_back(0.5 * (1.0 - z));
    r.w.push_back(w);
    if (z != 0.0) {
      r.x.push_back(0.5 * (1.0 + z));
      r.w.push_back(w);
    }
  }
  std::vector<size_t> idx(r.x.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return r.x[a] < r.x[b]; });
  Rule s;
  for (size_t i : idx) {
    s.x.push_back(r.x[i]);
    s.w.push_back(r.w[i]);
  }
  return cache.emplace(n, std::move(s)).first->second;
}

// log-r cell boundaries: profile breaks plus geometric cells below, long enough for e^{kappa x} decay
std::vector<double> cell_breaks(const RadialProfile& u, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("integral diverges at the origin for this profile and weight");
  std::vector<double> b = u.log_breaks();
  const double lo = b.front() - 40.0 / kappa;
  const double cap = std::max(b[1] - b[0], 2.0 / kappa);
  std::vector<double> ext;
  double w = b[1] - b[0], x = b.front();
  while (x > lo) {
    x -= w;
    ext.push_back(x);
    w = std::min(1.5 * w, cap);
  }
  std::reverse(ext.begin(), ext.end());
  ext.insert(ext.end(), b.begin(), b.end());
  return ext;
}

bool constant_near_origin(const RadialProfile& u) {
  if (u.power() != 0.0) return false;
  return u.kind() == RadialProfile::Kind::Sampled || u.core_radius() > 0.0;
}

// sigmoidal map on [0,1], clusters nodes at both ends
inline void sigmoid(double v, double& phi, double& dphi) {
  double a = v * v, b = (1.0 - v) * (1.0 - v), d = a + b;
  phi = a / d;
  dphi = 2.0 * v * (1.0 - v) / (d * d);
}

class PairEngine {
 public:
  PairEngine(const RadialProfile& u, int N, double beta, double sp, double p, double domain_radius,
             const QuadratureConfig& cfg)
      : u_(u), N_(N), beta_(beta), sp_(sp), p_(p), c_(N - 2.0 * beta - sp) {
    KernelOrder ko{N, sp};
    kt_ = KernelTable::shared(ko, cfg);
    mt_ = KernelMomentTable::shared(ko, N - 1.0 - beta, cfg);
    if (std::isinf(domain_radius) && !mt_->integrable_at_infinity())
      throw DomainError("weighted seminorm diverges at infinity for beta <= -order*p");
    log_d_ = std::log(domain_radius);
    double kappa = N - beta;
    if (!constant_near_origin(u)) kappa = std::min(kappa, c_ + u.origin_exponent() * p);
    b_ = cell_breaks(u, kappa);
    top_ = b_.back();
  }

  double run(int n, std::int64_t& evals) const {
    const Rule& g = gauss_rule(n);
    const size_t M = b_.size() - 1;
    std::vector<std::vector<double>> Y(M), WY(M), UY(M);
    for (size_t j = 0; j < M; ++j) {
      double h = b_[j + 1] - b_[j];
      for (int k = 0; k < n; ++k) {
        double y = b_[j] + h * g.x[k];
        Y[j].push_back(y);
        WY[j].push_back(h * g.w[k]);
        UY[j].push_back(U(y));
      }
    }
    const double m = std::ceil(p_ - sp_) / (p_ - sp_);
    double total = 0.0;
    for (size_t i = 0; i < M; ++i) {
      const double h = b_[i + 1] - b_[i];
      for (int k = 0; k < n; ++k) {
        double phi, dphi;
        sigmoid(g.x[k], phi, dphi);
        const double x = b_[i] + h * phi;
        const double wx = h * dphi * g.w[k];
        const double ux = U(x);
        double inner = 0.0;
        const double T = b_[i + 1] - x;
        for (int l = 0; l < n; ++l) {
          double vm = std::pow(g.x[l], m);
          double t = T * vm;
          inner += g.w[l] * m * vm / g.x[l] * T * F(t) * std::pow(std::fabs(ux - U(x + t)), p_);
        }
        evals += n;
        for (size_t j = i + 1; j < M; ++j) {
          const double ta = b_[j] - x, tb = b_[j + 1] - x;
          if (ta >= tb - ta) {
            for (int l = 0; l < n; ++l) {
              double d = std::fabs(ux - UY[j][l]);
              if (d == 0.0) continue;
              inner += WY[j][l] * F(Y[j][l] - x) * std::pow(d, p_);
              ++evals;
            }
            continue;
          }
          double a = ta;
          while (a < tb) {
            double e = std::min(2.0 * a, tb);
            if (tb - e < 0.25 * (e - a)) e = tb;
            for (int l = 0; l < n; ++l) {
              double t = a + (e - a) * g.x[l];
              double d = std::fabs(ux - U(x + t));
              if (d == 0.0) continue;
              inner += (e - a) * g.w[l] * F(t) * std::pow(d, p_);
              ++evals;
            }
            a = e;
          }
        }
        double tail = 0.0;
        if (ux != 0.0 && log_d_ > top_) tail = std::pow(std::fabs(ux), p_) * mt_->between(top_ - x, log_d_ - x);
        total += wx * std::exp(c_ * x) * (inner + tail);
      }
    }
    return 2.0 * sphere_area(N_) * total;
  }

 private:
  const RadialProfile& u_;
  int N_;
  double beta_, sp_, p_, c_;
  double log_d_ = 0.0, top_ = 0.0;
  std::shared_ptr<const KernelTable> kt_;
  std::shared_ptr<const KernelMomentTable> mt_;
  std::vector<double> b_;

  double U(double x) const { return u_(std::exp(x)); }
  double F(double t) const { return std::exp(t * (N_ - beta_) + kt_->log_above(t)); }
};

int coarse_points(int n) { return std::max(3, static_cast<int>(std::lround(0.6 * n))); }

QuotientValue make_quotient(const ConstantResult& num, const ConstantResult& den) {
  if (!(den.value > 0.0)) throw DomainError("quotient denominator vanishes");
  return {num, den, num.value / den.value};
}

// int_0^inf [g(t) + g(-t)] dt for integrands with at worst t^{-1-sp+p-1} behaviour at 0 on each side;
// below tc the paired sum is replaced by its leading power c t^{k}
template <class G>
double paired_log_integral(G&& g, double k, double tol, detail::Tally& t) {
  const double tc = 1e-6;
  auto sum = [&](double x) { return g(x) + g(-x); };
  double head = sum(tc) * tc / (k + 1.0);
  t.value += head;
  detail::tanh_sinh([&](double y) { double x = std::exp(y); return sum(x) * x; }, std::log(tc), 0.0, tol, t);
  detail::exp_sinh([&](double v) { return sum(1.0 + v); }, tol, t);
  return t.value;
}

}  // namespace

ConstantResult weighted_seminorm(const RadialProfile& u, double beta, double order, const FracParams& params,
                                 const QuadratureConfig& cfg, double domain_radius) {
  if (!(order > 0.0 && order < 1.0)) throw DomainError("seminorm order must lie in (0,1)");
  if (!(domain_radius >= u.support_radius())) throw DomainError("domain radius must contain the profile support");
  if (u.is_zero()) return {};
  PairEngine eng(u, params.N(), beta, order * params.p(), params.p(), domain_radius, cfg);
  ConstantResult r;
  double fine = eng.run(cfg.panel_points, r.evaluations);
  double coarse = eng.run(coarse_points(cfg.panel_points), r.evaluations);
  r.value = fine;
  r.abs_error = std::fabs(fine - coarse);
  return r;
}

ConstantResult weighted_lp_norm(const RadialProfile& u, double weight_exponent, double exponent,
                                const FracParams& params, const QuadratureConfig& cfg) {
  if (!(exponent >= 1.0)) throw DomainError("norm exponent must be >= 1");
  if (u.is_zero()) return {};
  const int N = params.N();
  double kappa = N - weight_exponent;
  if (!constant_near_origin(u)) kappa += u.origin_exponent() * exponent;
  std::vector<double> b = cell_breaks(u, kappa);
  detail::Tally t;
  const double tol = std::min(1e-10, cfg.rel_tol);
  for (size_t j = 0; j + 1 < b.size(); ++j)
    detail::tanh_sinh(
        [&](double x) { return std::pow(std::fabs(u(std::exp(x))), exponent) * std::exp(x * (N - weight_exponent)); },
        b[j], b[j + 1], tol, t);
  ConstantResult r = t.result();
  r.value *= sphere_area(N);
  r.abs_error *= sphere_area(N);
  return r;
}

QuotientValue hardy_quotient(const RadialProfile& u, double beta, const FracParams& params,
                             const QuadratureConfig& cfg) {
  if (u.is_zero()) throw DomainError("quotient of the zero profile");
  auto num = weighted_seminorm(u, beta, params.s(), params, cfg);
  auto den = weighted_lp_norm(u, params.ps() + 2.0 * beta, params.p(), params, cfg);
  return make_quotient(num, den);
}

namespace {
QuotientValue ckn_with(const RadialProfile& u, double beta, double pstar, const FracParams& params,
                       const QuadratureConfig& cfg) {
  if (u.is_zero()) throw DomainError("quotient of the zero profile");
  const double p = params.p();
  auto num = weighted_seminorm(u, beta, params.s(), params, cfg);
  auto nrm = weighted_lp_norm(u, 2.0 * beta * pstar / p, pstar, params, cfg);
  ConstantResult den = nrm;
  den.value = std::pow(nrm.value, p / pstar);
  den.abs_error = nrm.value > 0.0 ? den.value * (p / pstar) * nrm.abs_error / nrm.value : 0.0;
  return make_quotient(num, den);
}
}  // namespace

QuotientValue ckn_quotient(const RadialProfile& u, double beta, const FracParams& params,
                           const QuadratureConfig& cfg) {
  if (!(beta < 0.5 * (params.N() - params.ps()))) throw DomainError("CKN quotient needs beta < (N-ps)/2");
  return ckn_with(u, beta, sobolev_exponents(params, params.p()).p_star_s, params, cfg);
}

QuotientValue ckn_bounded_quotient(const RadialProfile& u, double q, const FracParams& params,
                                   const QuadratureConfig& cfg) {
  if (!(q > 1.0 && q < params.p())) throw DomainError("bounded CKN quotient needs 1 < q < p");
  const double beta = 0.5 * (params.N() - params.ps());
  return ckn_with(u, beta, sobolev_exponents(params, q).p_star_s_q, params, cfg);
}

RadialProfile ground_state_transform(const RadialProfile& u, const FracParams& params) {
  return u.times_power((params.N() - params.ps()) / params.p());
}

ConstantResult ground_state_remainder(const RadialProfile& u, const FracParams& params,
                                      const QuadratureConfig& cfg) {
  if (u.is_zero()) throw DomainError("ground-state remainder of the zero profile");
  auto lam = hardy_constant(Weight(0.0, params), params, cfg);
  auto sem = weighted_seminorm(u, 0.0, params.s(), params, cfg);
  auto nrm = weighted_lp_norm(u, params.ps(), params.p(), params, cfg);
  ConstantResult r;
  r.value = sem.value - lam.value * nrm.value;
  r.abs_error = sem.abs_error + lam.value * nrm.abs_error + lam.abs_error * nrm.value;
  r.evaluations = sem.evaluations + nrm.evaluations + lam.evaluations;
  return r;
}

OperatorCheck power_law_operator_check(double gamma, double beta, const std::vector<double>& r_points,
                                       const FracParams& params, const QuadratureConfig& cfg) {
  Weight w(beta, params);
  if (!(gamma > 0.0)) throw DomainError("operator check needs gamma > 0");
  if (!(gamma < w.gamma_finite())) throw DomainError("operator diverges for this gamma");
  const int N = params.N();
  const double p = params.p(), ps = params.ps();
  auto kt = KernelTable::shared(kernel_order(params), cfg);
  OperatorCheck out;
  out.lambda = lambda_folded(gamma, w, params, cfg).value;
  for (double r : r_points) {
    if (!(r > 0.0)) throw DomainError("operator check radii must be positive");
    const double pref = std::pow(r, -beta - N - ps) * std::pow(r, N - beta);
    const double rg = std::pow(r, -gamma);
    auto g = [&](double t) {
      if (t > 0.0) {
        double diff = rg * -std::expm1(-gamma * t);
        return pref * std::pow(diff, p - 1.0) * std::exp(t * (N - beta) + kt->log_above(t));
      }
      double a = -t, d = -std::expm1(-a);
      double diff = rg * std::expm1(gamma * a);
      double k = kt->scaled_below(d) * std::pow(d, -1.0 - ps);
      return -pref * std::pow(diff, p - 1.0) * std::exp(-a * (N - beta)) * k;
    };
    detail::Tally t;
    double v = paired_log_integral(g, p - 1.0 - ps, 1e-11, t);
    double pred = out.lambda * std::pow(r, -gamma * (p - 1.0) - ps - 2.0 * beta);
    out.radii.push_back(r);
    out.operator_values.push_back(v);
    out.predicted.push_back(pred);
    out.worst_defect = std::max(out.worst_defect, std::fabs(v - pred) / std::fabs(pred));
  }
  return out;
}

OptimalityCertificate optimality_certificate(double n, const Weight& w, const FracParams& params,
                                             const QuadratureConfig& cfg) {
  if (!(n >= 2.0)) throw DomainError("optimality certificate needs n >= 2");
  const int N = params.N();
  const double p = params.p(), ps = params.ps(), beta = w.beta(), g0 = w.gamma0();
  OptimalityCertificate c;
  c.n = n;
  c.w_n = RadialProfile::power_law(g0, n, 1.0);
  c.quotient = hardy_quotient(c.w_n, beta, params, cfg);
  const double a = -std::expm1(-g0 * std::log(n));
  const double ng = std::pow(n, -g0);
  const double e = N - ps - 2.0 * beta;
  const double S = sphere_area(N);
  detail::Tally ti, tj;
  detail::exp_sinh(
      [&](double v) {
        double w0 = std::exp(g0 * v);
        return a * (std::pow(w0, p - 1.0) - std::pow(a, p - 1.0)) * std::exp(-v * e);
      },
      1e-12, ti);
  detail::tanh_sinh(
      [&](double x) {
        double w0 = std::exp(-g0 * x);
        double wn = w0 - ng;
        return wn * (std::pow(w0, p - 1.0) - std::pow(std::max(wn, 0.0), p - 1.0)) * std::exp(x * e);
      },
      0.0, std::log(n), 1e-12, tj);
  c.I_n = S * ti.value;
  c.J_n = S * tj.value;
  c.C_n = (c.I_n + c.J_n) / c.quotient.denominator.value;
  c.lower = hardy_constant(w, params, cfg).value;
  c.upper = c.lower * (1.0 + c.C_n);
  const QuotientValue& q = c.quotient;
  double slack = q.ratio * (q.numerator.abs_error / q.numerator.value + q.denominator.abs_error / q.denominator.value);
  slack = 10.0 * slack + 1e-6 * c.lower;
  c.certified = q.ratio >= c.lower - slack && q.ratio <= c.upper + slack;
  return c;
}

ConstantResult g1_integral(const RadialProfile& u, double beta, const FracParams& params,
                           const QuadratureConfig& cfg) {
  if (beta == 0.0) return {};
  if (!(beta < params.ps())) throw DomainError("g1 integral diverges unless beta < ps");
  if (u.is_zero()) return {};
  const int N = params.N();
  const double p = params.p(), ps = params.ps(), a = 2.0 * beta / p;
  auto kt = KernelTable::shared(kernel_order(params), cfg);
  // inner integral over y at radius r, in rho = r e^{+-t}
  auto inner = [&](double r, detail::Tally& t) {
    const double ra = std::pow(r, a), pref = std::pow(r, -N - ps);
    auto g = [&](double s) {
      if (s > 0.0) {
        double d = ra * std::expm1(a * s);
        return pref * std::pow(std::fabs(d), p) * std::pow(r, N - beta) * std::exp(s * (N - beta) + kt->log_above(s));
      }
      double x = -s, dd = -std::expm1(-x);
      double d = ra * -std::expm1(-a * x);
      double k = kt->scaled_below(dd) * std::pow(dd, -1.0 - ps);
      return pref * std::pow(std::fabs(d), p) * std::pow(r, N - beta) * std::exp(-x * (N - beta)) * k;
    };
    detail::Tally local;
    double v = paired_log_integral(g, p - 1.0 - ps, 1e-10, local);
    t.evals += local.evals;
    return v;
  };
  double kappa = N - 2.0 * beta - ps;
  if (!constant_near_origin(u)) kappa += u.origin_exponent() * p;
  std::vector<double> b = cell_breaks(u, kappa);
  detail::Tally t;
  auto level = [&](int n) {
    const Rule& g = gauss_rule(n);
    double total = 0.0;
    for (size_t i = 0; i + 1 < b.size(); ++i) {
      double h = b[i + 1] - b[i];
      for (int k = 0; k < n; ++k) {
        double phi, dphi;
        sigmoid(g.x[k], phi, dphi);
        double x = b[i] + h * phi, r = std::exp(x);
        double ur = u(r);
        if (ur == 0.0) continue;
        total += h * dphi * g.w[k] * std::pow(std::fabs(ur), p) * std::exp(x * (N - 3.0 * beta)) * inner(r, t);
      }
    }
    return sphere_area(N) * total;
  };
  double fine = level(cfg.panel_points);
  double coarse = level(coarse_points(cfg.panel_points));
  return {fine, std::fabs(fine - coarse), t.evals};
}

}  // namespace fracckn
