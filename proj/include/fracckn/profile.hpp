#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace fracckn {

// compactly supported radial function, value = amplitude * r^power * base(r)
//   sampled:   base is piecewise-linear in r on the grid, constant below radii[0], 0 from support on
//   power law: base = (max(r, core)^{-gamma} - support^{-gamma})_+, core = 0 keeps the singularity symbolic
class RadialProfile {
 public:
  enum class Kind { Sampled, PowerLaw };

  // last radius is the support radius and its value must be 0
  static RadialProfile sampled(std::vector<double> radii, std::vector<double> values);
  static RadialProfile power_law(double gamma, double support_radius, double core_radius = 0.0);
  // geometric grid on [r_min, support] refined with extra points, values f(r); f(support) forced to 0
  template <class F>
  static RadialProfile from_function(F&& f, double r_min, double support, int n_geometric,
                                     const std::vector<double>& extra = {});

  static RadialProfile read_csv(const std::string& path);
  static RadialProfile read_json(const std::string& path);
  static RadialProfile load(const std::string& path);
  void write_csv(const std::string& path) const;
  std::string to_json() const;  // power-law descriptor only

  double operator()(double r) const;
  double support_radius() const;
  Kind kind() const { return kind_; }
  bool is_zero() const;

  // cell boundaries in log r, increasing, ending at log(support)
  std::vector<double> log_breaks() const;
  // u ~ C r^e as r -> 0
  double origin_exponent() const;

  RadialProfile dilated(double R) const;  // r -> u(r/R)
  RadialProfile scaled(double c) const;
  RadialProfile times_power(double a) const;  // r^a u(r)

  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& values() const { return values_; }
  double gamma() const { return gamma_; }
  double core_radius() const { return core_; }
  double amplitude() const { return amp_; }
  double power() const { return power_; }

 private:
  Kind kind_ = Kind::Sampled;
  std::vector<double> radii_, values_;
  double gamma_ = 0.0, core_ = 0.0, support_ = 0.0;
  double amp_ = 1.0, power_ = 0.0;
  double base(double r) const;
};

template <class F>
RadialProfile RadialProfile::from_function(F&& f, double r_min, double support, int n_geometric,
                                           const std::vector<double>& extra) {
  std::vector<double> r;
  r.reserve(n_geometric + extra.size() + 1);
  const double q = std::pow(support / r_min, 1.0 / (n_geometric - 1));
  double x = r_min;
  for (int i = 0; i < n_geometric; ++i, x *= q) r.push_back(i + 1 == n_geometric ? support : x);
  for (double e : extra)
    if (e > r_min && e < support) r.push_back(e);
  std::sort(r.begin(), r.end());
  std::vector<double> rr, v;
  for (double t : r) {
    if (!rr.empty() && t - rr.back() <= 1e-12 * t) continue;
    rr.push_back(t);
  }
  rr.back() = support;
  for (double t : rr) v.push_back(f(t));
  v.back() = 0.0;
  return sampled(std::move(rr), std::move(v));
}

}  // namespace fracckn
