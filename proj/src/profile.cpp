#include "fracckn/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fracckn/errors.hpp"

namespace fracckn {

RadialProfile RadialProfile::sampled(std::vector<double> radii, std::vector<double> values) {
  if (radii.size() < 2 || radii.size() != values.size())
    throw DomainError("profile needs at least two radii and matching values");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw DomainError("profile radii must be positive and finite");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("profile radii must be strictly increasing");
    if (!std::isfinite(values[i])) throw DomainError("profile values must be finite");
  }
  if (values.back() != 0.0) throw DomainError("profile must vanish at its support radius (nonzero tail)");
  RadialProfile u;
  u.kind_ = Kind::Sampled;
  u.support_ = radii.back();
  u.radii_ = std::move(radii);
  u.values_ = std::move(values);
  return u;
}

RadialProfile RadialProfile::power_law(double gamma, double support_radius, double core_radius) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("power law needs gamma > 0");
  if (!(support_radius > 0.0) || !std::isfinite(support_radius)) throw DomainError("power law needs finite support");
  if (!(core_radius >= 0.0 && core_radius < support_radius)) throw DomainError("power law needs 0 <= core < support");
  RadialProfile u;
  u.kind_ = Kind::PowerLaw;
  u.gamma_ = gamma;
  u.support_ = support_radius;
  u.core_ = core_radius;
  return u;
}

double RadialProfile::base(double r) const {
  if (r >= support_) return 0.0;
  if (kind_ == Kind::PowerLaw) return std::pow(std::max(r, core_), -gamma_) - std::pow(support_, -gamma_);
  if (r <= radii_.front()) return values_.front();
  auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
  size_t j = static_cast<size_t>(it - radii_.begin());
  double r0 = radii_[j - 1], r1 = radii_[j];
  double w = (r - r0) / (r1 - r0);
  return values_[j - 1] + w * (values_[j] - values_[j - 1]);
}

double RadialProfile::operator()(double r) const {
  if (!(r > 0.0)) throw DomainError("profile evaluated at r <= 0");
  double b = base(r);
  if (b == 0.0) return 0.0;
  return power_ == 0.0 ? amp_ * b : amp_ * std::pow(r, power_) * b;
}

double RadialProfile::support_radius() const { return support_; }

bool RadialProfile::is_zero() const {
  if (amp_ == 0.0) return true;
  if (kind_ == Kind::PowerLaw) return false;
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

std::vector<double> RadialProfile::log_breaks() const {
  std::vector<double> b;
  if (kind_ == Kind::Sampled) {
    b.reserve(radii_.size());
    for (double r : radii_) b.push_back(std::log(r));
    return b;
  }
  const double top = std::log(support_);
  const double bot = core_ > 0.0 ? std::log(core_) : top - 8.0;
  const int n = std::max(4, static_cast<int>(std::ceil((top - bot) / 0.1)));
  for (int i = 0; i <= n; ++i) b.push_back(bot + (top - bot) * i / n);
  return b;
}

double RadialProfile::origin_exponent() const {
  if (kind_ == Kind::PowerLaw && core_ == 0.0) return power_ - gamma_;
  return power_;
}

RadialProfile RadialProfile::dilated(double R) const {
  if (!(R > 0.0)) throw DomainError("dilation factor must be positive");
  RadialProfile u = *this;
  u.support_ *= R;
  if (kind_ == Kind::Sampled) {
    for (double& r : u.radii_) r *= R;
  } else {
    u.core_ *= R;
    u.amp_ *= std::pow(R, gamma_);
  }
  if (power_ != 0.0) u.amp_ *= std::pow(R, -power_);
  return u;
}

RadialProfile RadialProfile::scaled(double c) const {
  RadialProfile u = *this;
  u.amp_ *= c;
  return u;
}

RadialProfile RadialProfile::times_power(double a) const {
  RadialProfile u = *this;
  u.power_ += a;
  return u;
}

RadialProfile RadialProfile::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open profile file " + path);
  std::vector<double> r, v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_of("0123456789") != 0 && line[0] != '.' && line[0] != '-' && line[0] != '+') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b;
    if (!(ss >> a >> b)) throw DomainError("malformed profile line: " + line);
    r.push_back(a);
    v.push_back(b);
  }
  return sampled(std::move(r), std::move(v));
}

RadialProfile RadialProfile::read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open profile file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad profile JSON: ") + e.what());
  }
  if (!j.contains("gamma") || !j.contains("support_radius"))
    throw DomainError("power-law descriptor needs gamma and support_radius");
  return power_law(j.at("gamma").get<double>(), j.at("support_radius").get<double>(), j.value("core_radius", 0.0));
}

RadialProfile RadialProfile::load(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".json") return read_json(path);
  return read_csv(path);
}

void RadialProfile::write_csv(const std::string& path) const {
  if (kind_ != Kind::Sampled) throw DomainError("only sampled profiles export to CSV");
  std::ofstream out(path);
  out.precision(17);
  out << "radius,value\n";
  for (size_t i = 0; i < radii_.size(); ++i) out << radii_[i] << ',' << (*this)(radii_[i]) << '\n';
}

std::string RadialProfile::to_json() const {
  if (kind_ != Kind::PowerLaw) throw DomainError("only power-law profiles have a JSON descriptor");
  nlohmann::json j;
  j["gamma"] = gamma_;
  j["support_radius"] = support_;
  if (core_ > 0.0) j["core_radius"] = core_;
  return j.dump();
}

}  // namespace fracckn
