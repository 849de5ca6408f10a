#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracckn/params.hpp"
#include "fracckn/profile.hpp"

namespace fracckn {

struct VerificationReport {
  std::string check;
  bool pass = false;
  double worst_defect = 0.0;
  std::optional<double> empirical_constant;
  int trials = 0;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json details = nlohmann::json::object();
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

struct ProblemSpec {
  double lambda;
  double q;
  double domain_radius = 1.0;
};

// mt19937_64 with a fixed bit-to-double map, identical on every platform
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::mt19937_64 g_;
};

// 1-3 smooth bumps, log-uniform widths over three decades, random signs; sampled on a graded grid
RadialProfile random_bump_profile(Rng& rng);
// deterministic smooth bump supported in [0, 1]
RadialProfile reference_bump();
// u = 1 - r on [0, 1]
RadialProfile tent_profile();

nlohmann::json params_json(const FracParams& params);

VerificationReport verify_hardy(int family_size, double beta, const FracParams& params, std::uint64_t seed,
                                const QuadratureConfig& cfg = {});
VerificationReport verify_improved_hardy(int family_size, double q, const FracParams& params, std::uint64_t seed,
                                         const QuadratureConfig& cfg = {});
VerificationReport verify_ckn(int family_size, double beta, const FracParams& params, bool bounded,
                              std::optional<double> q, std::uint64_t seed, const QuadratureConfig& cfg = {});
VerificationReport verify_ground_state(int family_size, const FracParams& params, std::uint64_t seed,
                                       const QuadratureConfig& cfg = {});
VerificationReport verify_g1_identity(const RadialProfile& u, double beta, const FracParams& params,
                                      const QuadratureConfig& cfg = {});
VerificationReport verify_picone(int samples, const FracParams& params, std::uint64_t seed);
VerificationReport verify_elementary(int samples, std::uint64_t seed);
VerificationReport verify_truncation_barrier(double lambda, const FracParams& params, const QuadratureConfig& cfg = {});
VerificationReport verify_divergence(double beta, const FracParams& params, int doublings = 6,
                                     const QuadratureConfig& cfg = {});

VerificationReport certify_supersolution(const ProblemSpec& spec, const FracParams& params,
                                         const QuadratureConfig& cfg = {});
VerificationReport nonexistence_witness(const ProblemSpec& spec, const FracParams& params,
                                        const QuadratureConfig& cfg = {});

}  // namespace fracckn
