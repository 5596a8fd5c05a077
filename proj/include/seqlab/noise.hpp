#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "seqlab/rng.hpp"

namespace seqlab {

// Distribution of the per-chain noise difference Delta = eps_i - eps_j.
// Every family is symmetric around 0 and uni-modal.
struct NormalNoise {
  double sigma;
};
struct LogisticNoise {
  double scale;
};
struct LaplaceNoise {
  double scale;
};
struct UniformNoise {
  double halfWidth;
};

class NoiseModel {
 public:
  using Family = std::variant<NormalNoise, LogisticNoise, LaplaceNoise, UniformNoise>;

  /// Throws ParameterError unless the family parameter is finite and > 0.
  explicit NoiseModel(Family family);

  static NoiseModel normal(double sigma) { return NoiseModel(NormalNoise{sigma}); }
  static NoiseModel logistic(double scale) { return NoiseModel(LogisticNoise{scale}); }
  static NoiseModel laplace(double scale) { return NoiseModel(LaplaceNoise{scale}); }
  static NoiseModel uniform(double halfWidth) { return NoiseModel(UniformNoise{halfWidth}); }

  const Family& family() const noexcept { return family_; }
  /// The single scale-like parameter of the family.
  double parameter() const noexcept;
  /// Same family, different parameter.
  NoiseModel withParameter(double p) const;
  /// "normal", "logistic", "laplace" or "uniform".
  std::string familyName() const;
  bool isNormal() const noexcept { return std::holds_alternative<NormalNoise>(family_); }

  /// Support of Delta; infinite for every family except Uniform.
  double supportUpper() const noexcept;

 private:
  Family family_;
};

double densityAtZero(const NoiseModel& model);
double density(const NoiseModel& model, double x);
double cdf(const NoiseModel& model, double x);
/// Inverse CDF for p in (0, 1).
double quantile(const NoiseModel& model, double p);

/// One draw of Delta addressed by (seed, index). Pure in its arguments.
double sampleDelta(const NoiseModel& model, std::uint64_t seed, std::uint64_t index);

/// Per-trader noise draw for the simulator. The law is chosen so that the
/// difference of two independent draws has exactly the model's Delta law:
///   Normal(sigma)   -> N(0, sigma / sqrt 2)
///   Logistic(s)     -> Gumbel(0, s)
///   Laplace(b)      -> Exponential(mean b)
///   Uniform(h)      -> none exists; see hasPerTraderLaw
double samplePerTrader(const NoiseModel& model, double u);
bool hasPerTraderLaw(const NoiseModel& model) noexcept;

}  // namespace seqlab
