#include "seqlab/noise.hpp"

#include <boost/math/distributions/laplace.hpp>
#include <boost/math/distributions/logistic.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/uniform.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "seqlab/errors.hpp"

namespace seqlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

// Boost distribution object matching the Delta law of each family.
auto asBoost(const NormalNoise& n) { return boost::math::normal_distribution<>(0.0, n.sigma); }
auto asBoost(const LogisticNoise& n) {
  return boost::math::logistic_distribution<>(0.0, n.scale);
}
auto asBoost(const LaplaceNoise& n) { return boost::math::laplace_distribution<>(0.0, n.scale); }
auto asBoost(const UniformNoise& n) {
  return boost::math::uniform_distribution<>(-n.halfWidth, n.halfWidth);
}

}  // namespace

NoiseModel::NoiseModel(Family family) : family_(family) {
  const double p = parameter();
  if (!(std::isfinite(p) && p > 0.0)) {
    throw ParameterError(familyName() + " noise parameter must be finite and > 0, got " +
                         std::to_string(p));
  }
}

double NoiseModel::parameter() const noexcept {
  return std::visit(Overloaded{[](const NormalNoise& n) { return n.sigma; },
                               [](const LogisticNoise& n) { return n.scale; },
                               [](const LaplaceNoise& n) { return n.scale; },
                               [](const UniformNoise& n) { return n.halfWidth; }},
                    family_);
}

NoiseModel NoiseModel::withParameter(double p) const {
  return std::visit(
      [p](auto f) -> NoiseModel {
        using F = decltype(f);
        return NoiseModel(F{p});
      },
      family_);
}

std::string NoiseModel::familyName() const {
  return std::visit(Overloaded{[](const NormalNoise&) { return "normal"; },
                               [](const LogisticNoise&) { return "logistic"; },
                               [](const LaplaceNoise&) { return "laplace"; },
                               [](const UniformNoise&) { return "uniform"; }},
                    family_);
}

double NoiseModel::supportUpper() const noexcept {
  if (const auto* u = std::get_if<UniformNoise>(&family_)) return u->halfWidth;
  return std::numeric_limits<double>::infinity();
}

double densityAtZero(const NoiseModel& model) {
  // Exact closed forms; avoids any quadrature or library rounding at the mode.
  return std::visit(
      Overloaded{[](const NormalNoise& n) { return std::numbers::inv_sqrtpi / (std::numbers::sqrt2 * n.sigma); },
                 [](const LogisticNoise& n) { return 1.0 / (4.0 * n.scale); },
                 [](const LaplaceNoise& n) { return 1.0 / (2.0 * n.scale); },
                 [](const UniformNoise& n) { return 1.0 / (2.0 * n.halfWidth); }},
      model.family());
}

double density(const NoiseModel& model, double x) {
  return std::visit(
      [x](const auto& f) {
        const auto d = asBoost(f);
        if (x < boost::math::range(d).first || x > boost::math::range(d).second) return 0.0;
        return boost::math::pdf(d, x);
      },
      model.family());
}

double cdf(const NoiseModel& model, double x) {
  if (x == 0.0) return 0.5;
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return std::visit(
      [x](const auto& f) {
        const auto d = asBoost(f);
        const auto [lo, hi] = boost::math::support(d);
        if (x <= lo) return 0.0;
        if (x >= hi) return 1.0;
        // Evaluate the lower tail directly and mirror, which keeps full
        // relative precision for large |x|.
        if (x < 0) return boost::math::cdf(d, x);
        return boost::math::cdf(boost::math::complement(d, -x));
      },
      model.family());
}

double quantile(const NoiseModel& model, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile requires p in (0, 1), got " + std::to_string(p));
  }
  if (p == 0.5) return 0.0;
  return std::visit([p](const auto& f) { return boost::math::quantile(asBoost(f), p); },
                    model.family());
}

double sampleDelta(const NoiseModel& model, std::uint64_t seed, std::uint64_t index) {
  return quantile(model, openUniform(DrawIndex{seed, index, 0, 0}));
}

bool hasPerTraderLaw(const NoiseModel& model) noexcept {
  return !std::holds_alternative<UniformNoise>(model.family());
}

double samplePerTrader(const NoiseModel& model, double u) {
  return std::visit(
      Overloaded{
          [u](const NormalNoise& n) {
            return boost::math::quantile(
                boost::math::normal_distribution<>(0.0, n.sigma / std::numbers::sqrt2), u);
          },
          // Gumbel(0, s): F(x) = exp(-exp(-x/s)).
          [u](const LogisticNoise& n) { return -n.scale * std::log(-std::log(u)); },
          // Exponential with mean b, via the upper tail to keep precision near u = 1.
          [u](const LaplaceNoise& n) { return -n.scale * std::log(u); },
          [](const UniformNoise&) -> double {
            throw UnsupportedFamilyError("uniform Delta has no per-trader decomposition");
          }},
      model.family());
}

}  // namespace seqlab
