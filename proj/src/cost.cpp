#include "seqlab/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "seqlab/errors.hpp"

namespace seqlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void checkDomain(const CostModel& model, double s) {
  if (!(s >= 0.0)) throw DomainError("signal must be >= 0, got " + std::to_string(s));
  if (model.cap() && s > *model.cap()) {
    throw DomainError("signal " + std::to_string(s) + " exceeds cap " +
                      std::to_string(*model.cap()));
  }
  if (const auto* tb = std::get_if<TimeBoostCost>(&model.family()); tb && s >= tb->g) {
    throw DomainError("TimeBoost signal must be < g = " + std::to_string(tb->g) + ", got " +
                      std::to_string(s));
  }
}

}  // namespace

CostModel::CostModel(Family family, std::optional<double> cap) : family_(family), cap_(cap) {
  std::visit(Overloaded{[](const PowerCost& p) {
                          if (!(std::isfinite(p.beta) && p.beta >= kMinBeta)) {
                            throw ParameterError("power cost requires beta >= 1 + 1e-6, got " +
                                                 std::to_string(p.beta));
                          }
                        },
                        [](const TimeBoostCost& t) {
                          if (!(std::isfinite(t.c) && t.c > 0.0)) {
                            throw ParameterError("timeboost c must be > 0, got " +
                                                 std::to_string(t.c));
                          }
                          if (!(std::isfinite(t.g) && t.g > 0.0)) {
                            throw ParameterError("timeboost g must be > 0, got " +
                                                 std::to_string(t.g));
                          }
                        }},
             family_);
  if (cap_) {
    if (!(std::isfinite(*cap_) && *cap_ >= 0.0)) {
      throw ParameterError("cap must be finite and >= 0, got " + std::to_string(*cap_));
    }
    if (const auto* tb = std::get_if<TimeBoostCost>(&family_); tb && *cap_ >= tb->g) {
      throw ParameterError("cap must be < g for timeboost cost");
    }
  }
}

double CostModel::domainUpper() const noexcept {
  if (const auto* tb = std::get_if<TimeBoostCost>(&family_)) return tb->g;
  return std::numeric_limits<double>::infinity();
}

double CostModel::maxAdmissibleSignal() const noexcept {
  if (cap_) return *cap_;
  if (const auto* tb = std::get_if<TimeBoostCost>(&family_)) return tb->g * (1.0 - 1e-9);
  return std::numeric_limits<double>::infinity();
}

double cost(const CostModel& model, double s) {
  checkDomain(model, s);
  return std::visit(Overloaded{[s](const PowerCost& p) { return std::pow(s, p.beta); },
                               [s](const TimeBoostCost& t) { return t.c * s / (t.g - s); }},
                    model.family());
}

double marginalCost(const CostModel& model, double s) {
  checkDomain(model, s);
  return std::visit(
      Overloaded{[s](const PowerCost& p) { return p.beta * std::pow(s, p.beta - 1.0); },
                 [s](const TimeBoostCost& t) { return t.c * t.g / ((t.g - s) * (t.g - s)); }},
      model.family());
}

InverseMarginal inverseMarginalCost(const CostModel& model, double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw ParameterError("marginal cost level must be finite and > 0, got " + std::to_string(m));
  }
  return std::visit(
      Overloaded{[m](const PowerCost& p) {
                   return InverseMarginal{std::pow(m / p.beta, 1.0 / (p.beta - 1.0)), false};
                 },
                 [m](const TimeBoostCost& t) {
                   if (m < t.c / t.g) return InverseMarginal{0.0, true};
                   return InverseMarginal{std::max(0.0, t.g - std::sqrt(t.c * t.g / m)), false};
                 }},
      model.family());
}

}  // namespace seqlab
