#pragma once

#include <optional>
#include <string>
#include <variant>

namespace seqlab {

/// C(s) = s^beta, beta > 1.
struct PowerCost {
  double beta;
};

/// C(s) = c s / (g - s) on [0, g).
struct TimeBoostCost {
  double c;
  double g;
};

inline constexpr double kMinBeta = 1.0 + 1e-6;

class CostModel {
 public:
  using Family = std::variant<PowerCost, TimeBoostCost>;

  /// Validates parameters and the cap; throws ParameterError.
  explicit CostModel(Family family, std::optional<double> cap = std::nullopt);

  static CostModel power(double beta, std::optional<double> cap = std::nullopt) {
    return CostModel(PowerCost{beta}, cap);
  }
  static CostModel timeBoost(double c, double g, std::optional<double> cap = std::nullopt) {
    return CostModel(TimeBoostCost{c, g}, cap);
  }

  const Family& family() const noexcept { return family_; }
  const std::optional<double>& cap() const noexcept { return cap_; }
  CostModel withCap(std::optional<double> cap) const { return CostModel(family_, cap); }

  bool isPower() const noexcept { return std::holds_alternative<PowerCost>(family_); }
  bool isTimeBoost() const noexcept { return std::holds_alternative<TimeBoostCost>(family_); }

  /// Supremum of admissible signals ignoring the cap (g for TimeBoost, +inf for Power).
  double domainUpper() const noexcept;
  /// Largest admissible signal including the cap; for TimeBoost without a
  /// cap this is g pulled inside the open domain.
  double maxAdmissibleSignal() const noexcept;

 private:
  Family family_;
  std::optional<double> cap_;
};

/// C(s). Throws DomainError for s < 0, s >= g (TimeBoost) or s > cap.
double cost(const CostModel& model, double s);

/// C'(s). Same domain rules as cost.
double marginalCost(const CostModel& model, double s);

struct InverseMarginal {
  double signal = 0.0;
  /// True when m is below the marginal cost at s = 0 and the answer is the corner 0.
  bool corner = false;
};

/// Unique s with C'(s) = m, ignoring the cap. Throws ParameterError for m <= 0.
InverseMarginal inverseMarginalCost(const CostModel& model, double m);

}  // namespace seqlab
