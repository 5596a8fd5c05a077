#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "seqlab/cost.hpp"
#include "seqlab/equilibrium.hpp"
#include "seqlab/noise.hpp"

namespace seqlab {

/// FCFS latency spend is deadweight waste; bid spend is protocol revenue.
enum class Interpretation { Waste, Revenue };

std::string toString(Interpretation i);

/// Waste for an uncapped power cost (latency race), revenue otherwise.
Interpretation defaultInterpretation(const CostModel& cost);

/// Participation thresholds as printed for the closed-form propositions,
/// side by side with the direct check v 2^-n - n C(s0) >= 0 on the
/// uncapped first-order candidate s0.
struct ParticipationThresholds {
  bool available = false;  ///< false for alpha < 1
  std::string rule;        ///< human-readable form of the displayed inequality
  double sharedBound = 0.0;
  double separateBound = 0.0;
  bool sharedDisplayedHolds = false;
  bool separateDisplayedHolds = false;
  bool sharedDirectHolds = false;
  bool separateDirectHolds = false;
};

ParticipationThresholds participationThresholds(double v, const CostModel& cost, double f0);

struct ComparisonReport {
  EquilibriumResult sharedResult;
  EquilibriumResult separateResult;
  double sharedTotalExpenditure = 0.0;    ///< both traders, shared sequencer
  double separateTotalExpenditure = 0.0;  ///< both traders, separate sequencers
  std::optional<double> expenditureRatio;  ///< shared / separate; empty when separate is 0
  Interpretation interpretation = Interpretation::Waste;
  double captureProbabilityShared = 1.0;
  double captureProbabilitySeparate = 0.5;
  ParticipationThresholds thresholds;
};

/// Solves the shared (1 chain) and separate (separateChains) games and
/// compares total expenditure. alpha < 1 uses the refund solvers.
ComparisonReport compareExpenditure(double v, const CostModel& cost, const NoiseModel& noise,
                                    double alpha = 1.0,
                                    std::optional<Interpretation> interpretation = std::nullopt,
                                    int separateChains = 2);

struct CappedRevenueReport {
  ComparisonReport comparison;
  double sharedPerTrader = 0.0;
  double separatePerTrader = 0.0;
  /// (v f0 / (2 beta))^(1 / (1 - beta)), evaluated as printed.
  double conditionBound = 0.0;
  bool conditionHolds = false;  ///< cap < conditionBound
  bool separateExceedsShared = false;  ///< direct comparison of revenues
};

/// Bid-cap revenue comparison for C(s) = s^beta with a hard cap on bids.
CappedRevenueReport cappedRevenueComparison(double v, double beta, double f0, double cap);

/// Revenue comparison for TimeBoost with normal Delta: separate sequencers
/// earn more iff thresholdConstant * v / sigma >= c / g.
struct TimeBoostThreshold {
  double thresholdConstant = 0.0;  ///< (3 - 2 sqrt 2) / sqrt(2 pi)
  double sigma = 1.0;
  double c = 0.0;
  double g = 0.0;

  bool separateBeats(double v) const;
  /// sqrt(c g v / (sqrt(2 pi) sigma)) - c
  double sharedRevenue(double v) const;
  /// sqrt(2 c g v / (sqrt(2 pi) sigma)) - 2c
  double separateRevenue(double v) const;
};

/// Throws UnsupportedFamilyError for non-normal noise.
TimeBoostThreshold timeboostRevenueThreshold(const NoiseModel& noise, double c, double g);

// Distribution G of trade values for the ex-ante fee choice.
struct ExponentialValues {
  double rate;
};
struct LogNormalValues {
  double mu;
  double sigmaLog;
};
struct PointMassValues {
  std::vector<std::pair<double, double>> points;  ///< (v, weight)
};

class ValueDistribution {
 public:
  using Family = std::variant<ExponentialValues, LogNormalValues, PointMassValues>;
  /// Validates parameters; point-mass weights must be >= 0 and sum to 1.
  explicit ValueDistribution(Family family);
  const Family& family() const noexcept { return family_; }

 private:
  Family family_;
};

enum class SequencingMode { Shared, Separate };

std::string toString(SequencingMode m);

/// Expected TimeBoost revenue per trader over G for fee parameter c:
/// shared   E[(sqrt(c g f0 v) - c)   1{v >= c / (g f0)}]
/// separate E[(sqrt(2c g f0 v) - 2c) 1{v >= 2c / (g f0)}]
double exAnteRevenue(const ValueDistribution& dist, double g, double f0, SequencingMode mode,
                     double c);

struct OptimalC {
  double cStar = 0.0;
  double exAnteRevenue = 0.0;
};

/// Revenue-maximizing c by golden-section search over log c on
/// [1e-8, 1e4] * g f0. Requires g f0 <= 4.
OptimalC optimalC(const ValueDistribution& dist, double g, double f0, SequencingMode mode);

/// One axis of a sweep grid: start, start + step, ... up to stop (inclusive).
struct GridAxis {
  std::string name;  ///< v, beta, c, g, sigma, alpha, chains, cap
  double start = 0.0;
  double step = 0.0;
  double stop = 0.0;

  std::vector<double> values() const;
};

/// Axis names in the order that defines row order (last varies fastest).
const std::vector<std::string>& sweepAxisOrder();

struct SweepBase {
  double v = 1.0;
  double alpha = 1.0;
  int separateChains = 2;
  CostModel cost = CostModel::power(2.0);
  NoiseModel noise = NoiseModel::normal(1.0);
  std::optional<Interpretation> interpretation;
};

struct SweepRow {
  std::vector<std::pair<std::string, double>> point;  ///< axis values in canonical order
  // Effective inputs at this grid point.
  double v = 1.0;
  double alpha = 1.0;
  CostModel cost = CostModel::power(2.0);
  NoiseModel noise = NoiseModel::normal(1.0);
  ComparisonReport report;
};

/// Cartesian grid of comparisons; throws ConfigError for malformed axes.
std::vector<SweepRow> sweep(const SweepBase& base, const std::vector<GridAxis>& axes);

}  // namespace seqlab
