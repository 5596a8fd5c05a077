#pragma once

#include <string>

#include "seqlab/cost.hpp"
#include "seqlab/noise.hpp"

namespace seqlab {

/// Game parameters shared by both traders.
struct MarketConfig {
  double v = 1.0;   ///< value of the arbitrage to each trader
  int nChains = 1;  ///< chains a trader must win: 1 = shared sequencer, >= 2 separate
  double alpha = 1.0;  ///< fraction of cost paid on a lost race

  /// Throws ParameterError on v <= 0, nChains < 1 or alpha outside [0, 1].
  void validate() const;
};

enum class Regime { Interior, ZeroInvestment, CapBinding };

std::string toString(Regime r);

struct EquilibriumResult {
  double signal = 0.0;              ///< s* on every chain
  double perChainCost = 0.0;        ///< C(s*)
  double totalCostPerTrader = 0.0;  ///< nChains * C(s*)
  double captureProbability = 0.0;  ///< 2^-nChains per trader
  double expectedProfit = 0.0;
  Regime regime = Regime::Interior;
  bool participationSatisfied = true;
  /// First-order-condition candidate before cap and participation handling.
  double candidateSignal = 0.0;
  int nChains = 1;
  double alpha = 1.0;
};

/// Right-hand side of the symmetric first-order condition C'(s) = f(0) v / 2^(n-1).
double focTarget(const MarketConfig& market, double f0);

/// Symmetric equilibrium via the first-order condition. Requires alpha = 1.
EquilibriumResult solveFocEquilibrium(const MarketConfig& market, const CostModel& cost,
                                      const NoiseModel& noise);

/// Same equilibrium for C(s) = s^beta via the explicit power-law formulas.
/// Throws UnsupportedFamilyError if cost is not Power.
EquilibriumResult latencyClosedForm(const MarketConfig& market, const CostModel& cost, double f0);

/// Same equilibrium for the TimeBoost fee via its explicit formulas (n in {1, 2}).
/// Throws UnsupportedFamilyError if cost is not TimeBoost.
EquilibriumResult timeboostClosedForm(const MarketConfig& market, const CostModel& cost,
                                      double f0);

/// Residuals of the symmetric first-order conditions when a loser pays only
/// alpha * C(s). Shared: f0 v - (1-a)(f0 C + C'/2) - a C'. Separate (two
/// chains): f0 (v - 2C) - (1+a) C' + 2 a f0 C.
double refundResidualShared(const MarketConfig& market, const CostModel& cost, double f0,
                            double s);
double refundResidualSeparate(const MarketConfig& market, const CostModel& cost, double f0,
                              double s);

/// Partial-refund equilibrium, one shared sequencer (market.nChains must be 1).
EquilibriumResult solveRefundEquilibriumShared(const MarketConfig& market, const CostModel& cost,
                                               const NoiseModel& noise);

/// Partial-refund equilibrium, two separate sequencers (market.nChains must be 2).
EquilibriumResult solveRefundEquilibriumSeparate(const MarketConfig& market,
                                                 const CostModel& cost, const NoiseModel& noise);

/// Dispatches to the baseline or refund solver depending on alpha and nChains.
EquilibriumResult solveEquilibrium(const MarketConfig& market, const CostModel& cost,
                                   const NoiseModel& noise);

}  // namespace seqlab
