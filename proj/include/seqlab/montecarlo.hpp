#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "seqlab/cost.hpp"
#include "seqlab/equilibrium.hpp"
#include "seqlab/noise.hpp"

namespace seqlab {

struct SimulationSpec {
  /// signals[i][k]: signal of trader i on chain k; each has market.nChains entries.
  std::array<std::vector<double>, 2> signals;
  MarketConfig market;
  CostModel cost = CostModel::power(2.0);
  NoiseModel noise = NoiseModel::normal(1.0);
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks hardware concurrency. Never affects results.
  unsigned threads = 0;

  /// Both traders play the same signal on every chain.
  static SimulationSpec symmetric(double signal, const MarketConfig& market,
                                  const CostModel& cost, const NoiseModel& noise,
                                  std::uint64_t trials, std::uint64_t seed);
};

/// Mean with 95% normal-approximation half-width.
struct Estimate {
  double mean = 0.0;
  double halfWidth = 0.0;
};

struct SimulationStats {
  std::uint64_t trials = 0;
  std::array<std::uint64_t, 2> captureCount{};
  /// Races on chain k won by trader 1 (trader 2 won the rest).
  std::vector<std::uint64_t> perChainWinCounts;
  std::array<Estimate, 2> captureProbability;
  std::array<Estimate, 2> meanPayoff;
};

/// Throws ConfigError on trials = 0 or mis-sized signals, DomainError on
/// signals outside the cost domain.
SimulationStats simulate(const SimulationSpec& spec);

/// Monte Carlo mean payoff per trader.
std::array<Estimate, 2> estimateExpectedPayoff(const SimulationSpec& spec);

/// Exact expected payoff of a trader playing `own` against `other`:
///   v prod_k F(own_k - other_k) - sum_k C(own_k) [F_k + alpha (1 - F_k)].
double analyticPayoff(std::span<const double> own, std::span<const double> other,
                      const MarketConfig& market, const CostModel& cost,
                      const NoiseModel& noise);

enum class VerifyMode { Analytic, MonteCarlo };

struct BestResponseCheck {
  double maxGain = 0.0;
  /// Per-chain signals of the most profitable deviation (the candidate when none gains).
  std::vector<double> argmaxDeviation;
  double epsilon = 0.0;
  bool isEpsilonEquilibrium = true;
  std::size_t deviationsEvaluated = 0;
};

/// Default 301-point deviation grid on [0, min(domain upper, 3 s + 1)],
/// dense near 0 and near the candidate s.
std::vector<double> defaultDeviationGrid(double candidate, const CostModel& cost);

/// Holds trader 2 at the candidate and scans trader 1's deviations: the
/// equal-per-chain family and, with two or more chains, the 2-D family
/// (x on chain 1, y on the remaining chains). `spec` supplies market, cost,
/// noise and (MonteCarlo mode) trials and seed; its signals are ignored.
BestResponseCheck verifyBestResponse(const EquilibriumResult& candidate,
                                     const SimulationSpec& spec,
                                     std::span<const double> deviationGrid, VerifyMode mode);

}  // namespace seqlab
