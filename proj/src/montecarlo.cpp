#include "seqlab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "seqlab/errors.hpp"
#include "seqlab/rng.hpp"

namespace seqlab {

namespace {

constexpr std::uint64_t kBlockTrials = 4096;

struct BlockTotals {
  std::array<std::uint64_t, 2> capture{};
  std::vector<std::uint64_t> chainWins;
  std::array<double, 2> payoffSum{};
  std::array<double, 2> payoffSumSq{};
};

void validate(const SimulationSpec& spec) {
  spec.market.validate();
  if (spec.trials == 0) throw ConfigError("trials must be > 0");
  const auto n = static_cast<std::size_t>(spec.market.nChains);
  for (int i = 0; i < 2; ++i) {
    if (spec.signals[i].size() != n) {
      throw ConfigError("trader " + std::to_string(i + 1) + " needs " + std::to_string(n) +
                        " per-chain signals, got " + std::to_string(spec.signals[i].size()));
    }
  }
}

BlockTotals runBlock(const SimulationSpec& spec, std::uint64_t first, std::uint64_t last,
                     const std::array<std::vector<double>, 2>& costs) {
  const int n = spec.market.nChains;
  const bool perTrader = hasPerTraderLaw(spec.noise);
  BlockTotals t;
  t.chainWins.assign(static_cast<std::size_t>(n), 0);
  for (std::uint64_t trial = first; trial < last; ++trial) {
    int won1 = 0;
    std::array<double, 2> paid{};
    for (int k = 0; k < n; ++k) {
      const auto chain = static_cast<std::uint32_t>(k);
      double e1 = 0.0;
      double e2 = 0.0;
      if (perTrader) {
        e1 = samplePerTrader(spec.noise, openUniform({spec.seed, trial, chain, 0}));
        e2 = samplePerTrader(spec.noise, openUniform({spec.seed, trial, chain, 1}));
      } else {
        // Delta drawn directly and split antisymmetrically.
        const double delta = quantile(spec.noise, openUniform({spec.seed, trial, chain, 0}));
        e1 = 0.5 * delta;
        e2 = -0.5 * delta;
      }
      const double score1 = spec.signals[0][k] + e1;
      const double score2 = spec.signals[1][k] + e2;
      bool oneWins = score1 > score2;
      if (score1 == score2) oneWins = (bits64({spec.seed, trial, chain, 2}) & 1u) != 0;
      const double c1 = costs[0][k];
      const double c2 = costs[1][k];
      if (oneWins) {
        ++won1;
        ++t.chainWins[k];
        paid[0] += c1;
        paid[1] += spec.market.alpha * c2;
      } else {
        paid[0] += spec.market.alpha * c1;
        paid[1] += c2;
      }
    }
    std::array<double, 2> payoff = {-paid[0], -paid[1]};
    if (won1 == n) {
      ++t.capture[0];
      payoff[0] += spec.market.v;
    } else if (won1 == 0) {
      ++t.capture[1];
      payoff[1] += spec.market.v;
    }
    for (int i = 0; i < 2; ++i) {
      t.payoffSum[i] += payoff[i];
      t.payoffSumSq[i] += payoff[i] * payoff[i];
    }
  }
  return t;
}

Estimate proportion(std::uint64_t count, std::uint64_t trials) {
  const double p = static_cast<double>(count) / static_cast<double>(trials);
  return {p, 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

}  // namespace

SimulationSpec SimulationSpec::symmetric(double signal, const MarketConfig& market,
                                         const CostModel& cost, const NoiseModel& noise,
                                         std::uint64_t trials, std::uint64_t seed) {
  SimulationSpec s;
  const auto n = static_cast<std::size_t>(std::max(market.nChains, 1));
  s.signals = {std::vector<double>(n, signal), std::vector<double>(n, signal)};
  s.market = market;
  s.cost = cost;
  s.noise = noise;
  s.trials = trials;
  s.seed = seed;
  return s;
}

SimulationStats simulate(const SimulationSpec& spec) {
  validate(spec);
  const int n = spec.market.nChains;
  std::array<std::vector<double>, 2> costs;
  for (int i = 0; i < 2; ++i) {
    for (double s : spec.signals[i]) costs[i].push_back(cost(spec.cost, s));
  }

  const std::uint64_t nBlocks = (spec.trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<BlockTotals> blocks(nBlocks);
  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, nBlocks));

  auto worker = [&](unsigned id) {
    for (std::uint64_t b = id; b < nBlocks; b += threads) {
      const std::uint64_t first = b * kBlockTrials;
      blocks[b] = runBlock(spec, first, std::min(spec.trials, first + kBlockTrials), costs);
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }

  // Reduce in block order so the floating-point sums do not depend on the
  // thread layout.
  SimulationStats stats;
  stats.trials = spec.trials;
  stats.perChainWinCounts.assign(static_cast<std::size_t>(n), 0);
  std::array<double, 2> sum{};
  std::array<double, 2> sumSq{};
  for (const auto& b : blocks) {
    for (int i = 0; i < 2; ++i) {
      stats.captureCount[i] += b.capture[i];
      sum[i] += b.payoffSum[i];
      sumSq[i] += b.payoffSumSq[i];
    }
    for (int k = 0; k < n; ++k) stats.perChainWinCounts[k] += b.chainWins[k];
  }
  const auto trials = static_cast<double>(spec.trials);
  for (int i = 0; i < 2; ++i) {
    stats.captureProbability[i] = proportion(stats.captureCount[i], spec.trials);
    const double mean = sum[i] / trials;
    const double var =
        spec.trials > 1 ? std::max(0.0, (sumSq[i] - trials * mean * mean) / (trials - 1.0)) : 0.0;
    stats.meanPayoff[i] = {mean, 1.96 * std::sqrt(var / trials)};
  }
  return stats;
}

std::array<Estimate, 2> estimateExpectedPayoff(const SimulationSpec& spec) {
  return simulate(spec).meanPayoff;
}

double analyticPayoff(std::span<const double> own, std::span<const double> other,
                      const MarketConfig& market, const CostModel& cost,
                      const NoiseModel& noise) {
  if (own.size() != other.size() || own.size() != static_cast<std::size_t>(market.nChains)) {
    throw ConfigError("per-chain signal vectors must have nChains entries");
  }
  double winAll = 1.0;
  double expectedCost = 0.0;
  for (std::size_t k = 0; k < own.size(); ++k) {
    const double p = cdf(noise, own[k] - other[k]);
    winAll *= p;
    expectedCost += seqlab::cost(cost, own[k]) * (p + market.alpha * (1.0 - p));
  }
  return market.v * winAll - expectedCost;
}

std::vector<double> defaultDeviationGrid(double candidate, const CostModel& cost) {
  const double upper = std::min(cost.maxAdmissibleSignal(), 3.0 * candidate + 1.0);
  const double s = std::clamp(candidate, 0.0, upper);
  std::vector<double> grid;
  grid.reserve(301);
  grid.push_back(0.0);
  for (int i = 0; i < 100; ++i) grid.push_back(upper * std::pow(10.0, -6.0 + 6.0 * i / 99.0));
  for (int i = 1; i <= 100; ++i) grid.push_back(upper * i / 100.0);
  for (int j = 0; j < 50; ++j) {
    const double offset = upper * std::pow(10.0, -6.0 + 5.0 * j / 49.0);
    grid.push_back(std::clamp(s - offset, 0.0, upper));
    grid.push_back(std::clamp(s + offset, 0.0, upper));
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

BestResponseCheck verifyBestResponse(const EquilibriumResult& candidate,
                                     const SimulationSpec& spec,
                                     std::span<const double> deviationGrid, VerifyMode mode) {
  spec.market.validate();
  if (deviationGrid.empty()) throw ConfigError("deviation grid is empty");
  if (spec.market.nChains != candidate.nChains) {
    throw ConfigError("candidate and market disagree on the number of chains");
  }
  const double upper = spec.cost.maxAdmissibleSignal();
  for (double x : deviationGrid) {
    if (!(x >= 0.0 && x <= upper)) {
      throw DomainError("deviation " + std::to_string(x) + " is outside the cost domain");
    }
  }

  const auto n = static_cast<std::size_t>(spec.market.nChains);
  const std::vector<double> opponent(n, candidate.signal);

  auto evaluate = [&](const std::vector<double>& own) -> Estimate {
    if (mode == VerifyMode::Analytic) {
      return {analyticPayoff(own, opponent, spec.market, spec.cost, spec.noise), 0.0};
    }
    SimulationSpec sim = spec;
    sim.signals = {own, opponent};
    return simulate(sim).meanPayoff[0];
  };

  BestResponseCheck out;
  out.argmaxDeviation = opponent;
  const Estimate base = evaluate(opponent);
  Estimate bestEstimate = base;

  auto consider = [&](const std::vector<double>& own) {
    const Estimate e = evaluate(own);
    ++out.deviationsEvaluated;
    if (e.mean - base.mean > out.maxGain) {
      out.maxGain = e.mean - base.mean;
      out.argmaxDeviation = own;
      bestEstimate = e;
    }
  };

  for (double x : deviationGrid) consider(std::vector<double>(n, x));
  if (n >= 2) {
    std::vector<double> own(n);
    for (double x : deviationGrid) {
      for (double y : deviationGrid) {
        if (x == y) continue;
        own[0] = x;
        std::fill(own.begin() + 1, own.end(), y);
        consider(own);
      }
    }
  }

  out.epsilon = mode == VerifyMode::Analytic
                    ? 1e-3 * spec.market.v
                    : std::hypot(base.halfWidth, bestEstimate.halfWidth);
  out.isEpsilonEquilibrium = out.maxGain <= out.epsilon;
  return out;
}

}  // namespace seqlab
