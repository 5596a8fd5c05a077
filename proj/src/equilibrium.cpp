#include "seqlab/equilibrium.hpp"

#include <cmath>
#include <string>

#include "seqlab/errors.hpp"
#include "seqlab/numerics.hpp"

namespace seqlab {

void MarketConfig::validate() const {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw ParameterError("trade value v must be finite and > 0, got " + std::to_string(v));
  }
  if (nChains < 1) throw ParameterError("nChains must be >= 1, got " + std::to_string(nChains));
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ParameterError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
}

std::string toString(Regime r) {
  switch (r) {
    case Regime::Interior:
      return "interior";
    case Regime::ZeroInvestment:
      return "zero_investment";
    case Regime::CapBinding:
      return "cap_binding";
  }
  return "unknown";
}

namespace {

double winAllProbability(int n) { return std::ldexp(1.0, -n); }

// Expected payoff at the symmetric point: every race is won with probability
// 1/2, won races cost C, lost races cost alpha C.
double symmetricProfit(const MarketConfig& m, double perChainCost) {
  return m.v * winAllProbability(m.nChains) - m.nChains * perChainCost * (1.0 + m.alpha) / 2.0;
}

EquilibriumResult zeroInvestment(const MarketConfig& m, double candidate) {
  EquilibriumResult r;
  r.signal = 0.0;
  r.captureProbability = winAllProbability(m.nChains);
  r.expectedProfit = m.v * r.captureProbability;
  r.regime = Regime::ZeroInvestment;
  r.participationSatisfied = true;
  r.candidateSignal = candidate;
  r.nChains = m.nChains;
  r.alpha = m.alpha;
  return r;
}

// Applies the cap and the participation check to a first-order-condition
// candidate. perChainCost evaluates C at the final signal.
template <class CostFn>
EquilibriumResult finalize(const MarketConfig& m, const CostModel& cost, double candidate,
                           CostFn&& perChainCost) {
  if (!(candidate > 0.0)) return zeroInvestment(m, candidate);
  double signal = candidate;
  Regime regime = Regime::Interior;
  if (cost.cap() && candidate > *cost.cap()) {
    signal = *cost.cap();
    regime = Regime::CapBinding;
    if (signal == 0.0) return zeroInvestment(m, candidate);
  }
  const double c = perChainCost(signal);
  const double profit = symmetricProfit(m, c);
  // Weak inequality: a zero-profit equilibrium still counts as participating.
  if (profit < 0.0) return zeroInvestment(m, candidate);

  EquilibriumResult r;
  r.signal = signal;
  r.perChainCost = c;
  r.totalCostPerTrader = m.nChains * c;
  r.captureProbability = winAllProbability(m.nChains);
  r.expectedProfit = profit;
  r.regime = regime;
  r.participationSatisfied = true;
  r.candidateSignal = candidate;
  r.nChains = m.nChains;
  r.alpha = m.alpha;
  return r;
}

void requireBaseline(const MarketConfig& m) {
  m.validate();
  if (m.alpha != 1.0) {
    throw ParameterError("baseline equilibrium requires alpha = 1; use the refund solvers");
  }
}

enum class RefundMode { Shared, Separate };

EquilibriumResult solveRefund(const MarketConfig& market, const CostModel& cost,
                              const NoiseModel& noise, RefundMode mode) {
  market.validate();
  const double f0 = densityAtZero(noise);
  const CostModel uncapped = cost.withCap(std::nullopt);
  auto residual = [&](double s) {
    return mode == RefundMode::Shared ? refundResidualShared(market, uncapped, f0, s)
                                      : refundResidualSeparate(market, uncapped, f0, s);
  };

  double upper = 0.0;
  int expansions = 0;
  if (uncapped.isPower()) {
    upper = 4.0 * inverseMarginalCost(uncapped, focTarget(market, f0)).signal;
    expansions = 3;
  } else {
    upper = uncapped.maxAdmissibleSignal();
  }

  std::optional<numerics::RootResult> root;
  for (int i = 0; i <= expansions && !root; ++i, upper *= 2.0) {
    root = numerics::bisect(residual, 0.0, upper);
  }
  if (!root) return zeroInvestment(market, 0.0);
  if (!std::isfinite(root->root)) throw SolverError("refund root finding diverged");
  return finalize(market, cost, root->root, [&](double s) { return seqlab::cost(uncapped, s); });
}

}  // namespace

double focTarget(const MarketConfig& market, double f0) {
  return f0 * market.v / std::ldexp(1.0, market.nChains - 1);
}

EquilibriumResult solveFocEquilibrium(const MarketConfig& market, const CostModel& cost,
                                      const NoiseModel& noise) {
  requireBaseline(market);
  const double target = focTarget(market, densityAtZero(noise));
  const auto inv = inverseMarginalCost(cost, target);
  if (inv.corner) return zeroInvestment(market, 0.0);
  const CostModel uncapped = cost.withCap(std::nullopt);
  return finalize(market, cost, inv.signal, [&](double s) { return seqlab::cost(uncapped, s); });
}

EquilibriumResult latencyClosedForm(const MarketConfig& market, const CostModel& cost,
                                    double f0) {
  requireBaseline(market);
  const auto* power = std::get_if<PowerCost>(&cost.family());
  if (!power) throw UnsupportedFamilyError("latencyClosedForm requires a power cost");
  const double beta = power->beta;
  // base = f(0) v / (beta 2^(n-1)); s* = base^(1/(beta-1)), C(s*) = base^(beta/(beta-1)).
  const double base = f0 * market.v / (beta * std::ldexp(1.0, market.nChains - 1));
  const double signal = std::pow(base, 1.0 / (beta - 1.0));
  const double closedCost = std::pow(base, beta / (beta - 1.0));
  return finalize(market, cost, signal, [&](double s) {
    return s == signal ? closedCost : std::pow(s, beta);
  });
}

EquilibriumResult timeboostClosedForm(const MarketConfig& market, const CostModel& cost,
                                      double f0) {
  requireBaseline(market);
  const auto* tb = std::get_if<TimeBoostCost>(&cost.family());
  if (!tb) throw UnsupportedFamilyError("timeboostClosedForm requires a timeboost cost");
  if (market.nChains != 1 && market.nChains != 2) {
    throw ParameterError("timeboostClosedForm covers 1 or 2 chains");
  }
  const double c = tb->c;
  const double g = tb->g;
  const double v = market.v;
  const double k = market.nChains == 1 ? 1.0 : 2.0;
  if (v <= k * c / (g * f0)) return zeroInvestment(market, 0.0);
  const double signal = g - std::sqrt(k * c * g / (v * f0));
  // Per-trader total k C(s*) = sqrt(k c g f0 v) - k c.
  const double closedTotal = std::sqrt(k * c * g * f0 * v) - k * c;
  return finalize(market, cost, signal, [&](double s) {
    return s == signal ? closedTotal / k : c * s / (g - s);
  });
}

double refundResidualShared(const MarketConfig& market, const CostModel& cost, double f0,
                            double s) {
  const double a = market.alpha;
  const double c = seqlab::cost(cost, s);
  const double mc = marginalCost(cost, s);
  return f0 * market.v - (1.0 - a) * (f0 * c + 0.5 * mc) - a * mc;
}

double refundResidualSeparate(const MarketConfig& market, const CostModel& cost, double f0,
                              double s) {
  const double a = market.alpha;
  const double c = seqlab::cost(cost, s);
  const double mc = marginalCost(cost, s);
  return f0 * (market.v - 2.0 * c) - (1.0 + a) * mc + 2.0 * a * f0 * c;
}

EquilibriumResult solveRefundEquilibriumShared(const MarketConfig& market, const CostModel& cost,
                                               const NoiseModel& noise) {
  if (market.nChains != 1) {
    throw ParameterError("shared refund equilibrium requires nChains = 1");
  }
  return solveRefund(market, cost, noise, RefundMode::Shared);
}

EquilibriumResult solveRefundEquilibriumSeparate(const MarketConfig& market,
                                                 const CostModel& cost, const NoiseModel& noise) {
  if (market.nChains != 2) {
    throw ParameterError("separate refund equilibrium requires nChains = 2");
  }
  return solveRefund(market, cost, noise, RefundMode::Separate);
}

EquilibriumResult solveEquilibrium(const MarketConfig& market, const CostModel& cost,
                                   const NoiseModel& noise) {
  market.validate();
  if (market.alpha == 1.0) return solveFocEquilibrium(market, cost, noise);
  if (market.nChains == 1) return solveRefundEquilibriumShared(market, cost, noise);
  if (market.nChains == 2) return solveRefundEquilibriumSeparate(market, cost, noise);
  throw ParameterError("refund extension (alpha < 1) is defined for 1 or 2 chains only");
}

}  // namespace seqlab
