#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "seqlab/equilibrium.hpp"
#include "seqlab/errors.hpp"

using namespace seqlab;

namespace {

const double kUnitSigma = 1.0 / std::sqrt(2.0 * M_PI);  // f(0) = 1
const NoiseModel kUnitNoise = NoiseModel::normal(kUnitSigma);

double phi(double x, double sigma) { return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0))); }

// Brute-force best response of trader 1 to an opponent at `opp` (Power cost,
// normal noise, equal signals on every chain), scanned on a fine grid.
double gridBestResponse(double opp, double v, int n, double beta, double sigma) {
  double best = 0.0;
  double bestPay = -1e300;
  for (int i = 0; i <= 200000; ++i) {
    const double s = 3.0 * opp * i / 200000.0;
    const double pay = v * std::pow(phi(s - opp, sigma), n) - n * std::pow(s, beta);
    if (pay > bestPay) {
      bestPay = pay;
      best = s;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("solveFocEquilibrium examples") {
  auto r = solveFocEquilibrium({1.0, 1, 1.0}, CostModel::power(2.0), kUnitNoise);
  CHECK(r.signal == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.perChainCost == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.expectedProfit == doctest::Approx(0.25).epsilon(1e-12));
  CHECK((r.regime == Regime::Interior));
  CHECK(r.participationSatisfied);
  CHECK(gridBestResponse(0.5, 1.0, 1, 2.0, kUnitSigma) == doctest::Approx(0.5).epsilon(1e-4));

  r = solveFocEquilibrium({1.0, 2, 1.0}, CostModel::power(2.0), kUnitNoise);
  CHECK(r.signal == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.totalCostPerTrader == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(r.expectedProfit == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(r.captureProbability == 0.25);
  CHECK((r.regime == Regime::Interior));
  CHECK(gridBestResponse(0.25, 1.0, 2, 2.0, kUnitSigma) == doctest::Approx(0.25).epsilon(1e-4));

  r = solveFocEquilibrium({1.0, 1, 1.0}, CostModel::timeBoost(2.0, 1.0), kUnitNoise);
  CHECK(r.signal == 0.0);
  CHECK((r.regime == Regime::ZeroInvestment));

  r = solveFocEquilibrium({4.0, 1, 1.0}, CostModel::power(2.0), kUnitNoise);
  CHECK(r.candidateSignal == doctest::Approx(2.0));
  CHECK(r.signal == 0.0);
  CHECK((r.regime == Regime::ZeroInvestment));
  CHECK(r.expectedProfit == doctest::Approx(2.0));
}

TEST_CASE("zero-profit boundary is interior") {
  // beta = 2, f(0) = 1: s = v/2 and v/2 - v^2/4 = 0 at v = 2.
  const auto r = solveFocEquilibrium({2.0, 1, 1.0}, CostModel::power(2.0), kUnitNoise);
  CHECK((r.regime == Regime::Interior));
  CHECK(r.signal == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.expectedProfit) < 1e-12);
}

TEST_CASE("cap binding") {
  const auto r = solveFocEquilibrium({1.0, 1, 1.0}, CostModel::power(2.0, 0.3), kUnitNoise);
  CHECK((r.regime == Regime::CapBinding));
  CHECK(r.signal == 0.3);
  CHECK(r.perChainCost == doctest::Approx(0.09));
  const auto slack = solveFocEquilibrium({1.0, 1, 1.0}, CostModel::power(2.0, 0.8), kUnitNoise);
  CHECK((slack.regime == Regime::Interior));
  const auto refund = solveRefundEquilibriumShared({1.0, 1, 0.0}, CostModel::power(2.0, 0.55), kUnitNoise);
  CHECK((refund.regime == Regime::CapBinding));
  CHECK(refund.signal == 0.55);
}

TEST_CASE("latencyClosedForm examples") {
  auto r = latencyClosedForm({1.0, 1, 1.0}, CostModel::power(2.0), 1.0);
  CHECK(std::abs(r.signal - solveFocEquilibrium({1.0, 1, 1.0}, CostModel::power(2.0), kUnitNoise).signal) < 1e-12);
  CHECK(r.signal == doctest::Approx(0.5));
  r = latencyClosedForm({1.0, 2, 1.0}, CostModel::power(2.0), 1.0);
  CHECK(r.signal == doctest::Approx(0.25));
  CHECK(r.totalCostPerTrader == doctest::Approx(0.125));
  r = latencyClosedForm({1.0, 1, 1.0}, CostModel::power(2.0), densityAtZero(NoiseModel::normal(1.0)));
  CHECK(r.signal == doctest::Approx(0.19947114020071635).epsilon(1e-14));
  CHECK_THROWS_AS(latencyClosedForm({1.0, 1, 1.0}, CostModel::timeBoost(1, 1), 1.0),
                  UnsupportedFamilyError);
}

TEST_CASE("timeboostClosedForm examples") {
  const auto tb = CostModel::timeBoost(0.25, 1.0);
  auto r = timeboostClosedForm({1.0, 1, 1.0}, tb, 1.0);
  CHECK(r.signal == doctest::Approx(0.5));
  CHECK(r.totalCostPerTrader == doctest::Approx(0.25));
  auto foc = solveFocEquilibrium({1.0, 1, 1.0}, tb, kUnitNoise);
  CHECK(std::abs(foc.signal - r.signal) < 1e-9);
  CHECK(std::abs(foc.totalCostPerTrader - r.totalCostPerTrader) < 1e-9);

  r = timeboostClosedForm({1.0, 2, 1.0}, tb, 1.0);
  CHECK(r.signal == doctest::Approx(1.0 - std::sqrt(0.5)));
  CHECK(r.totalCostPerTrader == doctest::Approx(std::sqrt(0.5) - 0.5));
  foc = solveFocEquilibrium({1.0, 2, 1.0}, tb, kUnitNoise);
  CHECK(std::abs(foc.signal - r.signal) < 1e-9);
  CHECK(std::abs(foc.totalCostPerTrader - r.totalCostPerTrader) < 1e-9);

  r = timeboostClosedForm({0.2, 1, 1.0}, tb, 1.0);
  CHECK(r.signal == 0.0);
  CHECK((r.regime == Regime::ZeroInvestment));
  CHECK_THROWS_AS(timeboostClosedForm({1.0, 1, 1.0}, CostModel::power(2), 1.0), UnsupportedFamilyError);
  CHECK_THROWS_AS(timeboostClosedForm({1.0, 3, 1.0}, tb, 1.0), ParameterError);
}

TEST_CASE("refund equilibria examples") {
  const auto p2 = CostModel::power(2.0);
  auto shared = solveRefundEquilibriumShared({1.0, 1, 1.0}, p2, kUnitNoise);
  CHECK(shared.signal == doctest::Approx(0.5).epsilon(1e-12));
  shared = solveRefundEquilibriumShared({1.0, 1, 0.0}, p2, kUnitNoise);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(std::abs(shared.signal - golden) < 1e-12);
  // 1 - s^2 - s = 0 by substitution.
  CHECK(std::abs(1.0 - shared.signal * shared.signal - shared.signal) < 1e-12);
  CHECK(shared.expectedProfit == doctest::Approx(0.5 - 0.5 * golden * golden));

  const auto half = solveRefundEquilibriumShared({1.0, 1, 0.5}, p2, kUnitNoise);
  CHECK(half.signal > 0.5);
  CHECK(half.signal < golden);
  // Independent dense scan of the residual 1 - 0.5(s^2 + s) - 0.5 (2s) for the sign change.
  double scanRoot = 0.0;
  for (int i = 0; i < 1'000'000; ++i) {
    const double s = i * 1e-6;
    if (1.0 - 0.5 * (s * s + s) - s < 0.0) {
      scanRoot = s;
      break;
    }
  }
  CHECK(std::abs(half.signal - scanRoot) < 2e-6);

  auto sep = solveRefundEquilibriumSeparate({1.0, 2, 1.0}, p2, kUnitNoise);
  CHECK(sep.signal == doctest::Approx(0.25).epsilon(1e-12));
  sep = solveRefundEquilibriumSeparate({1.0, 2, 0.0}, p2, kUnitNoise);
  const double root3 = (std::sqrt(3.0) - 1.0) / 2.0;
  CHECK(std::abs(sep.signal - root3) < 1e-12);
  CHECK(std::abs(1.0 - 2 * sep.signal * sep.signal - 2 * sep.signal) < 1e-12);
  CHECK(sep.expectedProfit == doctest::Approx(0.25 - root3 * root3));
  const auto sepHalf = solveRefundEquilibriumSeparate({1.0, 2, 0.5}, p2, kUnitNoise);
  CHECK(sepHalf.signal > 0.25);
  CHECK(sepHalf.signal < root3);

  CHECK_THROWS_AS(solveRefundEquilibriumShared({1.0, 2, 0.5}, p2, kUnitNoise), ParameterError);
  CHECK_THROWS_AS(solveRefundEquilibriumSeparate({1.0, 1, 0.5}, p2, kUnitNoise), ParameterError);
}

TEST_CASE("refund with no interior root is zero investment") {
  // TimeBoost: residual at 0 is f0 v - (c/g)(1 + alpha)/2 < 0.
  const auto r = solveRefundEquilibriumShared({0.1, 1, 0.5}, CostModel::timeBoost(1.0, 1.0), kUnitNoise);
  CHECK((r.regime == Regime::ZeroInvestment));
  CHECK(r.signal == 0.0);
}

TEST_CASE("baseline solver rejects alpha < 1 and bad markets") {
  CHECK_THROWS_AS(solveFocEquilibrium({1.0, 1, 0.5}, CostModel::power(2), kUnitNoise), ParameterError);
  CHECK_THROWS_AS(solveFocEquilibrium({0.0, 1, 1.0}, CostModel::power(2), kUnitNoise), ParameterError);
  CHECK_THROWS_AS(solveFocEquilibrium({1.0, 0, 1.0}, CostModel::power(2), kUnitNoise), ParameterError);
  CHECK_THROWS_AS(solveEquilibrium({1.0, 1, 1.5}, CostModel::power(2), kUnitNoise), ParameterError);
  CHECK_THROWS_AS(solveEquilibrium({1.0, 3, 0.5}, CostModel::power(2), kUnitNoise), ParameterError);
}

TEST_CASE("closed forms agree with the generic first-order path") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> beta(1.1, 6.0);
  std::uniform_real_distribution<double> value(0.05, 3.0);
  std::uniform_real_distribution<double> sigma(0.05, 2.0);
  std::uniform_real_distribution<double> unit(0.01, 2.0);
  for (int i = 0; i < 500; ++i) {
    const NoiseModel noise = NoiseModel::normal(sigma(gen));
    const double f0 = densityAtZero(noise);
    for (int n = 1; n <= 3; ++n) {
      const MarketConfig m{value(gen), n, 1.0};
      const auto power = CostModel::power(beta(gen));
      const auto a = latencyClosedForm(m, power, f0);
      const auto b = solveFocEquilibrium(m, power, noise);
      CHECK(std::abs(a.signal - b.signal) < 1e-9);
      CHECK(std::abs(a.totalCostPerTrader - b.totalCostPerTrader) < 1e-9);
      CHECK((a.regime == b.regime));
      if (n <= 2) {
        const auto tb = CostModel::timeBoost(unit(gen), unit(gen));
        const auto c = timeboostClosedForm(m, tb, f0);
        const auto d = solveFocEquilibrium(m, tb, noise);
        CHECK(std::abs(c.signal - d.signal) < 1e-9);
        CHECK(std::abs(c.totalCostPerTrader - d.totalCostPerTrader) < 1e-9);
        CHECK((c.regime == d.regime));
      }
    }
  }
}

TEST_CASE("first-order residuals at returned signals") {
  for (double beta : {1.5, 2.0, 3.0, 5.0}) {
    for (double v : {0.1, 0.5, 1.0, 2.0}) {
      for (int n = 1; n <= 3; ++n) {
        const MarketConfig m{v, n, 1.0};
        const auto cost = CostModel::power(beta);
        const auto r = solveFocEquilibrium(m, cost, kUnitNoise);
        if (r.regime == Regime::Interior) {
          CHECK(std::abs(marginalCost(cost, r.signal) - focTarget(m, 1.0)) < 1e-10);
        }
      }
      for (double alpha : {0.0, 0.3, 0.7, 1.0}) {
        const auto cost = CostModel::power(beta);
        const auto s = solveRefundEquilibriumShared({v, 1, alpha}, cost, kUnitNoise);
        if (s.regime == Regime::Interior) {
          CHECK(std::abs(refundResidualShared({v, 1, alpha}, cost, 1.0, s.signal)) < 1e-10);
        }
        const auto p = solveRefundEquilibriumSeparate({v, 2, alpha}, cost, kUnitNoise);
        if (p.regime == Regime::Interior) {
          CHECK(std::abs(refundResidualSeparate({v, 2, alpha}, cost, 1.0, p.signal)) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("refund solvers at alpha = 1 reproduce the baseline") {
  for (double beta : {1.5, 2.0, 3.0, 5.0}) {
    for (double v : {0.1, 0.5, 1.0, 1.5}) {
      const auto cost = CostModel::power(beta);
      const auto a = solveRefundEquilibriumShared({v, 1, 1.0}, cost, kUnitNoise);
      const auto b = solveFocEquilibrium({v, 1, 1.0}, cost, kUnitNoise);
      CHECK(std::abs(a.signal - b.signal) < 1e-9);
      const auto c = solveRefundEquilibriumSeparate({v, 2, 1.0}, cost, kUnitNoise);
      const auto d = solveFocEquilibrium({v, 2, 1.0}, cost, kUnitNoise);
      CHECK(std::abs(c.signal - d.signal) < 1e-9);
    }
  }
  const auto tb = CostModel::timeBoost(0.25, 1.0);
  CHECK(std::abs(solveRefundEquilibriumShared({1.0, 1, 1.0}, tb, kUnitNoise).signal - 0.5) < 1e-9);
}

TEST_CASE("refund signal is non-increasing in alpha for beta >= 2") {
  for (double beta : {2.0, 3.0, 5.0}) {
    double prevShared = INFINITY;
    double prevSep = INFINITY;
    for (int i = 0; i <= 10; ++i) {
      const double alpha = i / 10.0;
      const auto s = solveRefundEquilibriumShared({1.0, 1, alpha}, CostModel::power(beta), kUnitNoise);
      const auto p = solveRefundEquilibriumSeparate({1.0, 2, alpha}, CostModel::power(beta), kUnitNoise);
      CHECK(s.candidateSignal <= prevShared);
      CHECK(p.candidateSignal <= prevSep);
      prevShared = s.candidateSignal;
      prevSep = p.candidateSignal;
    }
  }
}

TEST_CASE("n-chain signals decay geometrically") {
  for (double beta : {1.5, 2.0, 3.0, 5.0}) {
    for (int n = 1; n <= 5; ++n) {
      const auto a = solveFocEquilibrium({0.5, n, 1.0}, CostModel::power(beta), kUnitNoise);
      const auto b = solveFocEquilibrium({0.5, n + 1, 1.0}, CostModel::power(beta), kUnitNoise);
      if (a.regime == Regime::Interior && b.regime == Regime::Interior) {
        CHECK(b.signal / a.signal == doctest::Approx(std::pow(2.0, -1.0 / (beta - 1.0))).epsilon(1e-12));
      }
    }
  }
}
