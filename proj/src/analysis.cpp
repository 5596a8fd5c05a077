#include "seqlab/analysis.hpp"

#include <algorithm>
#include <boost/math/distributions/exponential.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "seqlab/errors.hpp"
#include "seqlab/numerics.hpp"

namespace seqlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

bool directParticipation(double v, const CostModel& cost, double f0, int n) {
  const MarketConfig m{v, n, 1.0};
  const auto inv = inverseMarginalCost(cost, focTarget(m, f0));
  if (inv.corner || inv.signal == 0.0) return true;
  if (inv.signal >= cost.domainUpper()) return false;
  return v * std::ldexp(1.0, -n) - n * seqlab::cost(cost, inv.signal) >= 0.0;
}

EquilibriumResult cappedResult(double v, int n, double beta, double candidate, double cap) {
  EquilibriumResult r;
  r.signal = std::min(candidate, cap);
  r.perChainCost = std::pow(r.signal, beta);
  r.totalCostPerTrader = n * r.perChainCost;
  r.captureProbability = std::ldexp(1.0, -n);
  r.expectedProfit = v * r.captureProbability - r.totalCostPerTrader;
  r.participationSatisfied = r.expectedProfit >= 0.0;
  r.regime = r.signal == 0.0       ? Regime::ZeroInvestment
             : candidate > cap     ? Regime::CapBinding
                                   : Regime::Interior;
  r.candidateSignal = candidate;
  r.nChains = n;
  return r;
}

}  // namespace

std::string toString(Interpretation i) {
  return i == Interpretation::Waste ? "waste" : "revenue";
}

std::string toString(SequencingMode m) { return m == SequencingMode::Shared ? "shared" : "separate"; }

Interpretation defaultInterpretation(const CostModel& cost) {
  return cost.isPower() && !cost.cap() ? Interpretation::Waste : Interpretation::Revenue;
}

ParticipationThresholds participationThresholds(double v, const CostModel& cost, double f0) {
  ParticipationThresholds t;
  t.available = true;
  const CostModel uncapped = cost.withCap(std::nullopt);
  std::visit(Overloaded{[&](const PowerCost& p) {
                          const double b = p.beta;
                          t.rule = "v >= 2(beta/(2 f0))^beta | v >= 8(beta/(4 f0))^beta";
                          t.sharedBound = 2.0 * std::pow(b / (2.0 * f0), b);
                          t.separateBound = 8.0 * std::pow(b / (4.0 * f0), b);
                          t.sharedDisplayedHolds = v >= t.sharedBound;
                          t.separateDisplayedHolds = v >= t.separateBound;
                        },
                        [&](const TimeBoostCost& tb) {
                          t.rule = "1 + c/v + v/(4c) >= g f0 | 1 + c/v + v/(4c) >= g f0 / 2";
                          const double lhs = 1.0 + tb.c / v + v / (4.0 * tb.c);
                          t.sharedBound = tb.g * f0;
                          t.separateBound = tb.g * f0 / 2.0;
                          t.sharedDisplayedHolds = lhs >= t.sharedBound;
                          t.separateDisplayedHolds = lhs >= t.separateBound;
                        }},
             cost.family());
  t.sharedDirectHolds = directParticipation(v, uncapped, f0, 1);
  t.separateDirectHolds = directParticipation(v, uncapped, f0, 2);
  return t;
}

ComparisonReport compareExpenditure(double v, const CostModel& cost, const NoiseModel& noise,
                                    double alpha, std::optional<Interpretation> interpretation,
                                    int separateChains) {
  ComparisonReport r;
  r.sharedResult = solveEquilibrium(MarketConfig{v, 1, alpha}, cost, noise);
  r.separateResult = solveEquilibrium(MarketConfig{v, separateChains, alpha}, cost, noise);
  r.sharedTotalExpenditure = 2.0 * r.sharedResult.totalCostPerTrader;
  r.separateTotalExpenditure = 2.0 * r.separateResult.totalCostPerTrader;
  if (r.separateTotalExpenditure > 0.0) {
    r.expenditureRatio = r.sharedTotalExpenditure / r.separateTotalExpenditure;
  }
  r.interpretation = interpretation.value_or(defaultInterpretation(cost));
  // At a symmetric profile one of the two traders wins all chains with
  // probability 2 * 2^-n.
  r.captureProbabilityShared = 2.0 * r.sharedResult.captureProbability;
  r.captureProbabilitySeparate = 2.0 * r.separateResult.captureProbability;
  if (alpha == 1.0) r.thresholds = participationThresholds(v, cost, densityAtZero(noise));
  return r;
}

CappedRevenueReport cappedRevenueComparison(double v, double beta, double f0, double cap) {
  if (!(v > 0.0)) throw ParameterError("v must be > 0");
  if (!(beta >= kMinBeta)) throw ParameterError("beta must be >= 1 + 1e-6");
  if (!(f0 > 0.0)) throw ParameterError("f0 must be > 0");
  if (!(cap >= 0.0) || !std::isfinite(cap)) throw ParameterError("cap must be finite and >= 0");

  const double sharedCandidate = std::pow(f0 * v / beta, 1.0 / (beta - 1.0));
  const double separateCandidate = std::pow(f0 * v / (2.0 * beta), 1.0 / (beta - 1.0));

  CappedRevenueReport out;
  out.sharedPerTrader = std::pow(std::min(sharedCandidate, cap), beta);
  out.separatePerTrader = std::min(2.0 * std::pow(f0 * v / (2.0 * beta), beta / (beta - 1.0)),
                                   2.0 * std::pow(cap, beta));
  out.conditionBound = std::pow(v * f0 / (2.0 * beta), 1.0 / (1.0 - beta));
  out.conditionHolds = cap < out.conditionBound;
  out.separateExceedsShared = out.separatePerTrader > out.sharedPerTrader;

  auto& cmp = out.comparison;
  cmp.sharedResult = cappedResult(v, 1, beta, sharedCandidate, cap);
  cmp.separateResult = cappedResult(v, 2, beta, separateCandidate, cap);
  cmp.sharedTotalExpenditure = 2.0 * out.sharedPerTrader;
  cmp.separateTotalExpenditure = 2.0 * out.separatePerTrader;
  if (cmp.separateTotalExpenditure > 0.0) {
    cmp.expenditureRatio = cmp.sharedTotalExpenditure / cmp.separateTotalExpenditure;
  }
  cmp.interpretation = Interpretation::Revenue;
  cmp.captureProbabilityShared = 1.0;
  cmp.captureProbabilitySeparate = 0.5;
  return out;
}

bool TimeBoostThreshold::separateBeats(double v) const {
  return thresholdConstant * v / sigma >= c / g;
}

double TimeBoostThreshold::sharedRevenue(double v) const {
  const double x = c * g * v / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  return std::sqrt(x) - c;
}

double TimeBoostThreshold::separateRevenue(double v) const {
  const double x = c * g * v / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  return std::sqrt(2.0 * x) - 2.0 * c;
}

TimeBoostThreshold timeboostRevenueThreshold(const NoiseModel& noise, double c, double g) {
  if (!noise.isNormal()) {
    throw UnsupportedFamilyError("the TimeBoost revenue threshold is derived for normal noise");
  }
  if (!(c > 0.0 && g > 0.0)) throw ParameterError("c and g must be > 0");
  TimeBoostThreshold t;
  // (sqrt 2 - 1)^2 = 3 - 2 sqrt 2.
  t.thresholdConstant =
      (3.0 - 2.0 * std::numbers::sqrt2) / std::sqrt(2.0 * std::numbers::pi);
  t.sigma = noise.parameter();
  t.c = c;
  t.g = g;
  return t;
}

ValueDistribution::ValueDistribution(Family family) : family_(std::move(family)) {
  std::visit(Overloaded{[](const ExponentialValues& e) {
                          if (!(std::isfinite(e.rate) && e.rate > 0.0)) {
                            throw ParameterError("exponential rate must be > 0");
                          }
                        },
                        [](const LogNormalValues& l) {
                          if (!std::isfinite(l.mu)) throw ParameterError("lognormal mu must be finite");
                          if (!(std::isfinite(l.sigmaLog) && l.sigmaLog > 0.0)) {
                            throw ParameterError("lognormal sigma must be > 0");
                          }
                        },
                        [](const PointMassValues& p) {
                          if (p.points.empty()) throw ParameterError("point masses must be non-empty");
                          double total = 0.0;
                          for (const auto& [v, w] : p.points) {
                            if (!(std::isfinite(v) && v >= 0.0)) {
                              throw ParameterError("point-mass value must be finite and >= 0");
                            }
                            if (!(std::isfinite(w) && w >= 0.0)) {
                              throw ParameterError("point-mass weight must be >= 0");
                            }
                            total += w;
                          }
                          if (std::abs(total - 1.0) > 1e-9) {
                            throw ParameterError("point-mass weights must sum to 1");
                          }
                        }},
             family_);
}

double exAnteRevenue(const ValueDistribution& dist, double g, double f0, SequencingMode mode,
                     double c) {
  // The separate problem at c is the shared problem at 2c; both are written
  // through the same expression of the effective fee k.
  const double k = mode == SequencingMode::Shared ? c : 2.0 * c;
  const double lower = k / (g * f0);
  auto revenueAt = [&](double v) { return std::sqrt(k * g * f0 * v) - k; };

  auto continuous = [&](const auto& d) {
    const double upper = boost::math::quantile(boost::math::complement(d, 1e-17));
    if (lower >= upper) return 0.0;
    return numerics::integrate(
        [&](double v) { return revenueAt(v) * boost::math::pdf(d, v); }, lower, upper, 1e-10);
  };

  return std::visit(
      Overloaded{[&](const ExponentialValues& e) {
                   return continuous(boost::math::exponential_distribution<>(e.rate));
                 },
                 [&](const LogNormalValues& l) {
                   return continuous(boost::math::lognormal_distribution<>(l.mu, l.sigmaLog));
                 },
                 [&](const PointMassValues& p) {
                   double sum = 0.0;
                   for (const auto& [v, w] : p.points) {
                     if (v >= lower && w > 0.0) sum += w * revenueAt(v);
                   }
                   return sum;
                 }},
      dist.family());
}

OptimalC optimalC(const ValueDistribution& dist, double g, double f0, SequencingMode mode) {
  if (!(g > 0.0 && f0 > 0.0)) throw ParameterError("g and f0 must be > 0");
  if (g * f0 > 4.0) throw ParameterError("optimal c requires g * f0 <= 4");
  if (const auto* p = std::get_if<PointMassValues>(&dist.family())) {
    const bool degenerate = std::all_of(p->points.begin(), p->points.end(),
                                        [](const auto& pt) { return pt.first == 0.0 || pt.second == 0.0; });
    if (degenerate) return {};
  }
  const double scale = g * f0;
  const auto best = numerics::goldenSectionMaximize(
      [&](double logC) { return exAnteRevenue(dist, g, f0, mode, std::exp(logC)); },
      std::log(1e-8 * scale), std::log(1e4 * scale), 200);
  return {std::exp(best.argmax), best.value};
}

std::vector<double> GridAxis::values() const {
  if (!std::isfinite(start) || !std::isfinite(step) || !std::isfinite(stop)) {
    throw ConfigError("grid axis '" + name + "' has non-finite bounds");
  }
  if (stop < start) throw ConfigError("grid axis '" + name + "' has stop < start");
  if (stop == start) return {start};
  if (!(step > 0.0)) throw ConfigError("grid axis '" + name + "' needs step > 0");
  const double span = (stop - start) / step;
  if (span > 1e6) throw ConfigError("grid axis '" + name + "' has too many points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

const std::vector<std::string>& sweepAxisOrder() {
  static const std::vector<std::string> order = {"v",     "beta",  "c",      "g",
                                                 "sigma", "alpha", "chains", "cap"};
  return order;
}

std::vector<SweepRow> sweep(const SweepBase& base, const std::vector<GridAxis>& axes) {
  const auto& order = sweepAxisOrder();
  std::map<std::string, std::vector<double>> byName;
  for (const auto& a : axes) {
    if (std::find(order.begin(), order.end(), a.name) == order.end()) {
      throw ConfigError("unknown grid axis '" + a.name + "'");
    }
    if (byName.count(a.name)) throw ConfigError("grid axis '" + a.name + "' given twice");
    byName[a.name] = a.values();
  }
  if ((byName.count("beta") && !base.cost.isPower())) {
    throw ConfigError("grid axis 'beta' requires a power cost");
  }
  if ((byName.count("c") || byName.count("g")) && !base.cost.isTimeBoost()) {
    throw ConfigError("grid axes 'c' and 'g' require a timeboost cost");
  }

  std::vector<std::pair<std::string, const std::vector<double>*>> active;
  for (const auto& name : order) {
    if (auto it = byName.find(name); it != byName.end()) active.emplace_back(name, &it->second);
  }

  std::size_t total = 1;
  for (const auto& [_, vals] : active) total *= vals->size();
  if (total > 1'000'000) throw ConfigError("sweep grid exceeds 1e6 points");

  std::vector<SweepRow> rows;
  rows.reserve(total);
  std::vector<std::size_t> idx(active.size(), 0);
  for (std::size_t row = 0; row < total; ++row) {
    double v = base.v;
    double alpha = base.alpha;
    int chains = base.separateChains;
    CostModel cost = base.cost;
    NoiseModel noise = base.noise;
    SweepRow out;
    try {
      for (std::size_t a = 0; a < active.size(); ++a) {
        const auto& [name, vals] = active[a];
        const double x = (*vals)[idx[a]];
        out.point.emplace_back(name, x);
        if (name == "v") {
          v = x;
        } else if (name == "beta") {
          cost = CostModel(PowerCost{x}, cost.cap());
        } else if (name == "c") {
          cost = CostModel(TimeBoostCost{x, std::get<TimeBoostCost>(cost.family()).g}, cost.cap());
        } else if (name == "g") {
          cost = CostModel(TimeBoostCost{std::get<TimeBoostCost>(cost.family()).c, x}, cost.cap());
        } else if (name == "sigma") {
          noise = noise.withParameter(x);
        } else if (name == "alpha") {
          alpha = x;
        } else if (name == "chains") {
          if (x != std::floor(x)) throw ConfigError("grid axis 'chains' must be integral");
          chains = static_cast<int>(x);
        } else if (name == "cap") {
          cost = cost.withCap(x);
        }
      }
      out.report = compareExpenditure(v, cost, noise, alpha, base.interpretation, chains);
      out.v = v;
      out.alpha = alpha;
      out.cost = cost;
      out.noise = noise;
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("invalid sweep point: ") + e.what());
    }
    rows.push_back(std::move(out));

    for (std::size_t a = active.size(); a-- > 0;) {
      if (++idx[a] < active[a].second->size()) break;
      idx[a] = 0;
    }
  }
  return rows;
}

}  // namespace seqlab
