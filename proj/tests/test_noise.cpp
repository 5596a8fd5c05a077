#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <vector>

#include "seqlab/errors.hpp"
#include "seqlab/noise.hpp"
#include "seqlab/rng.hpp"

using namespace seqlab;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

std::vector<NoiseModel> allFamilies() {
  return {NoiseModel::normal(1.0), NoiseModel::normal(0.3), NoiseModel::logistic(0.7),
          NoiseModel::laplace(1.3), NoiseModel::uniform(2.0)};
}

// Composite Simpson over [a, b]; independent of the library quadrature.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double ksDistance(std::vector<double> xs, const NoiseModel& m) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(m, xs[i]);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return d;
}

}  // namespace

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using P = Philox4x32;
  CHECK(P::block({0, 0, 0, 0}, {0, 0}) == P::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(P::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        P::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(P::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        P::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("densityAtZero") {
  const Big inv = 1 / boost::multiprecision::sqrt(2 * boost::math::constants::pi<Big>());
  CHECK(densityAtZero(NoiseModel::normal(1.0)) ==
        doctest::Approx(static_cast<double>(inv)).epsilon(1e-15));
  CHECK(densityAtZero(NoiseModel::normal(1.0)) == doctest::Approx(0.3989422804).epsilon(1e-10));
  CHECK(densityAtZero(NoiseModel::normal(1.0 / std::sqrt(2.0 * M_PI))) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(densityAtZero(NoiseModel::uniform(2.0)) == 0.25);
  CHECK(densityAtZero(NoiseModel::logistic(0.25)) == 1.0);
  CHECK(densityAtZero(NoiseModel::laplace(0.5)) == 1.0);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(NoiseModel::normal(0.0), ParameterError);
  CHECK_THROWS_AS(NoiseModel::normal(-1.0), ParameterError);
  CHECK_THROWS_AS(NoiseModel::uniform(std::nan("")), ParameterError);
  CHECK_THROWS_AS(NoiseModel::laplace(INFINITY), ParameterError);
  CHECK_THROWS_AS(quantile(NoiseModel::normal(1.0), 0.0), DomainError);
}

TEST_CASE("cdf examples") {
  for (const auto& m : allFamilies()) CHECK(cdf(m, 0.0) == 0.5);
  // High-precision oracle: Phi(1) = erfc(-1/sqrt 2) / 2.
  const Big phi1 = boost::multiprecision::erfc(-1 / boost::multiprecision::sqrt(Big(2))) / 2;
  CHECK(cdf(NoiseModel::normal(1.0), 1.0) == doctest::Approx(static_cast<double>(phi1)).epsilon(1e-14));
  CHECK(cdf(NoiseModel::normal(1.0), 1.0) == doctest::Approx(0.8413447).epsilon(1e-7));
  CHECK(cdf(NoiseModel::uniform(2.0), 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(cdf(NoiseModel::uniform(2.0), 3.0) == 1.0);
  CHECK(cdf(NoiseModel::uniform(2.0), -3.0) == 0.0);
}

TEST_CASE("symmetry, unimodality and monotone cdf") {
  for (const auto& m : allFamilies()) {
    double prevDensity = density(m, 0.0);
    double prevCdf = 0.5;
    for (double x = 0.01; x < 6.0; x += 0.01) {
      CHECK(density(m, x) == doctest::Approx(density(m, -x)).epsilon(1e-14));
      CHECK(cdf(m, x) + cdf(m, -x) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(density(m, x) <= prevDensity + 1e-15);
      CHECK(cdf(m, x) >= prevCdf);
      prevDensity = density(m, x);
      prevCdf = cdf(m, x);
    }
  }
}

TEST_CASE("density integrates to one") {
  for (const auto& m : allFamilies()) {
    const double lim = std::isfinite(m.supportUpper()) ? m.supportUpper() : 60.0 * m.parameter();
    // Split at 0 so the Laplace kink sits on a node.
    const double total = simpson([&](double x) { return density(m, x); }, -lim, 0.0, 200000) +
                         simpson([&](double x) { return density(m, x); }, 0.0, lim, 200000);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("quantile inverts cdf") {
  for (const auto& m : allFamilies()) {
    for (int i = 1; i <= 99; ++i) {
      const double p = i / 100.0;
      CHECK(std::abs(cdf(m, quantile(m, p)) - p) < 1e-10);
    }
    const double lim = std::isfinite(m.supportUpper()) ? 0.99 * m.supportUpper() : 5.0 * m.parameter();
    for (double x = -lim; x <= lim; x += lim / 50.0) {
      CHECK(std::abs(quantile(m, cdf(m, x)) - x) < 1e-10 * std::max(1.0, std::abs(x)) * 10);
    }
  }
}

TEST_CASE("densityAtZero matches a finite difference of the cdf") {
  for (const auto& m : allFamilies()) {
    const double h = 1e-7 * m.parameter();
    const double fd = (cdf(m, h) - cdf(m, -h)) / (2.0 * h);
    CHECK(std::abs(fd - densityAtZero(m)) < 1e-6 * std::max(1.0, densityAtZero(m)));
  }
}

TEST_CASE("sampleDelta moments and determinism") {
  const auto m = NoiseModel::normal(1.0);
  const int n = 1'000'000;
  double sum = 0.0;
  int negative = 0;
  for (int i = 0; i < n; ++i) {
    const double d = sampleDelta(m, 7, static_cast<std::uint64_t>(i));
    sum += d;
    negative += d < 0.0;
  }
  CHECK(std::abs(sum / n) <= 0.004);
  CHECK(negative / double(n) >= 0.4985);
  CHECK(negative / double(n) <= 0.5015);

  for (std::uint64_t i = 0; i < 1000; ++i) CHECK(sampleDelta(m, 99, i) == sampleDelta(m, 99, i));
  CHECK(sampleDelta(m, 1, 0) != sampleDelta(m, 2, 0));
}

TEST_CASE("Kolmogorov-Smirnov distance of samples") {
  for (const auto& m : allFamilies()) {
    std::vector<double> xs;
    for (std::uint64_t i = 0; i < 100'000; ++i) xs.push_back(sampleDelta(m, 2024, i));
    CHECK(ksDistance(xs, m) < 0.01);
  }
}

TEST_CASE("per-trader draws reproduce the Delta law") {
  for (const auto& m : allFamilies()) {
    if (!hasPerTraderLaw(m)) {
      CHECK_THROWS_AS(samplePerTrader(m, 0.5), UnsupportedFamilyError);
      continue;
    }
    std::vector<double> xs;
    for (std::uint64_t i = 0; i < 100'000; ++i) {
      xs.push_back(samplePerTrader(m, openUniform({5, i, 0, 0})) -
                   samplePerTrader(m, openUniform({5, i, 0, 1})));
    }
    CHECK(ksDistance(xs, m) < 0.01);
  }
}
