#include "seqlab/specs.hpp"

#include <charconv>
#include <cmath>
#include <optional>

#include "seqlab/errors.hpp"

namespace seqlab::specs {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::pair<std::string_view, std::string_view> splitOnce(std::string_view s, char sep,
                                                        std::string_view context) {
  const auto pos = s.find(sep);
  if (pos == std::string_view::npos) {
    throw ConfigError("malformed " + std::string(context) + " '" + std::string(s) +
                      "': expected '" + std::string(1, sep) + "'");
  }
  return {s.substr(0, pos), s.substr(pos + 1)};
}

// Wraps model-level ParameterError so callers see a config error that
// still names the original text.
template <class F>
auto asConfig(std::string_view text, F&& build) {
  try {
    return build();
  } catch (const ParameterError& e) {
    throw ConfigError("invalid spec '" + std::string(text) + "': " + e.what());
  }
}

}  // namespace

double parseReal(std::string_view token, std::string_view what) {
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ConfigError("invalid number '" + std::string(token) + "' for " + std::string(what));
  }
  return value;
}

long long parseInteger(std::string_view token, std::string_view what) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ConfigError("invalid integer '" + std::string(token) + "' for " + std::string(what));
  }
  return value;
}

NoiseModel parseNoise(std::string_view text) {
  const auto [family, param] = splitOnce(text, ':', "noise spec");
  const double p = parseReal(param, "noise parameter");
  return asConfig(text, [&] {
    if (family == "normal") return NoiseModel::normal(p);
    if (family == "logistic") return NoiseModel::logistic(p);
    if (family == "laplace") return NoiseModel::laplace(p);
    if (family == "uniform") return NoiseModel::uniform(p);
    throw ConfigError("unknown noise family '" + std::string(family) + "' in '" +
                      std::string(text) + "'");
  });
}

CostModel parseCost(std::string_view text) {
  const auto [family, rest] = splitOnce(text, ':', "cost spec");
  std::optional<double> cap;
  std::optional<double> beta;
  std::optional<double> c;
  std::optional<double> g;
  for (const auto part : split(rest, ',')) {
    if (part.starts_with("cap=")) {
      cap = parseReal(part.substr(4), "cost cap");
    } else if (family == "power" && !beta && part.find('=') == std::string_view::npos) {
      beta = parseReal(part, "power beta");
    } else if (family == "power" && part.starts_with("beta=")) {
      beta = parseReal(part.substr(5), "power beta");
    } else if (family == "timeboost" && part.starts_with("c=")) {
      c = parseReal(part.substr(2), "timeboost c");
    } else if (family == "timeboost" && part.starts_with("g=")) {
      g = parseReal(part.substr(2), "timeboost g");
    } else {
      throw ConfigError("unexpected token '" + std::string(part) + "' in cost spec '" +
                        std::string(text) + "'");
    }
  }
  return asConfig(text, [&] {
    if (family == "power") {
      if (!beta) throw ConfigError("cost spec '" + std::string(text) + "' is missing beta");
      return CostModel::power(*beta, cap);
    }
    if (family == "timeboost") {
      if (!c || !g) {
        throw ConfigError("cost spec '" + std::string(text) + "' needs both c= and g=");
      }
      return CostModel::timeBoost(*c, *g, cap);
    }
    throw ConfigError("unknown cost family '" + std::string(family) + "' in '" +
                      std::string(text) + "'");
  });
}

ValueDistribution parseValueDistribution(std::string_view text) {
  const auto [family, rest] = splitOnce(text, ':', "value distribution");
  return asConfig(text, [&]() -> ValueDistribution {
    if (family == "exp") {
      return ValueDistribution(ExponentialValues{parseReal(rest, "exponential rate")});
    }
    if (family == "lognormal") {
      const auto [mu, sigma] = splitOnce(rest, ',', "lognormal parameters");
      return ValueDistribution(
          LogNormalValues{parseReal(mu, "lognormal mu"), parseReal(sigma, "lognormal sigma")});
    }
    if (family == "points") {
      PointMassValues pm;
      for (const auto item : split(rest, ',')) {
        const auto [v, w] = splitOnce(item, '@', "point mass");
        pm.points.emplace_back(parseReal(v, "point value"), parseReal(w, "point weight"));
      }
      return ValueDistribution(pm);
    }
    throw ConfigError("unknown value distribution '" + std::string(family) + "' in '" +
                      std::string(text) + "'");
  });
}

GridAxis parseGridAxis(std::string_view text) {
  const auto [name, range] = splitOnce(text, '=', "grid spec");
  const auto parts = split(range, ':');
  if (parts.size() != 3) {
    throw ConfigError("grid spec '" + std::string(text) + "' must be <axis>=<start>:<step>:<stop>");
  }
  GridAxis axis{std::string(name), parseReal(parts[0], "grid start"),
                parseReal(parts[1], "grid step"), parseReal(parts[2], "grid stop")};
  (void)axis.values();
  return axis;
}

std::array<std::vector<double>, 2> parseSignals(std::string_view text, int nChains) {
  const auto traders = split(text, ',');
  if (traders.size() != 2) {
    throw ConfigError("--signals '" + std::string(text) + "' needs two comma-separated traders");
  }
  std::array<std::vector<double>, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto chains = split(traders[i], '/');
    if (chains.size() == 1) {
      out[i].assign(static_cast<std::size_t>(nChains), parseReal(chains[0], "signal"));
    } else if (chains.size() == static_cast<std::size_t>(nChains)) {
      for (const auto c : chains) out[i].push_back(parseReal(c, "signal"));
    } else {
      throw ConfigError("signals '" + std::string(traders[i]) + "' do not match " +
                        std::to_string(nChains) + " chains");
    }
  }
  return out;
}

}  // namespace seqlab::specs
