#include "seqlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "seqlab/analysis.hpp"
#include "seqlab/equilibrium.hpp"
#include "seqlab/errors.hpp"
#include "seqlab/montecarlo.hpp"
#include "seqlab/specs.hpp"

namespace seqlab::cli {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kCommands = {"equilibrium", "compare", "sweep",
                                            "simulate",    "verify",  "optimal-c"};

struct Options {
  double v = 1.0;
  int chains = 0;  // 0: command default
  double alpha = 1.0;
  std::string cost = "power:2";
  std::string noise = "normal:1";
  std::string cap;
  std::string signals;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 0;
  std::vector<std::string> grid;
  std::string format = "table";
  std::string out;
  std::string config;
  std::string valueDist;
  double g = 1.0;
  std::string interpretation;
  std::string method = "analytic";
  std::string deviations;
};

// Results are reported with 12 significant digits.
double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json number(double x) { return std::isfinite(x) ? Json(round12(x)) : Json(nullptr); }

std::string formatNumber(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// Config files: either a JSON document previously emitted by this tool or
// flat "key = value" lines with '#' comments.

struct ConfigFile {
  std::optional<std::string> command;
  std::vector<std::pair<std::string, std::string>> entries;
};

std::string trim(std::string s) {
  const auto notSpace = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notSpace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notSpace).base(), s.end());
  return s;
}

std::string scalarText(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

ConfigFile loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  ConfigFile cfg;
  const auto firstNonSpace = text.find_first_not_of(" \t\r\n");
  if (firstNonSpace != std::string::npos && text[firstNonSpace] == '{') {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (doc.contains("command")) cfg.command = doc["command"].get<std::string>();
    const Json& params = doc.contains("params") ? doc["params"] : doc;
    for (const auto& [key, value] : params.items()) {
      if (key == "command") continue;
      if (value.is_array()) {
        for (const auto& item : value) cfg.entries.emplace_back(key, scalarText(item));
      } else if (!value.is_null()) {
        cfg.entries.emplace_back(key, scalarText(value));
      }
    }
    return cfg;
  }

  std::istringstream lines(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(lines, line)) {
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineNo) + " '" + line +
                        "' is not key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.starts_with("--")) key.erase(0, 2);
    if (key == "command") {
      cfg.command = value;
    } else {
      cfg.entries.emplace_back(key, value);
    }
  }
  return cfg;
}

// Rewrites argv so config entries come first and explicit flags override them.
std::vector<std::string> expandArgs(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> configPath;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a file path");
      configPath = args[++i];
    } else if (args[i].starts_with("--config=")) {
      configPath = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }

  std::optional<std::string> command;
  if (!rest.empty() && std::find(kCommands.begin(), kCommands.end(), rest.front()) != kCommands.end()) {
    command = rest.front();
    rest.erase(rest.begin());
  }
  if (!configPath) {
    if (command) rest.insert(rest.begin(), *command);
    return rest;
  }

  const ConfigFile cfg = loadConfig(*configPath);
  if (!command) command = cfg.command;
  if (!command) throw ConfigError("no command given on the command line or in the config file");
  std::vector<std::string> expanded = {*command};
  for (const auto& [key, value] : cfg.entries) {
    expanded.push_back("--" + key);
    expanded.push_back(value);
  }
  expanded.insert(expanded.end(), rest.begin(), rest.end());
  return expanded;
}

// ---------------------------------------------------------------------------
// Parsed models.

struct Models {
  CostModel cost = CostModel::power(2.0);
  NoiseModel noise = NoiseModel::normal(1.0);
};

Models buildModels(const Options& o) {
  Models m{specs::parseCost(o.cost), specs::parseNoise(o.noise)};
  if (!o.cap.empty()) {
    const double cap = specs::parseReal(o.cap, "--cap");
    try {
      m.cost = m.cost.withCap(cap);
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("--cap ") + o.cap + ": " + e.what());
    }
  }
  return m;
}

MarketConfig buildMarket(const Options& o) {
  MarketConfig m{o.v, o.chains, o.alpha};
  try {
    m.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  return m;
}

std::optional<Interpretation> parseInterpretation(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "waste") return Interpretation::Waste;
  if (s == "revenue") return Interpretation::Revenue;
  throw ConfigError("--interpretation must be waste or revenue, got '" + s + "'");
}

// ---------------------------------------------------------------------------
// JSON views of results.

Json toJson(const EquilibriumResult& r) {
  Json j;
  j["signal"] = number(r.signal);
  j["per_chain_cost"] = number(r.perChainCost);
  j["total_cost"] = number(r.totalCostPerTrader);
  j["capture_probability"] = number(r.captureProbability);
  j["expected_profit"] = number(r.expectedProfit);
  j["regime"] = toString(r.regime);
  j["participation"] = r.participationSatisfied;
  j["candidate_signal"] = number(r.candidateSignal);
  j["chains"] = r.nChains;
  j["alpha"] = number(r.alpha);
  return j;
}

Json toJson(const ComparisonReport& r) {
  Json j;
  j["shared"] = toJson(r.sharedResult);
  j["separate"] = toJson(r.separateResult);
  j["shared_expenditure"] = number(r.sharedTotalExpenditure);
  j["separate_expenditure"] = number(r.separateTotalExpenditure);
  j["ratio"] = r.expenditureRatio ? number(*r.expenditureRatio) : Json(nullptr);
  j["interpretation"] = toString(r.interpretation);
  j["capture_probability_shared"] = number(r.captureProbabilityShared);
  j["capture_probability_separate"] = number(r.captureProbabilitySeparate);
  if (r.thresholds.available) {
    const auto& t = r.thresholds;
    j["thresholds"] = {{"rule", t.rule},
                       {"shared_bound", number(t.sharedBound)},
                       {"separate_bound", number(t.separateBound)},
                       {"shared_displayed_holds", t.sharedDisplayedHolds},
                       {"separate_displayed_holds", t.separateDisplayedHolds},
                       {"shared_direct_holds", t.sharedDirectHolds},
                       {"separate_direct_holds", t.separateDirectHolds}};
  }
  return j;
}

Json compareJson(const ComparisonReport& report, double v, double alpha, const Models& m) {
  Json j = toJson(report);
  const double f0 = densityAtZero(m.noise);
  if (const auto* p = std::get_if<PowerCost>(&m.cost.family());
      p && m.cost.cap() && alpha == 1.0) {
    const auto capped = cappedRevenueComparison(v, p->beta, f0, *m.cost.cap());
    j["capped"] = {{"shared_per_trader", number(capped.sharedPerTrader)},
                   {"separate_per_trader", number(capped.separatePerTrader)},
                   {"condition_bound", number(capped.conditionBound)},
                   {"condition_holds", capped.conditionHolds},
                   {"separate_exceeds_shared", capped.separateExceedsShared}};
  }
  if (const auto* tb = std::get_if<TimeBoostCost>(&m.cost.family()); tb && m.noise.isNormal()) {
    const auto t = timeboostRevenueThreshold(m.noise, tb->c, tb->g);
    j["timeboost_threshold"] = {{"constant", number(t.thresholdConstant)},
                                {"separate_beats", t.separateBeats(v)}};
  }
  return j;
}

// ---------------------------------------------------------------------------
// Output rendering.

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  std::string text;
  if (j.is_null()) {
    text = "";
  } else if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_boolean()) {
    text = j.get<bool>() ? "true" : "false";
  } else if (j.is_number_float()) {
    text = formatNumber(j.get<double>());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      std::vector<std::pair<std::string, std::string>> item;
      flatten(j[i], "", item);
      if (i) text += "/";
      text += item.empty() ? "" : item.front().second;
    }
  } else {
    text = j.dump();
  }
  out.emplace_back(prefix, text);
}

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string render(const std::string& command, const Json& params, const Json& result,
                   const std::string& format) {
  if (format == "json") {
    Json doc;
    doc["command"] = command;
    doc["params"] = params;
    doc["result"] = result;
    return doc.dump(2) + "\n";
  }

  std::vector<Json> rows;
  if (result.contains("rows")) {
    for (const auto& r : result["rows"]) rows.push_back(r);
  } else {
    rows.push_back(result);
  }
  std::vector<std::vector<std::pair<std::string, std::string>>> flat;
  for (const auto& r : rows) {
    flat.emplace_back();
    flatten(r, "", flat.back());
  }

  std::ostringstream os;
  if (format == "csv") {
    if (!flat.empty()) {
      for (std::size_t i = 0; i < flat[0].size(); ++i) {
        os << (i ? "," : "") << csvField(flat[0][i].first);
      }
      os << "\n";
    }
    for (const auto& row : flat) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csvField(row[i].second);
      os << "\n";
    }
    return os.str();
  }

  // table
  os << command << "\n";
  if (flat.size() == 1) {
    std::size_t width = 0;
    for (const auto& [k, _] : flat[0]) width = std::max(width, k.size());
    for (const auto& [k, v] : flat[0]) {
      os << "  " << k << std::string(width - k.size() + 2, ' ') << v << "\n";
    }
    return os.str();
  }
  if (flat.empty()) return os.str();
  std::vector<std::size_t> widths(flat[0].size(), 0);
  for (std::size_t i = 0; i < flat[0].size(); ++i) widths[i] = flat[0][i].first.size();
  for (const auto& row : flat) {
    for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].second.size());
    }
  }
  for (std::size_t i = 0; i < flat[0].size(); ++i) {
    os << (i ? "  " : "") << flat[0][i].first << std::string(widths[i] - flat[0][i].first.size(), ' ');
  }
  os << "\n";
  for (const auto& row : flat) {
    for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
      os << (i ? "  " : "") << row[i].second << std::string(widths[i] - row[i].second.size(), ' ');
    }
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Commands. Each returns (params, result).

Json marketParams(const Options& o) {
  Json p;
  p["v"] = o.v;
  p["chains"] = o.chains;
  p["alpha"] = o.alpha;
  p["cost"] = o.cost;
  p["noise"] = o.noise;
  if (!o.cap.empty()) p["cap"] = o.cap;
  return p;
}

unsigned threadsFromEnv() {
  if (const char* env = std::getenv("SEQLAB_THREADS")) {
    const auto n = specs::parseInteger(env, "SEQLAB_THREADS");
    if (n < 0) throw ConfigError("SEQLAB_THREADS must be >= 0");
    return static_cast<unsigned>(n);
  }
  return 0;
}

std::pair<Json, Json> runEquilibrium(const Options& o) {
  const Models m = buildModels(o);
  const auto result = solveEquilibrium(buildMarket(o), m.cost, m.noise);
  return {marketParams(o), toJson(result)};
}

std::pair<Json, Json> runCompare(const Options& o) {
  const Models m = buildModels(o);
  const auto market = buildMarket(o);
  const auto report = compareExpenditure(market.v, m.cost, m.noise, market.alpha,
                                         parseInterpretation(o.interpretation), market.nChains);
  Json p = marketParams(o);
  if (!o.interpretation.empty()) p["interpretation"] = o.interpretation;
  return {p, compareJson(report, market.v, market.alpha, m)};
}

std::pair<Json, Json> runSweep(const Options& o) {
  const Models m = buildModels(o);
  const auto market = buildMarket(o);
  SweepBase base;
  base.v = market.v;
  base.alpha = market.alpha;
  base.separateChains = market.nChains;
  base.cost = m.cost;
  base.noise = m.noise;
  base.interpretation = parseInterpretation(o.interpretation);
  std::vector<GridAxis> axes;
  for (const auto& g : o.grid) axes.push_back(specs::parseGridAxis(g));

  Json rows = Json::array();
  for (const auto& row : sweep(base, axes)) {
    Json r;
    for (const auto& [name, value] : row.point) r[name] = number(value);
    const Json cmp = compareJson(row.report, row.v, row.alpha, Models{row.cost, row.noise});
    for (const auto& [key, value] : cmp.items()) r[key] = value;
    rows.push_back(std::move(r));
  }
  Json p = marketParams(o);
  if (!o.interpretation.empty()) p["interpretation"] = o.interpretation;
  p["grid"] = o.grid;
  return {p, Json{{"rows", rows}}};
}

std::pair<Json, Json> runSimulate(const Options& o) {
  const Models m = buildModels(o);
  SimulationSpec spec;
  spec.market = buildMarket(o);
  spec.cost = m.cost;
  spec.noise = m.noise;
  spec.trials = o.trials;
  spec.seed = o.seed;
  spec.threads = threadsFromEnv();
  spec.signals = specs::parseSignals(o.signals, o.chains);
  const auto stats = simulate(spec);

  Json r;
  r["trials"] = stats.trials;
  for (int i = 0; i < 2; ++i) {
    const std::string t = std::to_string(i + 1);
    r["capture_count_" + t] = stats.captureCount[i];
    r["capture_probability_" + t] = number(stats.captureProbability[i].mean);
    r["capture_probability_" + t + "_half_width"] = number(stats.captureProbability[i].halfWidth);
    r["mean_payoff_" + t] = number(stats.meanPayoff[i].mean);
    r["mean_payoff_" + t + "_half_width"] = number(stats.meanPayoff[i].halfWidth);
    r["analytic_payoff_" + t] = number(
        analyticPayoff(spec.signals[i], spec.signals[1 - i], spec.market, spec.cost, spec.noise));
  }
  r["chain_wins_1"] = stats.perChainWinCounts;

  Json p = marketParams(o);
  p["signals"] = o.signals;
  p["trials"] = o.trials;
  p["seed"] = o.seed;
  return {p, r};
}

std::pair<Json, Json> runVerify(const Options& o) {
  const Models m = buildModels(o);
  const auto market = buildMarket(o);
  const auto candidate = solveEquilibrium(market, m.cost, m.noise);

  VerifyMode mode = VerifyMode::Analytic;
  if (o.method == "montecarlo") {
    mode = VerifyMode::MonteCarlo;
  } else if (o.method != "analytic") {
    throw ConfigError("--method must be analytic or montecarlo, got '" + o.method + "'");
  }
  std::vector<double> grid;
  if (o.deviations.empty()) {
    grid = defaultDeviationGrid(candidate.signal, m.cost);
  } else {
    grid = specs::parseGridAxis("deviations=" + o.deviations).values();
  }
  SimulationSpec spec = SimulationSpec::symmetric(candidate.signal, market, m.cost, m.noise,
                                                  o.trials, o.seed);
  spec.threads = threadsFromEnv();
  const auto check = verifyBestResponse(candidate, spec, grid, mode);

  Json r;
  r["candidate"] = toJson(candidate);
  r["method"] = o.method;
  r["max_gain"] = number(check.maxGain);
  Json dev = Json::array();
  for (double x : check.argmaxDeviation) dev.push_back(number(x));
  r["argmax_deviation"] = dev;
  r["epsilon"] = number(check.epsilon);
  r["is_epsilon_equilibrium"] = check.isEpsilonEquilibrium;
  r["deviations_evaluated"] = check.deviationsEvaluated;

  Json p = marketParams(o);
  p["method"] = o.method;
  if (!o.deviations.empty()) p["deviations"] = o.deviations;
  p["trials"] = o.trials;
  p["seed"] = o.seed;
  return {p, r};
}

std::pair<Json, Json> runOptimalC(const Options& o) {
  if (o.valueDist.empty()) throw ConfigError("optimal-c requires --value-dist");
  const auto dist = specs::parseValueDistribution(o.valueDist);
  const auto noise = specs::parseNoise(o.noise);
  const double f0 = densityAtZero(noise);
  if (!(o.g > 0.0)) throw ConfigError("--g must be > 0");
  if (o.g * f0 > 4.0) throw ConfigError("optimal-c requires g * f0 <= 4");
  const auto shared = optimalC(dist, o.g, f0, SequencingMode::Shared);
  const auto separate = optimalC(dist, o.g, f0, SequencingMode::Separate);

  Json r;
  r["shared"] = {{"c_star", number(shared.cStar)},
                 {"ex_ante_revenue", number(shared.exAnteRevenue)}};
  r["separate"] = {{"c_star", number(separate.cStar)},
                   {"ex_ante_revenue", number(separate.exAnteRevenue)}};
  r["revenue_gap"] = number(shared.exAnteRevenue - separate.exAnteRevenue);
  Json p;
  p["value-dist"] = o.valueDist;
  p["g"] = o.g;
  p["noise"] = o.noise;
  return {p, r};
}

// ---------------------------------------------------------------------------
// Flag registration.

void addOutput(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", o.out, "Write output to this file instead of stdout");
  sub->add_option("--config", o.config,
                  "Read flags from a key = value file or a JSON output of this tool");
}

void addMarket(CLI::App* sub, Options& o, const std::string& chainsHelp,
               const std::string& defaultChains) {
  sub->add_option("--v", o.v, "Value of the arbitrage to each trader")->capture_default_str();
  sub->add_option("--chains", o.chains, chainsHelp)->default_str(defaultChains);
  sub->add_option("--alpha", o.alpha, "Fraction of the cost paid when losing a race")
      ->capture_default_str();
  sub->add_option("--cost", o.cost, "Cost model: power:<beta> or timeboost:c=<c>,g=<g>[,cap=<s>]")
      ->capture_default_str();
  sub->add_option("--noise", o.noise,
                  "Noise difference law: normal|logistic|laplace|uniform:<param>")
      ->capture_default_str();
  sub->add_option("--cap", o.cap, "Hard cap on the signal (overrides a cap in --cost)");
}

void addSampling(CLI::App* sub, Options& o) {
  sub->add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed of the counter-based generator")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"seqlab: equilibria of cross-chain arbitrage races under shared vs separate sequencing",
               "seqlab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  auto* eq = app.add_subcommand("equilibrium", "Symmetric equilibrium for one market");
  addMarket(eq, o, "Chains a trader must win (1 = shared sequencer)", "1");
  addOutput(eq, o);

  auto* cmp = app.add_subcommand("compare", "Shared vs separate expenditure comparison");
  addMarket(cmp, o, "Chains in the separate-sequencer game", "2");
  cmp->add_option("--interpretation", o.interpretation,
                  "Label expenditure as waste or revenue (default from the cost model)");
  addOutput(cmp, o);

  auto* sw = app.add_subcommand("sweep", "Grid of shared vs separate comparisons");
  addMarket(sw, o, "Chains in the separate-sequencer game", "2");
  sw->add_option("--interpretation", o.interpretation,
                 "Label expenditure as waste or revenue (default from the cost model)");
  sw->add_option("--grid", o.grid,
                 "Axis <v|beta|c|g|sigma|alpha|chains|cap>=<start>:<step>:<stop> (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  addOutput(sw, o);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo race simulation");
  addMarket(sim, o, "Chains a trader must win", "1");
  sim->add_option("--signals", o.signals,
                  "Trader signals 's1,s2'; per-chain values separated by '/'")
      ->required();
  addSampling(sim, o);
  addOutput(sim, o);

  auto* ver = app.add_subcommand("verify", "Best-response check of the computed equilibrium");
  addMarket(ver, o, "Chains a trader must win", "1");
  ver->add_option("--method", o.method, "analytic or montecarlo")->capture_default_str();
  ver->add_option("--deviations", o.deviations,
                  "Deviation grid <start>:<step>:<stop> (default: 301-point adaptive grid)");
  addSampling(ver, o);
  addOutput(ver, o);

  auto* opt = app.add_subcommand("optimal-c", "Revenue-maximizing TimeBoost fee parameter");
  opt->add_option("--value-dist", o.valueDist,
                  "Trade value law: exp:<rate> | lognormal:<mu>,<sigma> | points:v1@w1,v2@w2");
  opt->add_option("--g", o.g, "TimeBoost maximal boost g")->capture_default_str();
  opt->add_option("--noise", o.noise, "Noise difference law (sets f(0))")->capture_default_str();
  addOutput(opt, o);

  try {
    std::vector<std::string> expanded = expandArgs(args);
    const bool optimalCommand = !expanded.empty() && expanded.front() == "optimal-c";
    for (const auto& a : expanded) {
      const bool isG = a == "--g" || a.starts_with("--g=");
      const bool isC = a == "--c" || a.starts_with("--c=");
      if (isC || (isG && !optimalCommand)) {
        throw ConfigError("flag '" + a + "' is not accepted; use --cost timeboost:c=<c>,g=<g>");
      }
    }
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
  } catch (const CLI::CallForHelp&) {
    for (auto* sub : app.get_subcommands()) {
      out << sub->help();
      return kExitOk;
    }
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (o.chains == 0) o.chains = (command == "compare" || command == "sweep") ? 2 : 1;
  try {
    std::pair<Json, Json> pr;
    if (command == "equilibrium") pr = runEquilibrium(o);
    if (command == "compare") pr = runCompare(o);
    if (command == "sweep") pr = runSweep(o);
    if (command == "simulate") pr = runSimulate(o);
    if (command == "verify") pr = runVerify(o);
    if (command == "optimal-c") pr = runOptimalC(o);
    pr.first["format"] = o.format;
    const std::string text = render(command, pr.first, pr.second, o.format);
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) throw ConfigError("cannot write output file '" + o.out + "'");
      file << text;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const UnsupportedFamilyError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  }
}

}  // namespace seqlab::cli
