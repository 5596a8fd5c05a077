#pragma once

// Text forms of model specifications used by the command line and config
// files. Every parser throws ConfigError naming the offending token.
//
//   noise   normal:1.0 | logistic:0.5 | laplace:0.5 | uniform:2.0
//   cost    power:2.0 | timeboost:c=0.25,g=1.0   (optional ",cap=0.4")
//   values  exp:1.0 | lognormal:0,0.5 | points:1@0.5,2@0.5
//   grid    <axis>=<start>:<step>:<stop>
//   signals 0.25,0.25 | 0.3/0.2,0.25/0.25   (trader 1, trader 2; "/" splits chains)

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "seqlab/analysis.hpp"
#include "seqlab/cost.hpp"
#include "seqlab/noise.hpp"

namespace seqlab::specs {

double parseReal(std::string_view token, std::string_view what);
long long parseInteger(std::string_view token, std::string_view what);

NoiseModel parseNoise(std::string_view text);
CostModel parseCost(std::string_view text);
ValueDistribution parseValueDistribution(std::string_view text);
GridAxis parseGridAxis(std::string_view text);
std::array<std::vector<double>, 2> parseSignals(std::string_view text, int nChains);

}  // namespace seqlab::specs
