#pragma once

// Umbrella header for the numerical library. The command-line layer
// (stieltjes/cli.hpp) is separate because it pulls in CLI11 and nlohmann/json.

#include "stieltjes/errors.hpp"
#include "stieltjes/precision.hpp"
#include "stieltjes/point.hpp"
#include "stieltjes/specfun.hpp"
#include "stieltjes/sawtooth.hpp"
#include "stieltjes/quadrature.hpp"
#include "stieltjes/series.hpp"
#include "stieltjes/oracle.hpp"
#include "stieltjes/identities.hpp"
