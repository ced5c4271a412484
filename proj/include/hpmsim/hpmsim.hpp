#pragma once

// Umbrella header.

#include "hpmsim/analyses.hpp"
#include "hpmsim/binomial.hpp"
#include "hpmsim/constants.hpp"
#include "hpmsim/core_physics.hpp"
#include "hpmsim/coupling.hpp"
#include "hpmsim/damage.hpp"
#include "hpmsim/io/dispatch.hpp"
#include "hpmsim/io/scenario.hpp"
#include "hpmsim/io/table.hpp"
#include "hpmsim/montecarlo.hpp"
#include "hpmsim/random.hpp"
#include "hpmsim/version.hpp"
#include "hpmsim/waveguide.hpp"
