#pragma once

#include "satcg/baselines.hpp"
#include "satcg/colgen.hpp"
#include "satcg/experiments.hpp"
#include "satcg/lp.hpp"
#include "satcg/master.hpp"
#include "satcg/pricing.hpp"
#include "satcg/prng.hpp"
#include "satcg/route.hpp"
#include "satcg/scenario.hpp"
#include "satcg/topology.hpp"
