#pragma once

#include "faircd/graph/graph.hpp"
#include "faircd/graph/io.hpp"
#include "faircd/graph/partition.hpp"
#include "faircd/graph/properties.hpp"

#include "faircd/synth/homophilic.hpp"
#include "faircd/synth/lfr.hpp"
#include "faircd/synth/powerlaw.hpp"

#include "faircd/community_metrics.hpp"
#include "faircd/group_fairness.hpp"
#include "faircd/mapping.hpp"
#include "faircd/quality_metrics.hpp"

#include "faircd/cd/method.hpp"
#include "faircd/cd/modularity.hpp"

#include "faircd/bench/config.hpp"
#include "faircd/bench/runner.hpp"
#include "faircd/bench/scatter.hpp"
#include "faircd/bench/swap_experiment.hpp"
