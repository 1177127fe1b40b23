#pragma once

// Umbrella header: total variation of graph distributional signals through
// the edge-centrality correspondence, with exact desk-scale oracles.

#include "disttv/centrality.hpp"
#include "disttv/geodesics.hpp"
#include "disttv/graph.hpp"
#include "disttv/io.hpp"
#include "disttv/joint.hpp"
#include "disttv/marginals.hpp"
#include "disttv/oracles.hpp"
#include "disttv/rational.hpp"
#include "disttv/sampling.hpp"
#include "disttv/simplex.hpp"
#include "disttv/subtrees.hpp"
#include "disttv/transport.hpp"
#include "disttv/tree_count.hpp"
#include "disttv/tv.hpp"
#include "disttv/verify.hpp"
