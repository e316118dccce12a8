#pragma once

#include "tsd/bench.hpp"
#include "tsd/branch_and_bound.hpp"
#include "tsd/brute_force.hpp"
#include "tsd/cutting_plane.hpp"
#include "tsd/dp_solver.hpp"
#include "tsd/event_graph.hpp"
#include "tsd/event_graph_json.hpp"
#include "tsd/generators.hpp"
#include "tsd/graph.hpp"
#include "tsd/heuristic.hpp"
#include "tsd/ilp_model.hpp"
#include "tsd/instance_stats.hpp"
#include "tsd/location_graph.hpp"
#include "tsd/random.hpp"
#include "tsd/reduction.hpp"
#include "tsd/render_svg.hpp"
#include "tsd/solve.hpp"
#include "tsd/tree_decomposition.hpp"
