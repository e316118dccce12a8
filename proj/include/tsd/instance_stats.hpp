#pragma once

#include "json.hpp"
#include "tsd/event_graph.hpp"
#include "tsd/location_graph.hpp"

namespace tsd {

/// Size summary of a normalized instance.
inline nlohmann::json instance_stats(const EventGraph& g) {
  const auto aug = build_augmented(g);
  const auto rm = extract_restrictions(g);
  return {{"locations", g.location_count()},
          {"trains", g.train_count()},
          {"events", g.event_count()},
          {"restrictions", rm.total_multiplicity()},
          {"distinct_restrictions", rm.restrictions.size()},
          {"excluded_reversal_triplets", rm.excluded_reversals},
          {"location_graph_edges", aug.base.weights.size()},
          {"augmented_edges", aug.graph().edge_count()}};
}

}  // namespace tsd
