#pragma once

#include "optcast/capacity.hpp"
#include "optcast/graph.hpp"
#include "optcast/lp.hpp"

namespace optcast {

struct BroadcastRate {
  double rate = 0.0;       // B (Mbps)
  RateAllocation rates;    // an optimizing link-rate allocation
};

/// Maximum broadcast rate as max over feasible r of the minimum
/// source-receiver cut, linearized into one LP with a per-receiver flow
/// bounded by r. Independent of the neighbor formulation it cross-checks.
BroadcastRate max_broadcast_rate_cut(const OverlayGraph& g, const CapacityModel& m);

/// Maximum broadcast rate from the neighbor-only formulation: every node's
/// total receiving rate covers each in-neighbor's receiving rate, plus the
/// injection z when that neighbor is the source.
BroadcastRate max_broadcast_rate_neighbor(const OverlayGraph& g, const CapacityModel& m);

}  // namespace optcast
