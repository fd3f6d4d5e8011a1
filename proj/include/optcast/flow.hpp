#pragma once

#include <stdexcept>
#include <vector>

#include "optcast/capacity.hpp"
#include "optcast/graph.hpp"

namespace optcast {

struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A source-side witness partition: value equals the rate crossing from
/// source_side into the complement.
struct CutResult {
  double value = 0.0;
  std::vector<NodeId> source_side;  // sorted ascending, contains the source
};

/// Minimum s-v cut under per-edge capacities r, via BFS augmenting max-flow.
/// The reported value is the plain sum of r over the witness cut edges, so it
/// matches the brute-force enumeration bit for bit.
CutResult min_cut(const OverlayGraph& g, const RateAllocation& r, NodeId v);

/// Exhaustive enumeration of all s-v partitions (|V| <= 16). Witness is the
/// lexicographically smallest source side among minimizers.
CutResult brute_force_min_cut(const OverlayGraph& g, const RateAllocation& r, NodeId v);

}  // namespace optcast
