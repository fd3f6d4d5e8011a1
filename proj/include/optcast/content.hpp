#pragma once

#include <cstdint>
#include <vector>

#include "optcast/capacity.hpp"
#include "optcast/graph.hpp"

namespace optcast {

struct PacketSimParams {
  double packet_size = 1.0;  // Mbit per packet; 1 makes rates packets/slot
  double dt = 1.0;
  long slots = 4000;
  double burst_cap = 0.0;  // token credit ceiling per edge; <= 0: auto
  bool randomized_ties = false;
  std::uint64_t seed = 0;  // only consulted when randomized_ties is set
};

struct Transfer {
  EdgeId edge;
  long packet;
};
using TransferPlan = std::vector<Transfer>;

/// Per-node packet buffers plus per-edge token credit. The source mints
/// consecutive sequence numbers at the start of each slot; transfers planned
/// within a slot read the slot-start buffers and land at the end of it.
class PacketWorld {
 public:
  PacketWorld(const OverlayGraph& g, const RateAllocation& rates, double source_rate,
              const PacketSimParams& params);

  /// Slot prologue: fills edge credit (clamped to the burst cap) and mints
  /// the source's new packets.
  void begin_slot();

  /// Moves the planned packets and burns tokens; counts invariant breaches
  /// instead of throwing so a faulty plan is observable.
  void apply(const TransferPlan& plan);

  long generated() const { return generated_; }
  bool holds(NodeId v, long packet) const;
  long held_count(NodeId v) const { return held_count_[static_cast<std::size_t>(v)]; }
  double credit(EdgeId e) const { return credit_[e]; }
  int whole_tokens(EdgeId e) const { return static_cast<int>(credit_[e]); }

  long causality_breaches = 0;   // packet beyond what the source generated
  long locality_breaches = 0;    // packet absent from the sender's buffer
  long token_overdrafts = 0;     // more transfers than whole tokens on an edge
  long duplicate_deliveries = 0; // receiver already held the packet

 private:
  friend TransferPlan schedule_contents(const PacketWorld&, const OverlayGraph&,
                                        const IndexAssignment&, std::uint64_t*);
  const OverlayGraph* g_;
  Vec fill_;      // tokens gained per slot, per edge
  Vec credit_;
  double burst_;
  double source_fill_;
  double source_credit_ = 0.0;
  long generated_ = 0;
  std::vector<std::vector<std::uint64_t>> held_;  // per-node packet bitset
  std::vector<long> held_count_;
};

/// One slot of greedy coordination: receivers in ascending topological index
/// pull, per in-neighbor with tokens, packets the neighbor holds and they
/// miss, rarest among the receiver's in-neighborhood first, ties to the
/// lowest sequence number (or the seeded generator when provided). Never
/// exceeds whole-token budgets, never assigns one packet to a receiver twice.
TransferPlan schedule_contents(const PacketWorld& world, const OverlayGraph& g,
                               const IndexAssignment& order, std::uint64_t* tie_seed = nullptr);

struct NodeRate {
  NodeId node;
  long packets_in_window;
  double measured_rate;
  double target_rate;
  double ratio;
};

struct PacketSimReport {
  std::vector<NodeRate> per_node;  // every node; the source row counts mints
  bool invalid_rate = false;       // source rate exceeds some receiver's min cut
  double min_cut_bound = 0.0;
  long invariant_breaches = 0;
};

/// Fixed-rate packet simulation: the source emits at source_rate, every slot
/// applies schedule_contents, and rates are measured over the second half of
/// the horizon. If source_rate exceeds the worst receiver min-cut under
/// `rates` the report is flagged but the run still completes.
PacketSimReport run_packet_sim(const OverlayGraph& g, const RateAllocation& rates,
                               double source_rate, const PacketSimParams& params);

}  // namespace optcast
