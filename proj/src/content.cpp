#include "optcast/content.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "optcast/flow.hpp"

namespace optcast {
namespace {

bool bit(const std::vector<std::uint64_t>& words, long p) {
  const std::size_t w = static_cast<std::size_t>(p >> 6);
  return w < words.size() && (words[w] >> (p & 63)) & 1u;
}

void set_bit(std::vector<std::uint64_t>& words, long p) {
  const std::size_t w = static_cast<std::size_t>(p >> 6);
  if (w >= words.size()) words.resize(w + 1, 0);
  words[w] |= std::uint64_t{1} << (p & 63);
}

}  // namespace

PacketWorld::PacketWorld(const OverlayGraph& g, const RateAllocation& rates, double source_rate,
                         const PacketSimParams& params)
    : g_(&g) {
  if (rates.size() != g.edge_count()) throw DimensionMismatch("rate vector size mismatch");
  if (rates.minCoeff() < 0.0) throw std::invalid_argument("rates must be nonnegative");
  if (!(params.packet_size > 0.0) || !(params.dt > 0.0))
    throw std::invalid_argument("packet_size and dt must be positive");

  fill_ = rates * (params.dt / params.packet_size);
  credit_ = Vec::Zero(g.edge_count());
  source_fill_ = source_rate * params.dt / params.packet_size;
  const double max_fill = std::max(source_fill_, fill_.size() ? fill_.maxCoeff() : 0.0);
  burst_ = params.burst_cap > 0.0 ? params.burst_cap : std::max(2.0, 2.0 * max_fill);
  held_.resize(static_cast<std::size_t>(g.node_count()));
  held_count_.assign(static_cast<std::size_t>(g.node_count()), 0);
}

void PacketWorld::begin_slot() {
  credit_ = (credit_ + fill_).cwiseMin(burst_);
  source_credit_ = std::min(source_credit_ + source_fill_, burst_);
  while (source_credit_ >= 1.0) {
    set_bit(held_[static_cast<std::size_t>(g_->source())], generated_);
    ++held_count_[static_cast<std::size_t>(g_->source())];
    ++generated_;
    source_credit_ -= 1.0;
  }
}

bool PacketWorld::holds(NodeId v, long packet) const {
  return bit(held_[static_cast<std::size_t>(v)], packet);
}

void PacketWorld::apply(const TransferPlan& plan) {
  std::vector<int> used(static_cast<std::size_t>(g_->edge_count()), 0);
  for (const Transfer& t : plan) {
    const Edge& e = g_->edge(t.edge);
    if (t.packet < 0 || t.packet >= generated_) {
      ++causality_breaches;
      continue;
    }
    if (!holds(e.from, t.packet)) {
      ++locality_breaches;
      continue;
    }
    if (++used[static_cast<std::size_t>(t.edge)] > whole_tokens(t.edge)) {
      ++token_overdrafts;
      continue;
    }
    if (holds(e.to, t.packet)) {
      ++duplicate_deliveries;
      continue;
    }
    set_bit(held_[static_cast<std::size_t>(e.to)], t.packet);
    ++held_count_[static_cast<std::size_t>(e.to)];
  }
  for (EdgeId e = 0; e < g_->edge_count(); ++e)
    credit_[e] -= static_cast<double>(std::min(used[static_cast<std::size_t>(e)], whole_tokens(e)));
}

TransferPlan schedule_contents(const PacketWorld& world, const OverlayGraph& g,
                               const IndexAssignment& order, std::uint64_t* tie_seed) {
  TransferPlan plan;
  std::mt19937_64 rng(tie_seed ? *tie_seed : 0);

  const std::size_t words = static_cast<std::size_t>((world.generated() >> 6) + 1);
  std::vector<std::uint64_t> assigned(words), eligible(words);

  for (NodeId v : order.node_at) {
    if (v == g.source() || g.in_edges(v).empty()) continue;
    std::fill(assigned.begin(), assigned.end(), 0);

    // In-neighbors in ascending sender id for a stable pull order.
    std::vector<EdgeId> in = g.in_edges(v);
    std::sort(in.begin(), in.end(),
              [&g](EdgeId a, EdgeId b) { return g.edge(a).from < g.edge(b).from; });

    const auto& mine = world.held_[static_cast<std::size_t>(v)];
    for (EdgeId e : in) {
      const NodeId u = g.edge(e).from;
      int budget = world.whole_tokens(e);
      const auto& theirs = world.held_[static_cast<std::size_t>(u)];
      while (budget > 0) {
        for (std::size_t w = 0; w < words; ++w) {
          const std::uint64_t have = w < theirs.size() ? theirs[w] : 0;
          const std::uint64_t skip =
              (w < mine.size() ? mine[w] : 0) | assigned[w];
          eligible[w] = have & ~skip;
        }
        // Rarest first: fewest of v's in-neighbors hold it; ties to the
        // lowest sequence number unless the randomized mode is on.
        long best = -1;
        int best_count = std::numeric_limits<int>::max();
        std::vector<long> tied;
        for (std::size_t w = 0; w < words; ++w) {
          std::uint64_t bits = eligible[w];
          while (bits) {
            const int b = std::countr_zero(bits);
            bits &= bits - 1;
            const long p = (static_cast<long>(w) << 6) | b;
            int count = 0;
            for (EdgeId e2 : in)
              if (bit(world.held_[static_cast<std::size_t>(g.edge(e2).from)], p)) ++count;
            if (count < best_count) {
              best_count = count;
              best = p;
              tied.assign(1, p);
            } else if (count == best_count && tie_seed) {
              tied.push_back(p);
            }
          }
          if (best_count == 1 && !tie_seed) break;  // cannot beat a unique holder
        }
        if (best < 0) break;
        if (tie_seed && tied.size() > 1)
          best = tied[static_cast<std::size_t>(rng() % tied.size())];
        plan.push_back({e, best});
        set_bit(assigned, best);
        --budget;
      }
    }
  }
  if (tie_seed) *tie_seed = rng();  // advance the stream for the next slot
  return plan;
}

PacketSimReport run_packet_sim(const OverlayGraph& g, const RateAllocation& rates,
                               double source_rate, const PacketSimParams& params) {
  if (params.slots < 2) throw std::invalid_argument("need at least 2 slots");

  PacketSimReport report;
  report.min_cut_bound = std::numeric_limits<double>::infinity();
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (v != g.source())
      report.min_cut_bound = std::min(report.min_cut_bound, min_cut(g, rates, v).value);
  report.invalid_rate = source_rate > report.min_cut_bound + 1e-9;

  PacketWorld world(g, rates, source_rate, params);
  const IndexAssignment order = topological_index(g);
  std::uint64_t seed = params.seed;

  const long mid = params.slots / 2;
  std::vector<long> held_mid(static_cast<std::size_t>(g.node_count()), 0);
  for (long slot = 0; slot < params.slots; ++slot) {
    world.begin_slot();
    const TransferPlan plan =
        schedule_contents(world, g, order, params.randomized_ties ? &seed : nullptr);
    world.apply(plan);
    if (slot + 1 == mid)
      for (NodeId v = 0; v < g.node_count(); ++v)
        held_mid[static_cast<std::size_t>(v)] = world.held_count(v);
  }

  const double window_time = static_cast<double>(params.slots - mid) * params.dt;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const long got = world.held_count(v) - held_mid[static_cast<std::size_t>(v)];
    const double rate = static_cast<double>(got) * params.packet_size / window_time;
    report.per_node.push_back(
        {v, got, rate, source_rate, source_rate > 0.0 ? rate / source_rate : 0.0});
  }
  report.invariant_breaches = world.causality_breaches + world.locality_breaches +
                              world.token_overdrafts + world.duplicate_deliveries;
  return report;
}

}  // namespace optcast
