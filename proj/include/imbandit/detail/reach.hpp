#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "imbandit/graph.hpp"
#include "imbandit/rng.hpp"

namespace imbandit::detail {

/// Reusable visited-marks and queue for repeated BFS on one graph. Marks are
/// epoch-stamped so resetting is O(1).
class ReachScratch {
public:
    explicit ReachScratch(std::size_t n) : stamp_(n, 0) { queue_.reserve(n); }

    void reset() {
        if (++epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
        queue_.clear();
    }
    bool seen(NodeId v) const { return stamp_[v] == epoch_; }
    bool mark(NodeId v) {
        if (stamp_[v] == epoch_) return false;
        stamp_[v] = epoch_;
        return true;
    }
    std::vector<NodeId>& queue() { return queue_; }

private:
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<NodeId> queue_;
};

inline bool edge_live(std::span<const double> probs, std::uint64_t world_seed, EdgeId e) {
    return edge_uniform(world_seed, e) < probs[e];
}

/// Forward BFS from `sources` over edges live in `world_seed`, skipping nodes
/// for which `blocked(v)` holds. Calls visit(v) for each newly reached node,
/// sources included. Does not reset `scratch`.
template <class Blocked, class Visit>
void forward_reach(const Graph& g, std::span<const double> probs, std::uint64_t world_seed,
                   std::span<const NodeId> sources, ReachScratch& scratch, Blocked&& blocked,
                   Visit&& visit) {
    auto& q = scratch.queue();
    std::size_t head = q.size();
    for (NodeId s : sources) {
        if (blocked(s) || !scratch.mark(s)) continue;
        q.push_back(s);
        visit(s);
    }
    while (head < q.size()) {
        NodeId u = q[head++];
        for (EdgeId e : g.out_edges(u)) {
            NodeId v = g.edge(e).target;
            if (scratch.seen(v) || blocked(v)) continue;
            if (!edge_live(probs, world_seed, e)) continue;
            scratch.mark(v);
            q.push_back(v);
            visit(v);
        }
    }
}

}  // namespace imbandit::detail
