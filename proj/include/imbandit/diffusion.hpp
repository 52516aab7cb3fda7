#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "imbandit/graph.hpp"
#include "imbandit/rng.hpp"

namespace imbandit {

/// One deterministic realization of the probabilistic graph.
struct PossibleWorld {
    std::vector<bool> live;  // indexed by EdgeId
};

inline constexpr int kInactive = -1;

/// Record of one IC diffusion.
///
/// `live_status` is ground truth and is meant for edge-level feedback only;
/// node-level consumers go through NodeObservation, which does not carry it.
struct Cascade {
    std::vector<NodeId> seeds;
    std::vector<int> activation_time;  // kInactive when never activated
    std::vector<EdgeId> attempted;     // BFS order
    std::vector<bool> live_status;     // parallel to `attempted`

    bool active(NodeId v) const { return activation_time[v] != kInactive; }
    std::size_t active_count() const;
    /// One past the last activation step: the step at which the process
    /// observed no new activations. 0 for an empty cascade.
    int horizon() const;
};

/// What node-level feedback is allowed to see of a cascade.
struct NodeObservation {
    std::span<const NodeId> seeds;
    std::span<const int> activation_time;
    std::span<const EdgeId> attempted;

    bool active(NodeId v) const { return activation_time[v] != kInactive; }
    bool is_seed(NodeId v) const;
    int horizon() const;
};

NodeObservation observe_nodes(const Cascade& c);

/// Samples every edge independently with its true probability. Consumes one
/// 64-bit draw from `rng`.
PossibleWorld sample_world(const Graph& g, Rng& rng);

/// Materializes the world that lazy evaluation with `world_seed` would see.
PossibleWorld world_from_seed(std::span<const double> probs, std::uint64_t world_seed);

/// BFS over live edges with discrete timesteps. Every out-edge of an active
/// node is attempted exactly once, including edges into nodes that are
/// already active; such attempts cannot change activation times.
Cascade simulate_cascade(const Graph& g, const PossibleWorld& world, std::span<const NodeId> seeds);

/// Mean active-node count over n_sims simulations under `probs`. Simulation j
/// uses a world stream derived from (one draw of rng, j); edges are sampled
/// lazily when attempted. Result does not depend on `workers`.
double estimate_spread_mc(const Graph& g, std::span<const double> probs,
                          std::span<const NodeId> seeds, std::size_t n_sims, Rng& rng,
                          unsigned workers = 1);

/// Reachable-node count in the lazily evaluated world `world_seed`.
std::size_t reachable_count(const Graph& g, std::span<const double> probs,
                            std::uint64_t world_seed, std::span<const NodeId> seeds);

inline constexpr std::size_t kExactSpreadMaxEdges = 25;

/// Expected spread computed exactly. Explores the cascade process with
/// memoization on (active set, processed set), branching only on attempts
/// into inactive nodes. Throws TooManyEdgesError above kExactSpreadMaxEdges.
double exact_spread(const Graph& g, std::span<const double> probs, std::span<const NodeId> seeds);

/// Debug dump: "node time" lines, then "u v live|dead" lines when
/// `with_edges` is set. Not a stable format.
std::string format_cascade(const Graph& g, const Cascade& c, bool with_edges);

}  // namespace imbandit
