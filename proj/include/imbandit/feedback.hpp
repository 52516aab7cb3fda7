#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "imbandit/diffusion.hpp"
#include "imbandit/graph.hpp"
#include "imbandit/rng.hpp"

namespace imbandit {

/// Beta(alpha, beta) pseudo-counts added to the frequentist ratio.
struct BetaPrior {
    double alpha = 1.0;
    double beta = 1.0;
};

/// Online MLE step schedule eta_s = eta0 / sqrt(s) and the box that theta is
/// projected onto after every step.
struct MleConfig {
    double eta0 = 1.0;
    double theta_min = 1e-6;
    double theta_max = -std::log(1.0 - 0.99);

    void validate() const;
    double eta(std::uint64_t round) const;
};

enum class FeedbackMode { edge_level, node_level_frequentist, node_level_mle };

/// Learned per-edge influence estimates.
///
/// Frequentist modes keep mu_hat = (success + alpha) / (trigger + alpha + beta)
/// (alpha = beta = 0 without a prior; 0 when never triggered). MLE mode keeps
/// mu_hat = 1 - exp(-theta). `round` counts the cascades fed in so far.
struct EstimatorState {
    std::vector<double> mu_hat;
    std::vector<std::uint64_t> success_count;
    std::vector<std::uint64_t> trigger_count;
    std::optional<BetaPrior> prior;
    std::optional<std::vector<double>> theta;
    std::uint64_t round = 0;

    static EstimatorState frequentist(std::size_t edge_count,
                                      std::optional<BetaPrior> prior = std::nullopt);
    /// theta starts at the prior mean when given, theta_min otherwise.
    static EstimatorState mle(std::size_t edge_count, const MleConfig& cfg,
                              std::optional<BetaPrior> prior = std::nullopt);

    /// Overwrites mu_hat (and theta in MLE mode) without touching counts.
    /// Edges keep the preloaded value until their first observation.
    void preload(std::span<const double> mu);

    std::size_t edge_count() const { return mu_hat.size(); }
    double frequentist_mean(EdgeId e) const;
};

/// Edge-level feedback: every attempted edge into a non-seed node reports its
/// true status.
void update_edge_level(EstimatorState& state, const Graph& g, const Cascade& cascade);

/// Randomized credit assignment from activation times only. For each non-seed
/// active node one of its parents active one step earlier is credited with
/// reward 1; every other attempted edge into a non-seed node gets 0. Edges
/// into seeds are left out. Result is in attempted order.
std::vector<std::pair<EdgeId, std::uint8_t>> assign_node_level_credit(const Graph& g,
                                                                       const NodeObservation& obs,
                                                                       Rng& rng);

void update_node_level_frequentist(EstimatorState& state, const Graph& g,
                                   const NodeObservation& obs, Rng& rng);

/// Per-node cascade log-likelihood in theta. An active node uses
///   -sum_{t_u <= t_v - 2} theta_uv + ln(1 - exp(-sum_{t_u = t_v - 1} theta_uv));
/// a node that never activated contributes -sum theta_uv over all of its
/// active parents. Returns 0 for seeds and uninvolved nodes.
double node_likelihood(const Graph& g, std::span<const double> theta, const NodeObservation& obs,
                       NodeId v);

/// d node_likelihood / d theta_uv for each in-edge of v, in in_edges(v) order.
std::vector<double> node_likelihood_gradient(const Graph& g, std::span<const double> theta,
                                             const NodeObservation& obs, NodeId v);

/// One projected ascent step on node_likelihood for v's in-edges with step
/// cfg.eta(state.round).
void mle_gradient_step(EstimatorState& state, const Graph& g, const NodeObservation& obs, NodeId v,
                       const MleConfig& cfg);

/// MLE feedback: one step per involved node, plus trigger counts.
void update_node_level_mle(EstimatorState& state, const Graph& g, const NodeObservation& obs,
                           const MleConfig& cfg);

/// Advances state.round and routes the cascade to the configured mechanism.
/// Node-level mechanisms only see observe_nodes(cascade).
void apply_feedback(FeedbackMode mode, EstimatorState& state, const Graph& g,
                    const Cascade& cascade, Rng& credit_rng, const MleConfig& mle);

/// CSV "edge_id,u,v,mu_hat,trigger_count,success_count[,theta]".
void write_estimates_csv(std::ostream& out, const Graph& g, const EstimatorState& state);

}  // namespace imbandit
