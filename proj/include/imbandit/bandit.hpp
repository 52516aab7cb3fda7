#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "imbandit/feedback.hpp"
#include "imbandit/graph.hpp"
#include "imbandit/metrics.hpp"
#include "imbandit/oracle.hpp"
#include "imbandit/rng.hpp"

namespace imbandit {

enum class StrategyKind {
    cucb,
    epsilon_greedy,
    initial_exploration,
    pure_exploitation,
    random_exploration,
    strategic_exploration,
};

struct StrategyConfig {
    StrategyKind kind = StrategyKind::epsilon_greedy;
    FeedbackMode feedback = FeedbackMode::edge_level;
    double omega = 5.0;  // epsilon-greedy: eps_s = min(1, omega / s)
    double zeta = 0.2;   // initial exploration: explore while s <= zeta * T
    std::size_t k = 1;
    std::uint64_t rounds = 1;

    void validate(std::size_t node_count) const;
};

struct GameConfig {
    StrategyConfig strategy;
    OracleConfig oracle;
    /// Worlds used by the value-spread oracle in strategic exploration.
    std::size_t mc_eval_sims = 200;
    std::optional<BetaPrior> prior;
    MleConfig mle;
    /// Starting estimates, e.g. the true probabilities for calibration runs.
    std::optional<std::vector<double>> preload;
};

struct RoundRecord {
    std::vector<NodeId> seeds;
    std::size_t superarm_size = 0;  // out-edges of the seeds
    bool explored = false;
    std::uint64_t world_seed = 0;
    MetricsRow metrics;
};

struct GameResult {
    std::vector<NodeId> benchmark;  // oracle seeds under the true probabilities
    std::vector<RoundRecord> rounds;
    EstimatorState final_state;

    double total_regret() const;
};

/// k distinct nodes uniformly at random.
std::vector<NodeId> explore(const Graph& g, std::size_t k, Rng& rng);

/// Oracle seed set under the current estimates.
std::vector<NodeId> exploit(const Graph& g, const EstimatorState& state, const OracleConfig& cfg,
                            std::size_t k, Rng& rng);

/// Optimistic means min(1, mu_hat + sqrt(3 ln s / (2 T_i))); 1 when T_i = 0.
std::vector<double> cucb_adjust(const EstimatorState& state, std::uint64_t s);

/// Sum over out-edges (u,v) of 1 / (T_uv + 1).
double node_value(const Graph& g, const EstimatorState& state, NodeId u);
std::vector<double> node_values(const Graph& g, const EstimatorState& state);

/// Probability that round s explores (0 or 1 for deterministic schedules).
double explore_probability(const StrategyConfig& cfg, std::uint64_t s);

struct SuperarmChoice {
    std::vector<NodeId> seeds;
    bool explored = false;
};

/// Seed set for round s. Randomness comes from streams derived from
/// (master_seed, stream, s), so the choice is reproducible per round.
SuperarmChoice choose_superarm(const GameConfig& cfg, std::uint64_t s, const Graph& g,
                               const EstimatorState& state, std::uint64_t master_seed);

/// Plays cfg.strategy.rounds rounds on g. Each round samples one true world,
/// plays the learned seeds and the fixed benchmark seeds on it, and feeds the
/// learned cascade back. Deterministic given master_seed.
GameResult run_game(const Graph& g, const GameConfig& cfg, std::uint64_t master_seed);

std::string_view strategy_code(StrategyKind kind);
std::string_view feedback_code(FeedbackMode mode);

}  // namespace imbandit
