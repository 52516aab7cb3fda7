#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "imbandit/bandit.hpp"
#include "imbandit/graph.hpp"

namespace imbandit {

/// How true probabilities are put on a loaded graph.
struct ProbAssignment {
    enum class Kind { weighted_cascade, constant, from_file };
    Kind kind = Kind::weighted_cascade;
    double constant = 0.0;
};

/// Everything one experiment command line can say.
struct RunConfig {
    std::string graph_path;
    ProbAssignment assign;
    bool remap_ids = false;
    /// Multiplies true probabilities after assignment (gives a positive
    /// correlation-decay bound on weighted-cascade graphs).
    double prob_scale = 1.0;
    GameConfig game;
    std::size_t seeds = 1;
    std::uint64_t master_seed = 1;
    std::string out_path;
    bool roc = false;
    unsigned threads = 1;
    std::string estimates_out;  // optional per-seed estimator dumps
};

ProbAssignment parse_assignment(std::string_view text);
OracleConfig parse_oracle(std::string_view text);
BetaPrior parse_prior(std::string_view text);
StrategyKind parse_strategy(std::string_view code);
FeedbackMode parse_feedback(std::string_view code);

/// Loads the graph and applies the probability assignment and scaling.
Graph prepare_graph(const RunConfig& cfg);

/// Master seed of run `index` under `master_seed`.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t index);

/// Runs cfg.seeds games on g and writes the CSV: one row per (seed, round)
/// followed by per-round means over seeds with seed column "mean". Returns
/// the games in seed order.
std::vector<GameResult> run_experiment(const Graph& g, const RunConfig& cfg, std::ostream& out);

/// CSV header for the given --roc setting.
std::string csv_header(bool roc);

/// 9 significant digits, trailing zeros stripped.
std::string format_number(double x);

}  // namespace imbandit
