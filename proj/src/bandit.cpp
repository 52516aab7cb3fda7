#include "imbandit/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "imbandit/diffusion.hpp"
#include "imbandit/errors.hpp"

namespace imbandit {

void StrategyConfig::validate(std::size_t node_count) const {
    if (k == 0) throw ConfigError("budget k must be at least 1");
    if (k > node_count) throw BudgetError("budget k exceeds node count");
    if (rounds == 0) throw ConfigError("rounds must be at least 1");
    if (!(omega > 0.0)) throw ConfigError("omega must be positive");
    if (!(zeta >= 0.0 && zeta <= 1.0)) throw ConfigError("zeta must lie in [0,1]");
}

double GameResult::total_regret() const {
    double sum = 0.0;
    for (const auto& r : rounds) sum += r.metrics.regret;
    return sum;
}

std::vector<NodeId> explore(const Graph& g, std::size_t k, Rng& rng) {
    if (k > g.node_count()) throw BudgetError("budget k exceeds node count");
    std::vector<NodeId> all(g.node_count());
    std::iota(all.begin(), all.end(), 0);
    std::vector<NodeId> out;
    out.reserve(k);
    std::sample(all.begin(), all.end(), std::back_inserter(out), k, rng);
    return out;
}

std::vector<NodeId> exploit(const Graph& g, const EstimatorState& state, const OracleConfig& cfg,
                            std::size_t k, Rng& rng) {
    return select_seeds(g, state.mu_hat, k, cfg, rng);
}

std::vector<double> cucb_adjust(const EstimatorState& state, std::uint64_t s) {
    const double log_s = std::log(static_cast<double>(std::max<std::uint64_t>(s, 1)));
    std::vector<double> out(state.edge_count());
    for (std::size_t e = 0; e < out.size(); ++e) {
        const auto t = state.trigger_count[e];
        if (t == 0) {
            out[e] = 1.0;
            continue;
        }
        const double bonus = std::sqrt(3.0 * log_s / (2.0 * static_cast<double>(t)));
        out[e] = std::min(1.0, state.mu_hat[e] + bonus);
    }
    return out;
}

double node_value(const Graph& g, const EstimatorState& state, NodeId u) {
    double v = 0.0;
    for (EdgeId e : g.out_edges(u)) v += 1.0 / (static_cast<double>(state.trigger_count[e]) + 1.0);
    return v;
}

std::vector<double> node_values(const Graph& g, const EstimatorState& state) {
    std::vector<double> out(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) out[u] = node_value(g, state, u);
    return out;
}

double explore_probability(const StrategyConfig& cfg, std::uint64_t s) {
    switch (cfg.kind) {
        case StrategyKind::epsilon_greedy:
            return std::min(1.0, cfg.omega / static_cast<double>(std::max<std::uint64_t>(s, 1)));
        case StrategyKind::initial_exploration: {
            const auto cutoff = static_cast<std::uint64_t>(
                std::floor(cfg.zeta * static_cast<double>(cfg.rounds) + 1e-9));
            return s <= cutoff ? 1.0 : 0.0;
        }
        case StrategyKind::random_exploration:
            return 1.0;
        default:
            return 0.0;
    }
}

SuperarmChoice choose_superarm(const GameConfig& cfg, std::uint64_t s, const Graph& g,
                               const EstimatorState& state, std::uint64_t master_seed) {
    const auto& sc = cfg.strategy;
    Rng oracle_rng(derive_seed(master_seed, {tag(Stream::oracle), s}));
    auto random_seeds = [&] {
        Rng rng(derive_seed(master_seed, {tag(Stream::explore), s}));
        return SuperarmChoice{explore(g, sc.k, rng), true};
    };

    switch (sc.kind) {
        case StrategyKind::cucb: {
            auto optimistic = cucb_adjust(state, s);
            return {select_seeds(g, optimistic, sc.k, cfg.oracle, oracle_rng), false};
        }
        case StrategyKind::epsilon_greedy: {
            Rng coin(derive_seed(master_seed, {tag(Stream::coin), s}));
            std::bernoulli_distribution flip(explore_probability(sc, s));
            if (flip(coin)) return random_seeds();
            return {exploit(g, state, cfg.oracle, sc.k, oracle_rng), false};
        }
        case StrategyKind::initial_exploration:
            if (explore_probability(sc, s) == 1.0) return random_seeds();
            return {exploit(g, state, cfg.oracle, sc.k, oracle_rng), false};
        case StrategyKind::pure_exploitation:
            return {exploit(g, state, cfg.oracle, sc.k, oracle_rng), false};
        case StrategyKind::random_exploration:
            return random_seeds();
        case StrategyKind::strategic_exploration: {
            OracleConfig mc = cfg.oracle;
            mc.kind = OracleConfig::Kind::greedy_mc;
            mc.n_sims = cfg.mc_eval_sims;
            auto values = node_values(g, state);
            return {value_spread_select(g, state.mu_hat, values, sc.k, mc, oracle_rng), true};
        }
    }
    throw ConfigError("unknown strategy");
}

namespace {

std::size_t superarm_size(const Graph& g, const std::vector<NodeId>& seeds) {
    std::size_t n = 0;
    for (NodeId s : seeds) n += g.out_degree(s);
    return n;
}

}  // namespace

GameResult run_game(const Graph& g, const GameConfig& cfg, std::uint64_t master_seed) {
    const auto& sc = cfg.strategy;
    sc.validate(g.node_count());
    cfg.oracle.validate();
    cfg.mle.validate();

    GameResult result;
    result.final_state = sc.feedback == FeedbackMode::node_level_mle
                             ? EstimatorState::mle(g.edge_count(), cfg.mle, cfg.prior)
                             : EstimatorState::frequentist(g.edge_count(), cfg.prior);
    auto& state = result.final_state;
    if (cfg.preload) state.preload(*cfg.preload);

    {
        Rng bench(derive_seed(master_seed, {tag(Stream::benchmark)}));
        result.benchmark = select_seeds(g, g.probs(), sc.k, cfg.oracle, bench);
    }
    Rng credit(derive_seed(master_seed, {tag(Stream::credit)}));

    double regret_sum = 0.0;
    result.rounds.reserve(sc.rounds);
    for (std::uint64_t s = 1; s <= sc.rounds; ++s) {
        RoundRecord rec;
        auto choice = choose_superarm(cfg, s, g, state, master_seed);
        rec.seeds = std::move(choice.seeds);
        rec.explored = choice.explored;
        rec.superarm_size = superarm_size(g, rec.seeds);

        rec.world_seed = derive_seed(master_seed, {tag(Stream::world), s});
        const PossibleWorld world = world_from_seed(g.probs(), rec.world_seed);
        const Cascade learned = simulate_cascade(g, world, rec.seeds);
        const Cascade bench = simulate_cascade(g, world, result.benchmark);
        apply_feedback(sc.feedback, state, g, learned, credit, cfg.mle);

        auto& m = rec.metrics;
        m.round = s;
        m.spread_learned = static_cast<double>(learned.active_count());
        m.spread_true = static_cast<double>(bench.active_count());
        m.regret = m.spread_true - m.spread_learned;
        regret_sum += m.regret;
        m.cumulative_avg_regret = regret_sum / static_cast<double>(s);
        try {
            m.l2_rel_error = relative_l2_error(state.mu_hat, g.probs());
        } catch (const UndefinedMetricError&) {
            m.l2_rel_error = std::numeric_limits<double>::quiet_NaN();
        }
        m.frac_within.reserve(std::size(kPrecisionGrid));
        for (double p : kPrecisionGrid) m.frac_within.push_back(fraction_within(state.mu_hat, g.probs(), p));
        result.rounds.push_back(std::move(rec));
    }
    return result;
}

std::string_view strategy_code(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::cucb: return "cucb";
        case StrategyKind::epsilon_greedy: return "eg";
        case StrategyKind::initial_exploration: return "ie";
        case StrategyKind::pure_exploitation: return "pe";
        case StrategyKind::random_exploration: return "re";
        case StrategyKind::strategic_exploration: return "se";
    }
    return "?";
}

std::string_view feedback_code(FeedbackMode mode) {
    switch (mode) {
        case FeedbackMode::edge_level: return "el";
        case FeedbackMode::node_level_frequentist: return "nlf";
        case FeedbackMode::node_level_mle: return "nlml";
    }
    return "?";
}

}  // namespace imbandit
