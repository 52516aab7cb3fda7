#include "imbandit/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <thread>

#include "imbandit/errors.hpp"
#include "imbandit/feedback.hpp"

namespace imbandit {

namespace {

template <class T>
T parse_or_throw(std::string_view tok, std::string_view what) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
        throw ConfigError("invalid " + std::string(what) + ": '" + std::string(tok) + "'");
    return value;
}

// Precision-grid index of the 10% column.
constexpr std::size_t kTenPercent = 1;

}  // namespace

ProbAssignment parse_assignment(std::string_view text) {
    if (text == "wc") return {ProbAssignment::Kind::weighted_cascade, 0.0};
    if (text == "file") return {ProbAssignment::Kind::from_file, 0.0};
    if (text.starts_with("const:")) {
        double c = parse_or_throw<double>(text.substr(6), "constant probability");
        if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("constant probability outside [0,1]");
        return {ProbAssignment::Kind::constant, c};
    }
    throw ConfigError("unknown --assign value '" + std::string(text) + "'");
}

OracleConfig parse_oracle(std::string_view text) {
    OracleConfig cfg;
    auto colon = text.find(':');
    auto kind = text.substr(0, colon);
    if (kind == "greedy")
        cfg.kind = OracleConfig::Kind::greedy_mc;
    else if (kind == "rr")
        cfg.kind = OracleConfig::Kind::rr_set;
    else
        throw ConfigError("unknown --oracle kind '" + std::string(kind) + "'");
    if (colon != std::string_view::npos) {
        auto n = parse_or_throw<std::size_t>(text.substr(colon + 1), "oracle sample count");
        (cfg.kind == OracleConfig::Kind::greedy_mc ? cfg.n_sims : cfg.n_rr) = n;
    }
    cfg.validate();
    return cfg;
}

BetaPrior parse_prior(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) throw ConfigError("--prior expects 'alpha,beta'");
    BetaPrior p{parse_or_throw<double>(text.substr(0, comma), "prior alpha"),
                parse_or_throw<double>(text.substr(comma + 1), "prior beta")};
    if (!(p.alpha > 0.0 && p.beta > 0.0)) throw ConfigError("prior parameters must be positive");
    return p;
}

StrategyKind parse_strategy(std::string_view code) {
    for (auto k : {StrategyKind::cucb, StrategyKind::epsilon_greedy,
                   StrategyKind::initial_exploration, StrategyKind::pure_exploitation,
                   StrategyKind::random_exploration, StrategyKind::strategic_exploration})
        if (strategy_code(k) == code) return k;
    throw ConfigError("unknown --algo value '" + std::string(code) + "'");
}

FeedbackMode parse_feedback(std::string_view code) {
    for (auto m : {FeedbackMode::edge_level, FeedbackMode::node_level_frequentist,
                   FeedbackMode::node_level_mle})
        if (feedback_code(m) == code) return m;
    throw ConfigError("unknown --feedback value '" + std::string(code) + "'");
}

Graph prepare_graph(const RunConfig& cfg) {
    std::optional<double> fill;
    if (cfg.assign.kind == ProbAssignment::Kind::constant) fill = cfg.assign.constant;
    Graph g = load_edge_list_file(cfg.graph_path, fill, cfg.remap_ids);
    switch (cfg.assign.kind) {
        case ProbAssignment::Kind::weighted_cascade:
            g = assign_weighted_cascade(g);
            break;
        case ProbAssignment::Kind::constant:
            g = assign_constant(g, cfg.assign.constant);
            break;
        case ProbAssignment::Kind::from_file:
            break;
    }
    if (cfg.prob_scale != 1.0) g = scale_probs(g, cfg.prob_scale);
    return g;
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t index) {
    return derive_seed(master_seed, {0x72756eULL, index});
}

std::string format_number(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
    return std::string(buf, ptr);
}

std::string csv_header(bool roc) {
    std::string h =
        "seed,round,algo,feedback,k,spread_learned,spread_true,regret,cum_avg_regret,"
        "l2_rel_error,frac_within_10";
    if (roc)
        for (std::size_t i = 0; i < std::size(kPrecisionGrid); ++i) {
            if (i == kTenPercent) continue;
            h += ",frac_within_" + std::to_string(static_cast<int>(std::lround(kPrecisionGrid[i] * 100)));
        }
    return h;
}

std::vector<GameResult> run_experiment(const Graph& g, const RunConfig& cfg, std::ostream& out) {
    if (cfg.seeds == 0) throw ConfigError("--seeds must be at least 1");
    cfg.game.strategy.validate(g.node_count());

    std::vector<GameResult> games(cfg.seeds);
    auto play = [&](std::size_t i) { games[i] = run_game(g, cfg.game, run_seed(cfg.master_seed, i)); };
    if (cfg.threads <= 1) {
        for (std::size_t i = 0; i < cfg.seeds; ++i) play(i);
    } else {
        std::vector<std::jthread> pool;
        const unsigned w = std::min<std::size_t>(cfg.threads, cfg.seeds);
        for (unsigned t = 0; t < w; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < cfg.seeds; i += w) play(i);
            });
    }

    const auto algo = strategy_code(cfg.game.strategy.kind);
    const auto fb = feedback_code(cfg.game.strategy.feedback);
    const auto k = cfg.game.strategy.k;

    auto numeric = [&](const MetricsRow& m) {
        std::vector<double> v{m.spread_learned, m.spread_true, m.regret, m.cumulative_avg_regret,
                              m.l2_rel_error, m.frac_within[kTenPercent]};
        if (cfg.roc)
            for (std::size_t i = 0; i < m.frac_within.size(); ++i)
                if (i != kTenPercent) v.push_back(m.frac_within[i]);
        return v;
    };
    auto emit = [&](std::string_view seed, std::uint64_t round, const std::vector<double>& v) {
        out << seed << ',' << round << ',' << algo << ',' << fb << ',' << k;
        for (double x : v) out << ',' << format_number(x);
        out << '\n';
    };

    out << csv_header(cfg.roc) << '\n';
    for (std::size_t i = 0; i < games.size(); ++i)
        for (const auto& r : games[i].rounds)
            emit(std::to_string(i), r.metrics.round, numeric(r.metrics));

    const auto rounds = cfg.game.strategy.rounds;
    for (std::uint64_t s = 0; s < rounds; ++s) {
        std::vector<double> mean;
        for (const auto& game : games) {
            auto v = numeric(game.rounds[s].metrics);
            if (mean.empty()) mean.assign(v.size(), 0.0);
            for (std::size_t j = 0; j < v.size(); ++j) mean[j] += v[j];
        }
        for (auto& x : mean) x /= static_cast<double>(games.size());
        emit("mean", s + 1, mean);
    }
    if (!out) throw Error("failed writing CSV output");
    return games;
}

}  // namespace imbandit
