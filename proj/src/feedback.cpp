#include "imbandit/feedback.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string_view>

#include "imbandit/errors.hpp"

namespace imbandit {

void MleConfig::validate() const {
    if (!(eta0 >= 0.0)) throw ConfigError("eta0 must be non-negative");
    if (!(theta_min > 0.0 && theta_min < theta_max))
        throw ConfigError("need 0 < theta_min < theta_max");
}

double MleConfig::eta(std::uint64_t round) const {
    return eta0 / std::sqrt(static_cast<double>(std::max<std::uint64_t>(round, 1)));
}

EstimatorState EstimatorState::frequentist(std::size_t edge_count, std::optional<BetaPrior> prior) {
    if (prior && !(prior->alpha > 0.0 && prior->beta > 0.0))
        throw ConfigError("Beta prior parameters must be positive");
    EstimatorState s;
    s.prior = prior;
    s.mu_hat.assign(edge_count, prior ? prior->alpha / (prior->alpha + prior->beta) : 0.0);
    s.success_count.assign(edge_count, 0);
    s.trigger_count.assign(edge_count, 0);
    return s;
}

EstimatorState EstimatorState::mle(std::size_t edge_count, const MleConfig& cfg,
                                   std::optional<BetaPrior> prior) {
    cfg.validate();
    EstimatorState s = frequentist(edge_count, prior);
    double theta0 = cfg.theta_min;
    if (prior) theta0 = -std::log1p(-prior->alpha / (prior->alpha + prior->beta));
    theta0 = std::clamp(theta0, cfg.theta_min, cfg.theta_max);
    s.theta = std::vector<double>(edge_count, theta0);
    s.mu_hat.assign(edge_count, -std::expm1(-theta0));
    return s;
}

void EstimatorState::preload(std::span<const double> mu) {
    if (mu.size() != mu_hat.size()) throw ConfigError("preload size mismatch");
    mu_hat.assign(mu.begin(), mu.end());
    if (theta)
        for (std::size_t e = 0; e < mu.size(); ++e) (*theta)[e] = -std::log1p(-mu[e]);
}

double EstimatorState::frequentist_mean(EdgeId e) const {
    const double s = static_cast<double>(success_count[e]);
    const double t = static_cast<double>(trigger_count[e]);
    if (prior) return (s + prior->alpha) / (t + prior->alpha + prior->beta);
    return t > 0.0 ? s / t : 0.0;
}

namespace {

void record(EstimatorState& state, EdgeId e, bool reward) {
    ++state.trigger_count[e];
    if (reward) ++state.success_count[e];
    state.mu_hat[e] = state.frequentist_mean(e);
}

// Marks seeds so lookups are O(1).
std::vector<bool> seed_mask(std::size_t n, std::span<const NodeId> seeds) {
    std::vector<bool> m(n, false);
    for (NodeId s : seeds) m[s] = true;
    return m;
}

// Splits v's in-edges into failed attempts and successful-step attempts.
struct ParentSplit {
    std::vector<std::size_t> failed;   // positions in in_edges(v)
    std::vector<std::size_t> success;  // positions in in_edges(v)
};

ParentSplit split_parents(const Graph& g, const NodeObservation& obs, NodeId v) {
    ParentSplit out;
    auto in = g.in_edges(v);
    const int tv = obs.activation_time[v];
    for (std::size_t i = 0; i < in.size(); ++i) {
        const int tu = obs.activation_time[g.edge(in[i]).source];
        if (tu == kInactive) continue;
        if (tv == kInactive || tu <= tv - 2)
            out.failed.push_back(i);
        else if (tu == tv - 1)
            out.success.push_back(i);
    }
    return out;
}

// ln(1 - e^{-x}) for x > 0, accurate at both ends.
double log1mexp(double x) {
    return x > std::numbers::ln2 ? std::log1p(-std::exp(-x)) : std::log(-std::expm1(-x));
}

bool involved(const NodeObservation& obs, const std::vector<bool>& is_seed, NodeId v,
              const ParentSplit& split) {
    if (is_seed[v]) return false;
    if (obs.active(v) && split.success.empty())
        throw CascadeIntegrityError("active node " + std::to_string(v) +
                                    " has no parent active one step earlier");
    return !split.failed.empty() || !split.success.empty();
}

}  // namespace

void update_edge_level(EstimatorState& state, const Graph&, const Cascade& cascade) {
    for (std::size_t i = 0; i < cascade.attempted.size(); ++i)
        record(state, cascade.attempted[i], cascade.live_status[i]);
}

std::vector<std::pair<EdgeId, std::uint8_t>> assign_node_level_credit(const Graph& g,
                                                                       const NodeObservation& obs,
                                                                       Rng& rng) {
    auto is_seed = seed_mask(g.node_count(), obs.seeds);
    std::vector<bool> credited(g.edge_count(), false);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!obs.active(v) || is_seed[v]) continue;
        const int tv = obs.activation_time[v];
        std::vector<EdgeId> parents;
        for (EdgeId e : g.in_edges(v))
            if (obs.activation_time[g.edge(e).source] == tv - 1) parents.push_back(e);
        if (parents.empty())
            throw CascadeIntegrityError("active node " + std::to_string(v) +
                                        " has no parent active one step earlier");
        std::uniform_int_distribution<std::size_t> pick(0, parents.size() - 1);
        credited[parents[pick(rng)]] = true;
    }
    std::vector<std::pair<EdgeId, std::uint8_t>> rewards;
    rewards.reserve(obs.attempted.size());
    for (EdgeId e : obs.attempted) {
        if (is_seed[g.edge(e).target]) continue;
        rewards.emplace_back(e, credited[e] ? 1 : 0);
    }
    return rewards;
}

void update_node_level_frequentist(EstimatorState& state, const Graph& g,
                                   const NodeObservation& obs, Rng& rng) {
    for (auto [e, reward] : assign_node_level_credit(g, obs, rng)) record(state, e, reward != 0);
}

double node_likelihood(const Graph& g, std::span<const double> theta, const NodeObservation& obs,
                       NodeId v) {
    auto is_seed = seed_mask(g.node_count(), obs.seeds);
    auto split = split_parents(g, obs, v);
    if (!involved(obs, is_seed, v, split)) return 0.0;
    auto in = g.in_edges(v);
    double value = 0.0;
    for (auto i : split.failed) value -= theta[in[i]];
    if (!split.success.empty()) {
        double sum = 0.0;
        for (auto i : split.success) sum += theta[in[i]];
        if (!(sum > 0.0)) throw SingularityError("successful-parent theta sum is zero");
        value += log1mexp(sum);
    }
    return value;
}

std::vector<double> node_likelihood_gradient(const Graph& g, std::span<const double> theta,
                                             const NodeObservation& obs, NodeId v) {
    auto is_seed = seed_mask(g.node_count(), obs.seeds);
    auto in = g.in_edges(v);
    std::vector<double> grad(in.size(), 0.0);
    auto split = split_parents(g, obs, v);
    if (!involved(obs, is_seed, v, split)) return grad;
    for (auto i : split.failed) grad[i] = -1.0;
    if (!split.success.empty()) {
        double sum = 0.0;
        for (auto i : split.success) sum += theta[in[i]];
        if (!(sum > 0.0)) throw SingularityError("successful-parent theta sum is zero");
        // d/dS ln(1 - e^{-S}) = 1 / (e^S - 1)
        const double d = 1.0 / std::expm1(sum);
        for (auto i : split.success) grad[i] = d;
    }
    return grad;
}

void mle_gradient_step(EstimatorState& state, const Graph& g, const NodeObservation& obs, NodeId v,
                       const MleConfig& cfg) {
    if (!state.theta) throw ConfigError("estimator is not in MLE mode");
    auto& theta = *state.theta;
    const auto grad = node_likelihood_gradient(g, theta, obs, v);
    const double eta = cfg.eta(state.round);
    auto in = g.in_edges(v);
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (grad[i] == 0.0) continue;
        const EdgeId e = in[i];
        theta[e] = std::clamp(theta[e] + eta * grad[i], cfg.theta_min, cfg.theta_max);
        state.mu_hat[e] = -std::expm1(-theta[e]);
    }
}

void update_node_level_mle(EstimatorState& state, const Graph& g, const NodeObservation& obs,
                           const MleConfig& cfg) {
    auto is_seed = seed_mask(g.node_count(), obs.seeds);
    std::vector<bool> touched(g.node_count(), false);
    for (EdgeId e : obs.attempted) {
        const NodeId v = g.edge(e).target;
        if (is_seed[v]) continue;
        ++state.trigger_count[e];
        touched[v] = true;
    }
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (touched[v]) mle_gradient_step(state, g, obs, v, cfg);
}

void apply_feedback(FeedbackMode mode, EstimatorState& state, const Graph& g,
                    const Cascade& cascade, Rng& credit_rng, const MleConfig& mle) {
    ++state.round;
    switch (mode) {
        case FeedbackMode::edge_level:
            update_edge_level(state, g, cascade);
            break;
        case FeedbackMode::node_level_frequentist:
            update_node_level_frequentist(state, g, observe_nodes(cascade), credit_rng);
            break;
        case FeedbackMode::node_level_mle:
            update_node_level_mle(state, g, observe_nodes(cascade), mle);
            break;
    }
}

void write_estimates_csv(std::ostream& out, const Graph& g, const EstimatorState& state) {
    char buf[64];
    auto num = [&](double x) {
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
        return std::string_view(buf, p - buf);
    };
    out << "edge_id,u,v,mu_hat,trigger_count,success_count";
    if (state.theta) out << ",theta";
    out << '\n';
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        out << e << ',' << g.edge(e).source << ',' << g.edge(e).target << ',' << num(state.mu_hat[e])
            << ',' << state.trigger_count[e] << ',' << state.success_count[e];
        if (state.theta) out << ',' << num((*state.theta)[e]);
        out << '\n';
    }
}

}  // namespace imbandit
