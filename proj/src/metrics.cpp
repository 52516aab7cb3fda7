#include "imbandit/metrics.hpp"

#include <cmath>
#include <string>

#include "imbandit/errors.hpp"

namespace imbandit {

double relative_l2_error(std::span<const double> mu_hat, std::span<const double> mu_true) {
    if (mu_hat.size() != mu_true.size()) throw ConfigError("estimate/truth length mismatch");
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < mu_true.size(); ++i) {
        const double d = mu_hat[i] - mu_true[i];
        diff += d * d;
        norm += mu_true[i] * mu_true[i];
    }
    if (norm == 0.0) throw UndefinedMetricError("true probability vector has zero norm");
    return std::sqrt(diff) / std::sqrt(norm);
}

double fraction_within(std::span<const double> mu_hat, std::span<const double> mu_true, double p) {
    if (mu_hat.size() != mu_true.size()) throw ConfigError("estimate/truth length mismatch");
    if (!(p >= 0.0)) throw ConfigError("precision must be non-negative");
    std::size_t included = 0, within = 0;
    for (std::size_t i = 0; i < mu_true.size(); ++i) {
        if (mu_true[i] == 0.0) continue;
        ++included;
        if (std::abs(mu_hat[i] - mu_true[i]) <= p * mu_true[i]) ++within;
    }
    return included == 0 ? 1.0 : static_cast<double>(within) / static_cast<double>(included);
}

double failure_prob_exact(std::span<const double> p_star, std::size_t i) {
    const std::size_t K = p_star.size();
    if (K == 0 || i >= K) throw ConfigError("credited index out of range");
    double none_other = 1.0;
    for (std::size_t j = 0; j < K; ++j)
        if (j != i) none_other *= 1.0 - p_star[j];
    const double k = static_cast<double>(K);
    return (1.0 / k) * (1.0 - p_star[i]) * (1.0 - none_other) + (1.0 - 1.0 / k) * p_star[i];
}

double failure_prob_bound(std::uint64_t K, double p_min, double p_max) {
    if (K == 0) throw ConfigError("K must be at least 1");
    if (!(0.0 <= p_min && p_min <= p_max && p_max <= 1.0))
        throw ConfigError("need 0 <= p_min <= p_max <= 1");
    const double k = static_cast<double>(K);
    return (1.0 / k) * (1.0 - p_min) * (1.0 - std::pow(1.0 - p_max, k - 1.0)) +
           (1.0 - 1.0 / k) * p_max;
}

double node_level_relative_error(double mu_edge, double rho) {
    if (!(mu_edge > 0.0 && mu_edge <= 1.0))
        throw UndefinedMetricError("edge-level estimate must lie in (0,1]");
    return rho * std::abs(1.0 / mu_edge - 2.0);
}

double node_level_mean_prediction(std::uint64_t successes, std::uint64_t triggers, double rho) {
    if (triggers == 0 || successes > triggers) throw ConfigError("need 0 <= S <= T, T > 0");
    const double s = static_cast<double>(successes), t = static_cast<double>(triggers);
    return (s * (1.0 - rho) + (t - s) * rho) / t;
}

std::uint64_t sample_complexity_bound(double gamma, std::uint64_t n_nodes, std::uint64_t k,
                                      double p_star, double epsilon, double delta) {
    if (gamma <= 0.0) throw NoDecayError("correlation decay bound must be positive");
    if (!(gamma < 1.0)) throw ConfigError("gamma must lie in (0,1)");
    if (n_nodes == 0 || k == 0) throw ConfigError("node count and budget must be positive");
    if (!(p_star > 0.0 && p_star <= 1.0)) throw ConfigError("p_star must lie in (0,1]");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
    if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in (0,1]");
    const double c = 3.0 * gamma * static_cast<double>(n_nodes) * std::log(1.0 / delta) /
                     (epsilon * epsilon * p_star * static_cast<double>(k));
    // Strip rounding noise so exact integer bounds do not round up by one.
    return static_cast<std::uint64_t>(std::ceil(c * (1.0 - 1e-12)));
}

double mle_loss_gap_bound(double d_v, double theta_max, double T, double G) {
    if (d_v < 0.0 || theta_max < 0.0 || G < 0.0) throw ConfigError("arguments must be non-negative");
    if (!(T >= 1.0)) throw ConfigError("T must be at least 1");
    const double root = std::sqrt(T);
    return d_v * theta_max * theta_max * root / 2.0 + (root - 0.5) * G * G;
}

double mle_average_gap_bound(double d_v, double theta_max, double T, double G) {
    return mle_loss_gap_bound(d_v, theta_max, T, G) / T;
}

}  // namespace imbandit
