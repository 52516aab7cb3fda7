#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace imbandit {

/// Per-round measurements emitted by the game loop.
struct MetricsRow {
    std::uint64_t round = 0;
    double spread_learned = 0.0;
    double spread_true = 0.0;
    double regret = 0.0;
    double cumulative_avg_regret = 0.0;
    double l2_rel_error = 0.0;
    std::vector<double> frac_within;  // one entry per precision in kPrecisionGrid
};

/// Relative precisions 5%, 10%, ..., 50%.
inline constexpr double kPrecisionGrid[] = {0.05, 0.10, 0.15, 0.20, 0.25,
                                            0.30, 0.35, 0.40, 0.45, 0.50};

/// ||mu_hat - mu|| / ||mu||. Throws UndefinedMetricError when ||mu|| = 0.
double relative_l2_error(std::span<const double> mu_hat, std::span<const double> mu_true);

/// Fraction of edges with |mu_hat - mu| / mu <= p. Edges with mu = 0 are not
/// counted; with none left the result is 1.
double fraction_within(std::span<const double> mu_hat, std::span<const double> mu_true, double p);

/// Exact credit-assignment failure probability for the parent at index `i`
/// among K parents that activated together with true probabilities p_star.
double failure_prob_exact(std::span<const double> p_star, std::size_t i);

/// Upper bound on the failure probability using only K and the extreme true
/// probabilities of the network.
double failure_prob_bound(std::uint64_t K, double p_min, double p_max);

/// Relative gap between node-level and edge-level estimates:
/// rho * |1/mu_edge - 2|.
double node_level_relative_error(double mu_edge, double rho);

/// Mean the node-level estimate converges to given S true successes out of T
/// triggers: (S(1 - rho) + (T - S) rho) / T.
double node_level_mean_prediction(std::uint64_t successes, std::uint64_t triggers, double rho);

/// Minimum cascade count for random exploration with edge-level feedback to
/// learn an edge with true probability p_star within relative error epsilon
/// with probability 1 - delta: ceil(3 gamma |V| ln(1/delta) / (eps^2 p_star k)).
std::uint64_t sample_complexity_bound(double gamma, std::uint64_t n_nodes, std::uint64_t k,
                                      double p_star, double epsilon, double delta);

/// Online-vs-batch cumulative likelihood gap bound
/// d_v theta_max^2 sqrt(T) / 2 + (sqrt(T) - 1/2) G^2.
double mle_loss_gap_bound(double d_v, double theta_max, double T, double G);
/// mle_loss_gap_bound / T.
double mle_average_gap_bound(double d_v, double theta_max, double T, double G);

}  // namespace imbandit
