#include <doctest.h>

#include <cmath>
#include <random>

#include "imbandit/diffusion.hpp"
#include "imbandit/errors.hpp"
#include "imbandit/oracle.hpp"
#include "support/oracles.hpp"

using namespace imbandit;
using testing::make_graph;

namespace {

OracleConfig greedy_cfg(std::size_t sims = 200) {
    OracleConfig cfg;
    cfg.kind = OracleConfig::Kind::greedy_mc;
    cfg.n_sims = sims;
    return cfg;
}

std::vector<RRSet> sets_of(std::vector<std::vector<NodeId>> members) {
    std::vector<RRSet> out;
    for (auto& m : members) out.push_back({m.front(), m});
    return out;
}

}  // namespace

TEST_CASE("greedy picks the center of a deterministic star") {
    auto g = make_graph(4, {{1, 0}, {1, 2}, {1, 3}}, {1, 1, 1});
    Rng rng(1);
    auto seeds = greedy_select(g, g.probs(), 1, greedy_cfg(), rng);
    CHECK(seeds == std::vector<NodeId>{1});
    CHECK(exact_spread(g, g.probs(), seeds) == 4.0);

    OracleConfig rr;
    rr.n_rr = 2000;
    CHECK(select_seeds(g, g.probs(), 1, rr, rng) == std::vector<NodeId>{1});
}

TEST_CASE("greedy on two disjoint edges takes both sources") {
    // a=0 -> b=1 (0.9), c=2 -> d=3 (0.1)
    auto g = make_graph(4, {{0, 1}, {2, 3}}, {0.9, 0.1});
    Rng rng(2);
    auto seeds = greedy_select(g, g.probs(), 2, greedy_cfg(2000), rng);
    std::sort(seeds.begin(), seeds.end());
    CHECK(seeds == std::vector<NodeId>{0, 2});
    CHECK(exact_spread(g, g.probs(), seeds) == doctest::Approx(3.0));
}

TEST_CASE("greedy with no influence falls back to the lowest ids") {
    auto g = make_graph(5, {{4, 3}, {3, 2}}, {0.0, 0.0});
    Rng rng(3);
    CHECK(greedy_select(g, g.probs(), 3, greedy_cfg(), rng) == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("budget violations are rejected") {
    auto g = make_graph(2, {{0, 1}}, {0.5});
    Rng rng(4);
    CHECK_THROWS_AS(greedy_select(g, g.probs(), 3, greedy_cfg(), rng), BudgetError);
    CHECK_THROWS_AS(select_seeds(g, g.probs(), 3, OracleConfig{}, rng), BudgetError);
    CHECK_THROWS_AS(rr_select(sets_of({{0}}), 0, 2), BudgetError);
    OracleConfig bad;
    bad.n_rr = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("greedy is deterministic and independent of worker count") {
    auto g = assign_weighted_cascade(make_random_graph(150, 600, 8, 1.0));
    auto cfg = greedy_cfg(64);
    Rng a(5), b(5);
    auto s1 = greedy_select(g, g.probs(), 4, cfg, a);
    cfg.workers = 3;
    auto s2 = greedy_select(g, g.probs(), 4, cfg, b);
    CHECK(s1 == s2);

    OracleConfig rr;
    rr.n_rr = 3000;
    Rng c(6), d(6);
    auto r1 = select_seeds(g, g.probs(), 4, rr, c);
    rr.workers = 3;
    CHECK(r1 == select_seeds(g, g.probs(), 4, rr, d));
}

TEST_CASE("greedy reaches the 1-1/e guarantee with exact spreads") {
    std::mt19937_64 gen(11);
    const double bound = 1.0 - 1.0 / std::exp(1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 4 + trial % 4;
        auto g = testing::random_small_graph(gen, n, 4 + trial % 14);
        const std::size_t k = 1 + trial % 3;
        auto f = [&](std::span<const NodeId> s) { return exact_spread(g, g.probs(), s); };
        auto seeds = greedy_select_with(n, k, f);
        CHECK(seeds.size() == k);
        double opt = testing::brute_force_optimum(n, k, f);
        CHECK(f(seeds) >= bound * opt - 1e-12);
    }
}

TEST_CASE("rr sets for a fixed root") {
    auto chain = make_graph(3, {{0, 1}, {1, 2}}, {1.0, 1.0});
    auto set = rr_set_for_root(chain, chain.probs(), 2, 123);
    std::sort(set.members.begin(), set.members.end());
    CHECK(set.root == 2);
    CHECK(set.members == std::vector<NodeId>{0, 1, 2});

    std::vector<double> zero(2, 0.0);
    for (NodeId v = 0; v < 3; ++v) CHECK(rr_set_for_root(chain, zero, v, 7).members == std::vector<NodeId>{v});

    auto single = make_graph(2, {{0, 1}}, {0.5});
    const int n = 100000;
    int hits = 0;
    for (int i = 0; i < n; ++i)
        hits += rr_set_for_root(single, single.probs(), 1, derive_seed(99, {std::uint64_t(i)})).members.size() == 2;
    CHECK(std::abs(hits / double(n) - 0.5) <= 0.005);
}

TEST_CASE("rr set members reach the root in their world") {
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = testing::random_small_graph(gen, 9, 25);
        const std::uint64_t ws = gen();
        auto world = world_from_seed(g.probs(), ws);
        NodeId root = static_cast<NodeId>(trial % 9);
        auto set = rr_set_for_root(g, g.probs(), root, ws);
        CHECK(set.members.front() == root);
        for (NodeId u : set.members) {
            const NodeId s[] = {u};
            auto c = simulate_cascade(g, world, s);
            CHECK(c.active(root));
        }
        // Conversely every node that reaches root is a member.
        std::size_t reaching = 0;
        for (NodeId u = 0; u < 9; ++u) {
            const NodeId s[] = {u};
            reaching += simulate_cascade(g, world, s).active(root);
        }
        CHECK(reaching == set.members.size());
    }
}

TEST_CASE("rr coverage is an unbiased spread estimator") {
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 8; ++trial) {
        auto g = testing::random_small_graph(gen, 6, 12, 0.1, 0.9);
        Rng rng(100 + trial);
        const std::size_t n_rr = 40000;
        auto sets = rr_generate(g, g.probs(), n_rr, rng);
        for (NodeId u = 0; u < 6; ++u) {
            std::size_t c = 0;
            for (const auto& s : sets)
                c += std::find(s.members.begin(), s.members.end(), u) != s.members.end();
            const double q = c / double(n_rr);
            const double est = 6.0 * q;
            const NodeId seed[] = {u};
            const double exact = exact_spread(g, g.probs(), seed);
            const double qe = exact / 6.0;
            const double sigma = 6.0 * std::sqrt(qe * (1.0 - qe) / n_rr);
            CHECK(std::abs(est - exact) <= 3.0 * sigma + 1e-9);
        }
    }
}

TEST_CASE("rr_select examples") {
    auto sets = sets_of({{0, 1}, {0, 2}, {3}});
    CHECK(rr_select(sets, 1, 4) == std::vector<NodeId>{0});
    CHECK(rr_select(sets, 2, 4) == std::vector<NodeId>{0, 3});
    CHECK(rr_select(sets_of({{5}, {5}, {5}}), 1, 6) == std::vector<NodeId>{5});
    // Uncovered nodes fill the budget in id order.
    CHECK(rr_select(sets_of({{2}}), 3, 4) == std::vector<NodeId>{2, 0, 1});
}

TEST_CASE("rr_select is near-optimal on enumerable graphs") {
    std::mt19937_64 gen(14);
    const double bound = 1.0 - 1.0 / std::exp(1.0) - 0.1;
    int good = 0;
    const int trials = 40;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 5 + trial % 3;
        auto g = testing::random_small_graph(gen, n, 6 + trial % 12);
        const std::size_t k = 1 + trial % 3;
        Rng rng(200 + trial);
        auto sets = rr_generate(g, g.probs(), 20000, rng);
        auto seeds = rr_select(sets, k, n);
        auto f = [&](std::span<const NodeId> s) { return exact_spread(g, g.probs(), s); };
        good += f(seeds) >= bound * testing::brute_force_optimum(n, k, f);
    }
    CHECK(good >= 0.95 * trials);
}

TEST_CASE("value-spread selection") {
    auto g = assign_weighted_cascade(make_random_graph(40, 120, 21, 1.0));
    std::vector<double> ones(g.node_count(), 1.0);
    auto cfg = greedy_cfg(100);
    Rng a(7), b(7);
    CHECK(value_spread_select(g, g.probs(), ones, 3, cfg, a) == greedy_select(g, g.probs(), 3, cfg, b));

    auto isolated = Graph::from_edges(3, {}, {});
    Rng rng(8);
    const double v1[] = {5, 1, 3};
    CHECK(value_spread_select(isolated, {}, v1, 1, cfg, rng) == std::vector<NodeId>{0});
    const double v2[] = {1, 5, 3};
    CHECK(value_spread_select(isolated, {}, v2, 1, cfg, rng) == std::vector<NodeId>{1});
    auto pair = Graph::from_edges(2, {}, {});
    const double v3[] = {2, 2};
    CHECK(value_spread_select(pair, {}, v3, 1, cfg, rng) == std::vector<NodeId>{0});
    const double bad[] = {-1, 2};
    CHECK_THROWS_AS(value_spread_select(pair, {}, bad, 1, cfg, rng), ConfigError);
}
