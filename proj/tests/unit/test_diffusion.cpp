#include <doctest.h>

#include <cmath>
#include <random>

#include "imbandit/diffusion.hpp"
#include "imbandit/errors.hpp"
#include "support/oracles.hpp"

using namespace imbandit;
using testing::make_graph;

TEST_CASE("sample_world at the extremes") {
    Rng rng(1);
    auto ones = make_graph(3, {{0, 1}, {1, 2}, {2, 0}}, {1.0, 1.0, 1.0});
    auto zeros = ones.with_probs({0.0, 0.0, 0.0});
    for (int i = 0; i < 100; ++i) {
        auto w1 = sample_world(ones, rng);
        auto w0 = sample_world(zeros, rng);
        for (EdgeId e = 0; e < 3; ++e) {
            CHECK(w1.live[e]);
            CHECK_FALSE(w0.live[e]);
        }
    }
}

TEST_CASE("sample_world live fraction matches the edge probability") {
    auto g = make_graph(2, {{0, 1}}, {0.5});
    Rng rng(2024);
    const int n = 100000;
    int live = 0;
    for (int i = 0; i < n; ++i) live += sample_world(g, rng).live[0];
    CHECK(std::abs(live / double(n) - 0.5) <= 0.005);
}

TEST_CASE("sample_world is determined by the rng state") {
    auto g = make_random_graph(30, 90, 4);
    g = g.with_probs(std::vector<double>(g.edge_count(), 0.4));
    Rng a(77), b(77);
    for (int i = 0; i < 5; ++i) CHECK(sample_world(g, a).live == sample_world(g, b).live);
}

TEST_CASE("cascade on a live chain") {
    auto g = make_graph(3, {{0, 1}, {1, 2}}, {1.0, 1.0});
    PossibleWorld w{{true, true}};
    const NodeId seeds[] = {0};
    auto c = simulate_cascade(g, w, seeds);
    CHECK(c.activation_time == std::vector<int>{0, 1, 2});
    CHECK(c.attempted == std::vector<EdgeId>{0, 1});
    CHECK(c.live_status == std::vector<bool>{true, true});
    CHECK(c.horizon() == 3);
}

TEST_CASE("a dead edge stops the chain") {
    auto g = make_graph(3, {{0, 1}, {1, 2}}, {0.5, 0.5});
    PossibleWorld w{{false, true}};
    const NodeId seeds[] = {0};
    auto c = simulate_cascade(g, w, seeds);
    CHECK(c.activation_time == std::vector<int>{0, kInactive, kInactive});
    CHECK(c.attempted == std::vector<EdgeId>{0});
    CHECK(c.live_status == std::vector<bool>{false});
}

TEST_CASE("diamond: node 3 activates at step 2 with two parents at step 1") {
    auto g = make_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {1, 1, 1, 1});
    PossibleWorld w{{true, true, true, true}};
    const NodeId seeds[] = {0};
    auto c = simulate_cascade(g, w, seeds);
    CHECK(c.activation_time == std::vector<int>{0, 1, 1, 2});
    CHECK(c.attempted.size() == 4);
    int parents = 0;
    for (EdgeId e : g.in_edges(3))
        parents += c.activation_time[g.edge(e).source] == c.activation_time[3] - 1;
    CHECK(parents == 2);
}

TEST_CASE("attempts into already-active nodes are recorded once") {
    // 0 -> 1 -> 0 back edge; seed 0.
    auto g = make_graph(2, {{0, 1}, {1, 0}}, {1, 1});
    PossibleWorld w{{true, true}};
    const NodeId seeds[] = {0, 0};
    auto c = simulate_cascade(g, w, seeds);
    CHECK(c.seeds == std::vector<NodeId>{0});
    CHECK(c.activation_time == std::vector<int>{0, 1});
    CHECK(c.attempted == std::vector<EdgeId>{0, 1});
}

TEST_CASE("cascade invariants hold on random instances") {
    std::mt19937_64 gen(9);
    Rng rng(10);
    for (int trial = 0; trial < 300; ++trial) {
        auto g = testing::random_small_graph(gen, 2 + trial % 12, 3 * (trial % 10), 0.0, 1.0);
        auto w = sample_world(g, rng);
        std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(g.node_count() - 1));
        std::vector<NodeId> seeds{pick(gen), pick(gen)};
        auto c = simulate_cascade(g, w, seeds);

        for (NodeId s : seeds) CHECK(c.activation_time[s] == 0);
        std::vector<bool> attempted(g.edge_count(), false);
        for (std::size_t i = 0; i < c.attempted.size(); ++i) {
            EdgeId e = c.attempted[i];
            CHECK_FALSE(attempted[e]);
            attempted[e] = true;
            CHECK(c.live_status[i] == w.live[e]);
            const auto& ed = g.edge(e);
            if (c.live_status[i])
                CHECK(c.activation_time[ed.target] <= c.activation_time[ed.source] + 1);
        }
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            CHECK(attempted[e] == c.active(g.edge(e).source));
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (!c.active(v) || c.activation_time[v] == 0) continue;
            bool has_parent = false;
            for (EdgeId e : g.in_edges(v))
                has_parent |= c.activation_time[g.edge(e).source] == c.activation_time[v] - 1;
            CHECK(has_parent);
        }
    }
}

TEST_CASE("Monte Carlo spread on the two-edge path") {
    auto g = make_graph(3, {{0, 1}, {1, 2}}, {0.5, 0.5});
    Rng rng(5);
    const NodeId seeds[] = {0};
    double est = estimate_spread_mc(g, g.probs(), seeds, 100000, rng);
    CHECK(std::abs(est - 1.75) <= 0.01);
}

TEST_CASE("Monte Carlo spread degenerate cases are exact") {
    auto g = make_random_graph(20, 60, 3);
    std::vector<double> half(g.edge_count(), 0.5), none(g.edge_count(), 0.0);
    std::vector<NodeId> all(20);
    for (NodeId v = 0; v < 20; ++v) all[v] = v;
    Rng rng(8);
    CHECK(estimate_spread_mc(g, half, all, 100, rng) == 20.0);
    const NodeId two[] = {3, 7};
    CHECK(estimate_spread_mc(g, none, two, 100, rng) == 2.0);
    CHECK_THROWS_AS(estimate_spread_mc(g, half, two, 0, rng), ConfigError);
}

TEST_CASE("Monte Carlo spread does not depend on the worker count") {
    auto g = make_random_graph(200, 800, 12, 1.0);
    std::vector<double> p(g.edge_count(), 0.2);
    const NodeId seeds[] = {1, 2, 3};
    Rng a(99), b(99);
    CHECK(estimate_spread_mc(g, p, seeds, 5000, a, 1) == estimate_spread_mc(g, p, seeds, 5000, b, 4));
}

TEST_CASE("exact spread examples") {
    auto path = make_graph(3, {{0, 1}, {1, 2}}, {0.5, 0.5});
    const NodeId zero[] = {0};
    CHECK(exact_spread(path, path.probs(), zero) == doctest::Approx(1.75).epsilon(1e-15));

    auto single = make_graph(2, {{0, 1}}, {0.3});
    CHECK(exact_spread(single, single.probs(), zero) == doctest::Approx(1.3).epsilon(1e-15));
    CHECK(exact_spread(single, single.probs(), std::span<const NodeId>{}) == 0.0);
}

TEST_CASE("exact spread agrees with world enumeration") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 2 + trial % 9;
        auto g = testing::random_small_graph(gen, n, 1 + trial % 12);
        std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
        std::vector<NodeId> seeds{pick(gen)};
        if (trial % 3 == 0) seeds.push_back(pick(gen));
        CHECK(exact_spread(g, g.probs(), seeds) ==
              doctest::Approx(testing::brute_force_spread(g, g.probs(), seeds)).epsilon(1e-12));
    }
}

TEST_CASE("exact spread counts isolated seeds and refuses large graphs") {
    auto g = make_graph(5, {{0, 1}}, {0.5});
    const NodeId seeds[] = {0, 3, 4};
    CHECK(exact_spread(g, g.probs(), seeds) == doctest::Approx(3.5));

    auto big = make_random_graph(30, 26, 1);
    CHECK_THROWS_AS(exact_spread(big, big.probs(), seeds), TooManyEdgesError);
}

TEST_CASE("spread is monotone and submodular on enumerable instances") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 5 + trial % 3;
        auto g = testing::random_small_graph(gen, n, 6 + trial % 8);
        auto sigma = [&](std::vector<NodeId> s) { return exact_spread(g, g.probs(), s); };
        std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
        // S subset of T, v outside T.
        std::vector<NodeId> S{pick(gen)};
        std::vector<NodeId> T = S;
        T.push_back(pick(gen));
        T.push_back(pick(gen));
        NodeId v = pick(gen);
        auto with = [](std::vector<NodeId> a, NodeId x) {
            a.push_back(x);
            return a;
        };
        CHECK(sigma(S) <= sigma(with(S, v)) + 1e-12);
        CHECK(sigma(T) <= sigma(with(T, v)) + 1e-12);
        CHECK(sigma(with(S, v)) - sigma(S) >= sigma(with(T, v)) - sigma(T) - 1e-12);
    }
}

TEST_CASE("cascade dump lists active nodes and attempted edges") {
    auto g = make_graph(3, {{0, 1}, {1, 2}}, {1.0, 0.0});
    PossibleWorld w{{true, false}};
    const NodeId seeds[] = {0};
    auto c = simulate_cascade(g, w, seeds);
    CHECK(format_cascade(g, c, false) == "0 0\n1 1\n");
    CHECK(format_cascade(g, c, true) == "0 0\n1 1\n0 1 live\n1 2 dead\n");
}
