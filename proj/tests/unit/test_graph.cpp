#include <doctest.h>

#include <random>
#include <sstream>

#include "imbandit/errors.hpp"
#include "imbandit/graph.hpp"
#include "support/oracles.hpp"

using namespace imbandit;

namespace {
Graph parse(const std::string& text, std::optional<double> fill = std::nullopt, bool remap = false) {
    std::istringstream in(text);
    return load_edge_list(in, fill, remap);
}
}  // namespace

TEST_CASE("load_edge_list reads explicit probabilities in file order") {
    auto g = parse("0 1 0.5\n1 2 0.25");
    CHECK(g.node_count() == 3);
    REQUIRE(g.edge_count() == 2);
    CHECK(g.edge(0) == Edge{0, 1});
    CHECK(g.edge(1) == Edge{1, 2});
    CHECK(g.prob(0) == 0.5);
    CHECK(g.prob(1) == 0.25);
}

TEST_CASE("load_edge_list fills missing probabilities") {
    auto g = parse("0 1\n", 0.1);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.prob(0) == 0.1);

    auto h = parse("# header\n\n0 1   # trailing\n");
    CHECK(h.prob(0) == 0.0);
}

TEST_CASE("load_edge_list errors carry the line number") {
    try {
        parse("0 1 1.5");
        FAIL("expected RangeError");
    } catch (const RangeError& e) {
        CHECK(e.line() == 1);
    }
    try {
        parse("0 1\n# c\n2 x\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse("0 1 0.2\n0 1 0.3\n"), DuplicateEdgeError);
    CHECK_THROWS_AS(parse("0 1 0.2 7\n"), ParseError);
    CHECK_THROWS_AS(parse("-1 2\n"), ParseError);
    CHECK_THROWS_AS(parse("3 3\n"), ParseError);
    CHECK_THROWS_AS(parse("0 1 nan\n"), ParseError);
}

TEST_CASE("sparse ids can be remapped") {
    auto g = parse("100 7 0.5\n7 3000000000 0.5\n", std::nullopt, true);
    CHECK(g.node_count() == 3);
    CHECK(g.edge(1) == Edge{1, 2});
    REQUIRE(g.original_ids().size() == 3);
    CHECK(g.original_ids()[2] == 3000000000ULL);
    CHECK_THROWS_AS(parse("7 3000000000\n"), ParseError);
}

TEST_CASE("adjacency lists are consistent with the edge list") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = testing::random_small_graph(rng, 8, 20);
        std::vector<int> out_seen(g.edge_count(), 0), in_seen(g.edge_count(), 0);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            for (EdgeId e : g.out_edges(v)) {
                CHECK(g.edge(e).source == v);
                ++out_seen[e];
            }
            for (EdgeId e : g.in_edges(v)) {
                CHECK(g.edge(e).target == v);
                ++in_seen[e];
            }
        }
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            CHECK(out_seen[e] == 1);
            CHECK(in_seen[e] == 1);
        }
    }
}

TEST_CASE("weighted cascade assignment") {
    // Node 4 has four in-edges, node 1 has one.
    auto g = testing::make_graph(5, {{0, 4}, {1, 4}, {2, 4}, {3, 4}, {0, 1}},
                                 std::vector<double>(5, 0.0));
    auto wc = assign_weighted_cascade(g);
    for (EdgeId e = 0; e < 4; ++e) CHECK(wc.prob(e) == 0.25);
    CHECK(wc.prob(4) == 1.0);

    auto chain = assign_weighted_cascade(testing::make_graph(3, {{0, 1}, {1, 2}}, {0.3, 0.3}));
    CHECK(chain.prob(0) == 1.0);
    CHECK(chain.prob(1) == 1.0);
}

TEST_CASE("weighted cascade is idempotent and every in-sum is one") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = assign_weighted_cascade(make_random_graph(60, 240, seed, 1.0));
        auto again = assign_weighted_cascade(g);
        CHECK(std::equal(g.probs().begin(), g.probs().end(), again.probs().begin()));
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (g.in_degree(v) == 0) continue;
            double sum = 0.0;
            for (EdgeId e : g.in_edges(v)) sum += g.prob(e);
            CHECK(std::abs(sum - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("correlation decay") {
    auto single = testing::make_graph(2, {{0, 1}}, {0.3});
    CHECK(correlation_decay(single) == doctest::Approx(0.7).epsilon(1e-15));

    auto two = testing::make_graph(4, {{0, 1}, {2, 1}, {0, 3}}, {0.2, 0.3, 0.1});
    CHECK(correlation_decay(two) == doctest::Approx(0.5).epsilon(1e-15));

    auto wc = assign_weighted_cascade(make_random_graph(50, 200, 11, 0.5));
    CHECK_THROWS_AS(correlation_decay(wc), NoDecayError);
    CHECK(correlation_decay(scale_probs(wc, 0.5)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("write_edge_list round-trips probabilities bit-exactly") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testing::random_small_graph(rng, 10, 30);
        std::vector<double> probs(g.edge_count());
        for (auto& p : probs) p = u(rng);
        probs[0] = 1.0;
        probs[1] = 0.0;
        probs[2] = 5e-324;
        g = g.with_probs(probs);
        std::stringstream ss;
        write_edge_list(ss, g);
        auto back = load_edge_list(ss);
        REQUIRE(back.edge_count() == g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            CHECK(back.edge(e) == g.edge(e));
            CHECK(back.prob(e) == g.prob(e));
        }
    }
}

TEST_CASE("graph construction rejects malformed input") {
    CHECK_THROWS_AS(testing::make_graph(2, {{0, 0}}, {0.1}), ConfigError);
    CHECK_THROWS_AS(testing::make_graph(2, {{0, 2}}, {0.1}), ConfigError);
    CHECK_THROWS_AS(testing::make_graph(2, {{0, 1}}, {-0.1}), RangeError);
    CHECK_THROWS_AS(testing::make_graph(3, {{0, 1}, {0, 1}}, {0.1, 0.2}), DuplicateEdgeError);
}

TEST_CASE("random graph generator honours its contract") {
    auto g = make_random_graph(100, 400, 5, 1.0);
    CHECK(g.node_count() == 100);
    CHECK(g.edge_count() == 400);
    CHECK_THROWS_AS(make_random_graph(3, 7, 1), ConfigError);
    auto again = make_random_graph(100, 400, 5, 1.0);
    CHECK(std::equal(g.edges().begin(), g.edges().end(), again.edges().begin()));
}
