#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "imbandit/diffusion.hpp"
#include "imbandit/errors.hpp"
#include "imbandit/experiment.hpp"
#include "imbandit/graph.hpp"
#include "imbandit/metrics.hpp"
#include "imbandit/oracle.hpp"

namespace py = pybind11;
using namespace imbandit;

namespace {

Graph graph_from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& arcs,
                       std::vector<double> probs) {
    std::vector<Edge> edges;
    edges.reserve(arcs.size());
    for (auto [u, v] : arcs) edges.push_back({u, v});
    return Graph::from_edges(n, std::move(edges), std::move(probs));
}

std::vector<std::pair<NodeId, NodeId>> edge_pairs(const Graph& g) {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(g.edge_count());
    for (const auto& e : g.edges()) out.emplace_back(e.source, e.target);
    return out;
}

std::string run_csv(const Graph& g, const std::string& algo, const std::string& feedback, std::size_t k,
                    std::uint64_t rounds, std::size_t seeds, std::uint64_t master_seed,
                    const std::string& oracle, double omega, double zeta,
                    const std::optional<std::string>& prior, bool roc, unsigned threads) {
    RunConfig cfg;
    cfg.game.strategy.kind = parse_strategy(algo);
    cfg.game.strategy.feedback = parse_feedback(feedback);
    cfg.game.strategy.k = k;
    cfg.game.strategy.rounds = rounds;
    cfg.game.strategy.omega = omega;
    cfg.game.strategy.zeta = zeta;
    cfg.game.oracle = parse_oracle(oracle);
    if (prior) cfg.game.prior = parse_prior(*prior);
    cfg.seeds = seeds;
    cfg.master_seed = master_seed;
    cfg.roc = roc;
    cfg.threads = threads;
    std::ostringstream out;
    {
        py::gil_scoped_release release;
        run_experiment(g, cfg, out);
    }
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Influence maximization as a combinatorial bandit";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<BudgetError>(m, "BudgetError", base);
    py::register_exception<NoDecayError>(m, "NoDecayError", base);
    py::register_exception<TooManyEdgesError>(m, "TooManyEdgesError", base);

    py::class_<Graph>(m, "Graph")
        .def(py::init(&graph_from_edges), py::arg("node_count"), py::arg("edges"), py::arg("probs"))
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def_property_readonly("edges", &edge_pairs)
        .def_property_readonly("probs",
                               [](const Graph& g) { return std::vector<double>(g.probs().begin(), g.probs().end()); })
        .def("__repr__", [](const Graph& g) {
            return "<Graph nodes=" + std::to_string(g.node_count()) + " edges=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("load_edge_list", &load_edge_list_file, py::arg("path"), py::arg("default_prob") = std::nullopt,
          py::arg("remap_ids") = false);
    m.def("random_graph", &make_random_graph, py::arg("nodes"), py::arg("edges"), py::arg("seed"),
          py::arg("skew") = 0.0);
    m.def("weighted_cascade", &assign_weighted_cascade, py::arg("graph"));
    m.def("constant_probs", &assign_constant, py::arg("graph"), py::arg("p"));
    m.def("scale_probs", &scale_probs, py::arg("graph"), py::arg("factor"));
    m.def("correlation_decay", &correlation_decay, py::arg("graph"));

    m.def(
        "exact_spread",
        [](const Graph& g, const std::vector<NodeId>& seeds) { return exact_spread(g, g.probs(), seeds); },
        py::arg("graph"), py::arg("seeds"));
    m.def(
        "mc_spread",
        [](const Graph& g, const std::vector<NodeId>& seeds, std::size_t n_sims, std::uint64_t seed) {
            Rng rng(seed);
            return estimate_spread_mc(g, g.probs(), seeds, n_sims, rng);
        },
        py::arg("graph"), py::arg("seeds"), py::arg("n_sims") = 10000, py::arg("seed") = 1);
    m.def(
        "select_seeds",
        [](const Graph& g, std::size_t k, const std::string& oracle, std::uint64_t seed) {
            Rng rng(seed);
            return select_seeds(g, g.probs(), k, parse_oracle(oracle), rng);
        },
        py::arg("graph"), py::arg("k"), py::arg("oracle") = "rr", py::arg("seed") = 1);

    m.def(
        "failure_prob_exact",
        [](const std::vector<double>& p, std::size_t i) { return failure_prob_exact(p, i); }, py::arg("p"),
        py::arg("i"));
    m.def("failure_prob_bound", &failure_prob_bound, py::arg("k"), py::arg("pmin"), py::arg("pmax"));
    m.def("sample_complexity_bound", &sample_complexity_bound, py::arg("gamma"), py::arg("nodes"), py::arg("k"),
          py::arg("pstar"), py::arg("eps"), py::arg("delta"));
    m.def("mle_loss_gap_bound", &mle_loss_gap_bound, py::arg("dv"), py::arg("theta_max"), py::arg("T"),
          py::arg("G"));
    m.def(
        "relative_l2_error",
        [](const std::vector<double>& hat, const std::vector<double>& truth) {
            return relative_l2_error(hat, truth);
        },
        py::arg("mu_hat"), py::arg("mu_true"));

    m.def("run_experiment", &run_csv, py::arg("graph"), py::arg("algo"), py::arg("feedback") = "el",
          py::arg("k"), py::arg("rounds"), py::arg("seeds") = 1, py::arg("master_seed") = 1,
          py::arg("oracle") = "rr", py::arg("omega") = 5.0, py::arg("zeta") = 0.2,
          py::arg("prior") = std::nullopt, py::arg("roc") = false, py::arg("threads") = 1,
          "Plays the bandit game and returns the CSV the command-line runner would write.");
}
