#include "imbandit/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "imbandit/errors.hpp"
#include "imbandit/rng.hpp"

namespace imbandit {

namespace {

void build_csr(std::size_t n, const std::vector<Edge>& edges, bool by_source,
               std::vector<std::size_t>& offsets, std::vector<EdgeId>& list) {
    offsets.assign(n + 1, 0);
    for (const auto& e : edges) ++offsets[(by_source ? e.source : e.target) + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    list.resize(edges.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (EdgeId id = 0; id < edges.size(); ++id) {
        const auto& e = edges[id];
        list[cursor[by_source ? e.source : e.target]++] = id;
    }
}

std::uint64_t edge_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

bool valid_prob(double p) { return p >= 0.0 && p <= 1.0; }  // false for NaN

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

Graph Graph::from_edges(std::size_t node_count, std::vector<Edge> edges,
                        std::vector<double> probs) {
    if (probs.size() != edges.size())
        throw ConfigError("probability count does not match edge count");
    std::unordered_map<std::uint64_t, EdgeId> seen;
    seen.reserve(edges.size());
    for (EdgeId id = 0; id < edges.size(); ++id) {
        const auto& e = edges[id];
        if (e.source >= node_count || e.target >= node_count)
            throw ConfigError("edge " + std::to_string(id) + " has an endpoint out of range");
        if (e.source == e.target)
            throw ConfigError("edge " + std::to_string(id) + " is a self-loop");
        if (!valid_prob(probs[id]))
            throw RangeError(id + 1, "probability outside [0,1]");
        if (!seen.emplace(edge_key(e.source, e.target), id).second)
            throw DuplicateEdgeError(id + 1, "duplicate edge " + std::to_string(e.source) + " " +
                                                 std::to_string(e.target));
    }
    Graph g;
    g.node_count_ = node_count;
    g.edges_ = std::move(edges);
    g.probs_ = std::move(probs);
    build_csr(node_count, g.edges_, true, g.out_offsets_, g.out_list_);
    build_csr(node_count, g.edges_, false, g.in_offsets_, g.in_list_);
    return g;
}

std::span<const EdgeId> Graph::out_edges(NodeId u) const {
    return {out_list_.data() + out_offsets_[u], out_offsets_[u + 1] - out_offsets_[u]};
}

std::span<const EdgeId> Graph::in_edges(NodeId v) const {
    return {in_list_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

Graph Graph::with_probs(std::vector<double> probs) const {
    if (probs.size() != edges_.size())
        throw ConfigError("probability count does not match edge count");
    for (std::size_t i = 0; i < probs.size(); ++i)
        if (!valid_prob(probs[i])) throw RangeError(i + 1, "probability outside [0,1]");
    Graph g = *this;
    g.probs_ = std::move(probs);
    return g;
}

Graph load_edge_list(std::istream& in, std::optional<double> default_prob, bool remap_ids) {
    if (default_prob && !valid_prob(*default_prob))
        throw RangeError(0, "default probability outside [0,1]");

    std::vector<Edge> edges;
    std::vector<double> probs;
    std::unordered_map<std::uint64_t, EdgeId> seen;
    std::unordered_map<std::uint64_t, NodeId> dense;
    std::vector<std::uint64_t> original;
    std::uint64_t max_id = 0;
    bool any = false;

    auto map_id = [&](std::uint64_t raw) -> NodeId {
        if (!remap_ids) return static_cast<NodeId>(raw);
        auto [it, inserted] = dense.emplace(raw, static_cast<NodeId>(original.size()));
        if (inserted) original.push_back(raw);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        auto toks = split_ws(view);
        if (toks.empty()) continue;
        if (toks.size() != 2 && toks.size() != 3)
            throw ParseError(lineno, "expected 'u v' or 'u v p'");

        std::uint64_t u = 0, v = 0;
        if (!parse_number(toks[0], u) || !parse_number(toks[1], v))
            throw ParseError(lineno, "node ids must be non-negative integers");
        if (!remap_ids && (u > kMaxDenseNodeId || v > kMaxDenseNodeId))
            throw ParseError(lineno, "node id too large; use id remapping");
        if (u == v) throw ParseError(lineno, "self-loop");

        double p = default_prob.value_or(0.0);
        if (toks.size() == 3) {
            if (!parse_number(toks[2], p)) throw ParseError(lineno, "malformed probability");
            if (!valid_prob(p)) throw RangeError(lineno, "probability outside [0,1]");
        }

        NodeId su = map_id(u), sv = map_id(v);
        if (!seen.emplace(edge_key(su, sv), static_cast<EdgeId>(edges.size())).second)
            throw DuplicateEdgeError(lineno, "duplicate edge " + std::to_string(u) + " " +
                                                 std::to_string(v));
        edges.push_back({su, sv});
        probs.push_back(p);
        max_id = std::max({max_id, u, v});
        any = true;
    }

    std::size_t n = remap_ids ? original.size() : (any ? max_id + 1 : 0);
    Graph g = Graph::from_edges(n, std::move(edges), std::move(probs));
    g.original_ids_ = std::move(original);
    return g;
}

Graph load_edge_list_file(const std::string& path, std::optional<double> default_prob,
                          bool remap_ids) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    return load_edge_list(in, default_prob, remap_ids);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    char buf[64];
    auto ids = g.original_ids();
    auto name = [&](NodeId v) -> std::uint64_t { return ids.empty() ? v : ids[v]; };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, g.prob(e));
        out << name(g.edge(e).source) << ' ' << name(g.edge(e).target) << ' '
            << std::string_view(buf, ptr - buf) << '\n';
    }
}

Graph assign_weighted_cascade(const Graph& g) {
    std::vector<double> probs(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        probs[e] = 1.0 / static_cast<double>(g.in_degree(g.edge(e).target));
    return g.with_probs(std::move(probs));
}

Graph assign_constant(const Graph& g, double c) {
    return g.with_probs(std::vector<double>(g.edge_count(), c));
}

Graph scale_probs(const Graph& g, double factor) {
    if (!valid_prob(factor)) throw RangeError(0, "scale factor outside [0,1]");
    std::vector<double> probs(g.probs().begin(), g.probs().end());
    for (auto& p : probs) p *= factor;
    return g.with_probs(std::move(probs));
}

double correlation_decay(const Graph& g) {
    constexpr double tol = 1e-12;
    double worst = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        double sum = 0.0;
        for (EdgeId e : g.in_edges(v)) sum += g.prob(e);
        worst = std::max(worst, sum);
    }
    if (worst >= 1.0 - tol)
        throw NoDecayError("incoming probability sum reaches 1; no correlation decay");
    return 1.0 - worst;
}

Graph make_random_graph(std::size_t node_count, std::size_t edge_count, std::uint64_t seed,
                        double skew) {
    if (node_count < 2 && edge_count > 0) throw ConfigError("need at least two nodes for edges");
    if (edge_count > node_count * (node_count - 1))
        throw ConfigError("too many edges for a simple directed graph");

    Rng rng(derive_seed(seed, {0x6772617068ULL}));
    std::vector<NodeId> rank(node_count);
    std::iota(rank.begin(), rank.end(), 0);
    std::shuffle(rank.begin(), rank.end(), rng);
    std::vector<double> weight(node_count);
    for (std::size_t i = 0; i < node_count; ++i)
        weight[rank[i]] = 1.0 / std::pow(static_cast<double>(i + 1), skew);
    std::discrete_distribution<NodeId> pick_source(weight.begin(), weight.end());
    std::uniform_int_distribution<NodeId> pick_target(0, static_cast<NodeId>(node_count - 1));

    std::set<std::pair<NodeId, NodeId>> used;
    std::vector<Edge> edges;
    edges.reserve(edge_count);
    std::size_t attempts = 0;
    while (edges.size() < edge_count) {
        if (++attempts > 1000 * (edge_count + 1))
            throw ConfigError("could not place requested edges; lower skew or edge count");
        NodeId u = pick_source(rng), v = pick_target(rng);
        if (u == v || !used.emplace(u, v).second) continue;
        edges.push_back({u, v});
    }
    std::vector<double> probs(edges.size(), 0.0);
    return Graph::from_edges(node_count, std::move(edges), std::move(probs));
}

}  // namespace imbandit
