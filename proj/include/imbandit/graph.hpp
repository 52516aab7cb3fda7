#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace imbandit {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Largest node id accepted without remapping; node storage is dense in the id.
inline constexpr std::uint64_t kMaxDenseNodeId = (std::uint64_t{1} << 26) - 1;

struct Edge {
    NodeId source;
    NodeId target;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed graph with a hidden true influence probability per edge.
///
/// Edge ids are dense and follow insertion order. The graph is immutable once
/// built; operations that change probabilities return a new graph.
class Graph {
public:
    Graph() = default;

    /// Validates and builds. Throws RangeError for probabilities outside
    /// [0,1], DuplicateEdgeError for repeated (source,target) pairs and
    /// ConfigError for self-loops or out-of-range endpoints.
    static Graph from_edges(std::size_t node_count, std::vector<Edge> edges,
                            std::vector<double> probs);

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    double prob(EdgeId e) const { return probs_[e]; }
    std::span<const double> probs() const noexcept { return probs_; }

    std::span<const EdgeId> out_edges(NodeId u) const;
    std::span<const EdgeId> in_edges(NodeId v) const;
    std::size_t in_degree(NodeId v) const { return in_edges(v).size(); }
    std::size_t out_degree(NodeId u) const { return out_edges(u).size(); }

    /// Original file ids when the loader remapped sparse ids; empty otherwise.
    std::span<const std::uint64_t> original_ids() const noexcept { return original_ids_; }

    Graph with_probs(std::vector<double> probs) const;

private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<double> probs_;
    // CSR adjacency.
    std::vector<std::size_t> out_offsets_, in_offsets_;
    std::vector<EdgeId> out_list_, in_list_;
    std::vector<std::uint64_t> original_ids_;

    friend Graph load_edge_list(std::istream&, std::optional<double>, bool);
};

/// Parses "u v" / "u v p" lines; '#' starts a comment. Without remapping,
/// node ids are used as given and node_count = 1 + max id. With remapping,
/// ids are densified in first-appearance order and kept in original_ids().
Graph load_edge_list(std::istream& in, std::optional<double> default_prob = std::nullopt,
                     bool remap_ids = false);
Graph load_edge_list_file(const std::string& path, std::optional<double> default_prob = std::nullopt,
                          bool remap_ids = false);

/// Writes "u v p" lines with shortest round-trip probabilities.
void write_edge_list(std::ostream& out, const Graph& g);

/// p(u,v) = 1 / in-degree(v).
Graph assign_weighted_cascade(const Graph& g);

/// Every edge gets probability c.
Graph assign_constant(const Graph& g, double c);

/// Multiplies every probability by factor in [0,1].
Graph scale_probs(const Graph& g, double factor);

/// gamma = 1 - max_v sum of incoming probabilities. Throws NoDecayError when
/// some incoming sum is (within 1e-12) at least 1.
double correlation_decay(const Graph& g);

/// Directed random graph for experiments: `edge_count` distinct non-loop
/// edges whose sources follow a heavy-tailed (Zipf-like, exponent `skew`)
/// popularity and whose targets are uniform. skew = 0 gives G(n,m).
Graph make_random_graph(std::size_t node_count, std::size_t edge_count, std::uint64_t seed,
                        double skew = 0.0);

}  // namespace imbandit
