#include "imbandit/diffusion.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

#include "imbandit/detail/reach.hpp"
#include "imbandit/errors.hpp"
#include "imbandit/parallel.hpp"

namespace imbandit {

std::size_t Cascade::active_count() const {
    return static_cast<std::size_t>(
        std::count_if(activation_time.begin(), activation_time.end(),
                      [](int t) { return t != kInactive; }));
}

namespace {
int horizon_of(std::span<const int> times) {
    int last = kInactive;
    for (int t : times) last = std::max(last, t);
    return last + 1;
}
}  // namespace

int Cascade::horizon() const { return horizon_of(activation_time); }

bool NodeObservation::is_seed(NodeId v) const {
    return std::find(seeds.begin(), seeds.end(), v) != seeds.end();
}

int NodeObservation::horizon() const { return horizon_of(activation_time); }

NodeObservation observe_nodes(const Cascade& c) {
    return {c.seeds, c.activation_time, c.attempted};
}

PossibleWorld world_from_seed(std::span<const double> probs, std::uint64_t world_seed) {
    PossibleWorld w;
    w.live.resize(probs.size());
    for (EdgeId e = 0; e < probs.size(); ++e) w.live[e] = detail::edge_live(probs, world_seed, e);
    return w;
}

PossibleWorld sample_world(const Graph& g, Rng& rng) {
    return world_from_seed(g.probs(), rng());
}

Cascade simulate_cascade(const Graph& g, const PossibleWorld& world,
                         std::span<const NodeId> seeds) {
    Cascade c;
    c.activation_time.assign(g.node_count(), kInactive);
    std::vector<NodeId> queue;
    for (NodeId s : seeds) {
        if (c.activation_time[s] != kInactive) continue;
        c.activation_time[s] = 0;
        c.seeds.push_back(s);
        queue.push_back(s);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId u = queue[head];
        for (EdgeId e : g.out_edges(u)) {
            const bool live = world.live[e];
            c.attempted.push_back(e);
            c.live_status.push_back(live);
            NodeId v = g.edge(e).target;
            if (live && c.activation_time[v] == kInactive) {
                c.activation_time[v] = c.activation_time[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return c;
}

std::size_t reachable_count(const Graph& g, std::span<const double> probs,
                            std::uint64_t world_seed, std::span<const NodeId> seeds) {
    detail::ReachScratch scratch(g.node_count());
    scratch.reset();
    std::size_t count = 0;
    detail::forward_reach(
        g, probs, world_seed, seeds, scratch, [](NodeId) { return false; },
        [&](NodeId) { ++count; });
    return count;
}

double estimate_spread_mc(const Graph& g, std::span<const double> probs,
                          std::span<const NodeId> seeds, std::size_t n_sims, Rng& rng,
                          unsigned workers) {
    if (n_sims == 0) throw ConfigError("n_sims must be positive");
    const std::uint64_t batch = rng();
    constexpr std::size_t chunk = 1024;
    std::vector<std::uint64_t> partial(chunk_count(n_sims, chunk), 0);
    for_each_chunk(n_sims, chunk, workers, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        detail::ReachScratch scratch(g.node_count());
        std::uint64_t sum = 0;
        for (std::size_t j = lo; j < hi; ++j) {
            scratch.reset();
            detail::forward_reach(
                g, probs, derive_seed(batch, {j}), seeds, scratch,
                [](NodeId) { return false; }, [&](NodeId) { ++sum; });
        }
        partial[c] = sum;
    });
    std::uint64_t total = 0;
    for (auto s : partial) total += s;
    return static_cast<double>(total) / static_cast<double>(n_sims);
}

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const noexcept {
        return mix64(k.first ^ mix64(k.second));
    }
};

class ExactSpread {
public:
    ExactSpread(const Graph& g, std::span<const double> probs) {
        std::vector<int> bit(g.node_count(), -1);
        for (const auto& e : g.edges())
            for (NodeId v : {e.source, e.target})
                if (bit[v] < 0) bit[v] = static_cast<int>(nodes_++);
        bit_ = std::move(bit);
        out_.resize(nodes_);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            double p = probs[e];
            if (p <= 0.0) continue;
            const auto& ed = g.edge(e);
            out_[bit_[ed.source]].push_back({static_cast<unsigned>(bit_[ed.target]), p});
        }
    }

    double operator()(std::span<const NodeId> seeds) {
        std::uint64_t start = 0;
        std::size_t isolated = 0;
        std::vector<NodeId> uniq(seeds.begin(), seeds.end());
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (NodeId s : uniq) {
            if (bit_[s] < 0)
                ++isolated;
            else
                start |= std::uint64_t{1} << bit_[s];
        }
        return static_cast<double>(isolated) + expand(start, 0);
    }

private:
    struct Arc {
        unsigned target;
        double p;
    };

    // Expected number of active relevant nodes at the end, given active set A
    // and the subset P of A whose out-edges have been resolved.
    double expand(std::uint64_t active, std::uint64_t processed) {
        const std::uint64_t pending = active & ~processed;
        if (pending == 0) return static_cast<double>(std::popcount(active));
        auto key = std::make_pair(active, processed);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const unsigned u = static_cast<unsigned>(std::countr_zero(pending));
        const std::uint64_t next_processed = processed | (std::uint64_t{1} << u);
        std::uint64_t certain = 0;
        std::vector<Arc> uncertain;
        for (const auto& a : out_[u]) {
            const std::uint64_t tbit = std::uint64_t{1} << a.target;
            if (active & tbit) continue;
            if (a.p >= 1.0)
                certain |= tbit;
            else
                uncertain.push_back(a);
        }
        double result = 0.0;
        const std::size_t m = uncertain.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            double prob = 1.0;
            std::uint64_t next = active | certain;
            for (std::size_t i = 0; i < m; ++i) {
                if (mask >> i & 1) {
                    prob *= uncertain[i].p;
                    next |= std::uint64_t{1} << uncertain[i].target;
                } else {
                    prob *= 1.0 - uncertain[i].p;
                }
            }
            result += prob * expand(next, next_processed);
        }
        memo_.emplace(key, result);
        return result;
    }

    std::vector<int> bit_;
    std::size_t nodes_ = 0;
    std::vector<std::vector<Arc>> out_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, double, PairHash> memo_;
};

}  // namespace

double exact_spread(const Graph& g, std::span<const double> probs, std::span<const NodeId> seeds) {
    if (g.edge_count() > kExactSpreadMaxEdges)
        throw TooManyEdgesError("exact spread supports at most " +
                                std::to_string(kExactSpreadMaxEdges) + " edges, got " +
                                std::to_string(g.edge_count()));
    return ExactSpread(g, probs)(seeds);
}

std::string format_cascade(const Graph& g, const Cascade& c, bool with_edges) {
    std::ostringstream out;
    for (NodeId v = 0; v < c.activation_time.size(); ++v)
        if (c.active(v)) out << v << ' ' << c.activation_time[v] << '\n';
    if (with_edges)
        for (std::size_t i = 0; i < c.attempted.size(); ++i) {
            const auto& e = g.edge(c.attempted[i]);
            out << e.source << ' ' << e.target << ' ' << (c.live_status[i] ? "live" : "dead")
                << '\n';
        }
    return out.str();
}

}  // namespace imbandit
