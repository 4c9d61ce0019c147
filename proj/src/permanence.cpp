#include "permnet/permanence.hpp"

#include <algorithm>
#include <stdexcept>

namespace permnet {

namespace {

// Core scorer over an explicit neighbor list and edge predicate, so the
// as-is and virtually-toggled paths share one formula.
template <typename HasEdgeFn>
VertexPermanenceParts score_vertex(const CommunityStructure& cs, NodeId v,
                                   const std::vector<NodeId>& nbrs, HasEdgeFn&& connected) {
    VertexPermanenceParts p;
    p.degree = static_cast<int>(nbrs.size());
    if (p.degree == 0) return p;  // isolated vertex scores 0 by convention

    const int own = cs.community_of(v);
    std::vector<int> external(cs.k(), 0);
    std::vector<NodeId> internal;
    internal.reserve(nbrs.size());
    for (NodeId w : nbrs) {
        int c = cs.community_of(w);
        if (c == own) {
            internal.push_back(w);
        } else {
            ++external[c];
        }
    }
    p.internal_degree = static_cast<int>(internal.size());
    for (int c = 0; c < cs.k(); ++c) p.max_external = std::max(p.max_external, external[c]);

    if (p.internal_degree >= 2) {
        int linked = 0;
        for (std::size_t i = 0; i < internal.size(); ++i)
            for (std::size_t j = i + 1; j < internal.size(); ++j)
                if (connected(internal[i], internal[j])) ++linked;
        int pairs = p.internal_degree * (p.internal_degree - 1) / 2;
        p.internal_clustering = static_cast<double>(linked) / static_cast<double>(pairs);
    }

    // A vertex pulled by no other community still divides by one, not zero.
    int pull = std::max(p.max_external, 1);
    p.permanence = static_cast<double>(p.internal_degree) /
                       (static_cast<double>(pull) * static_cast<double>(p.degree)) -
                   (1.0 - p.internal_clustering);
    return p;
}

// Neighbor list of v as if e were applied. Sorted, like Graph adjacency.
std::vector<NodeId> toggled_neighbors(const Graph& g, NodeId v, const EdgeUpdate& e) {
    std::vector<NodeId> nbrs = g.neighbors(v);
    if (v != e.u && v != e.v) return nbrs;
    NodeId other = (v == e.u) ? e.v : e.u;
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), other);
    if (e.action == EdgeAction::Add) {
        if (it == nbrs.end() || *it != other) nbrs.insert(it, other);
    } else {
        if (it != nbrs.end() && *it == other) nbrs.erase(it);
    }
    return nbrs;
}

void check_cache_matches(const PermanenceCache& cache, const Graph& g,
                         const CommunityStructure& cs, const char* where) {
    if (cache.graph_version() != g.version() ||
        cache.partition_fingerprint() != cs.fingerprint()) {
        throw std::logic_error(std::string(where) +
                               ": cache was built for a different graph or partition");
    }
}

}  // namespace

VertexPermanenceParts vertex_permanence(const Graph& g, const CommunityStructure& cs, NodeId v) {
    return score_vertex(cs, v, g.neighbors(v),
                        [&g](NodeId a, NodeId b) { return g.has_edge(a, b); });
}

VertexPermanenceParts vertex_permanence_toggled(const Graph& g, const CommunityStructure& cs,
                                                NodeId v, const EdgeUpdate& e) {
    bool toggled_present = (e.action == EdgeAction::Add);
    auto connected = [&](NodeId a, NodeId b) {
        if ((a == e.u && b == e.v) || (a == e.v && b == e.u)) return toggled_present;
        return g.has_edge(a, b);
    };
    return score_vertex(cs, v, toggled_neighbors(g, v, e), connected);
}

std::optional<int> external_pull_community(const Graph& g, const CommunityStructure& cs,
                                           NodeId u) {
    std::vector<int> external(cs.k(), 0);
    const int own = cs.community_of(u);
    for (NodeId w : g.neighbors(u)) {
        int c = cs.community_of(w);
        if (c != own) ++external[c];
    }
    int best = -1;
    for (int c = 0; c < cs.k(); ++c) {
        if (external[c] > 0 && (best < 0 || external[c] > external[best])) best = c;
    }
    if (best < 0) return std::nullopt;
    return best;
}

double graph_permanence(const Graph& g, const CommunityStructure& cs, Execution exec) {
    return PermanenceCache::build(g, cs, exec).graph_permanence();
}

std::vector<NodeId> affected_set(const Graph& g, NodeId u, NodeId v) {
    // Endpoints change degree and pull; common neighbors see one internal
    // pair toggle inside their clustering term. Nobody else moves.
    std::vector<NodeId> out;
    const auto& nu = g.neighbors(u);
    const auto& nv = g.neighbors(v);
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(out));
    out.push_back(u);
    out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

PermanenceCache PermanenceCache::build(const Graph& g, const CommunityStructure& cs,
                                       Execution exec) {
    if (g.node_count() == 0) throw std::invalid_argument("permanence of an empty graph");
    cs.validate(g);
    PermanenceCache cache;
    int n = g.node_count();
    cache.parts_.resize(n);
    VertexPermanenceParts* parts = cache.parts_.data();
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (int v = 0; v < n; ++v) parts[v] = vertex_permanence(g, cs, v);
    } else {
        for (int v = 0; v < n; ++v) parts[v] = vertex_permanence(g, cs, v);
    }
    // Serial sum in index order keeps the aggregate identical across modes.
    double sum = 0.0;
    for (int v = 0; v < n; ++v) sum += parts[v].permanence;
    cache.sum_ = sum;
    cache.graph_version_ = g.version();
    cache.partition_fingerprint_ = cs.fingerprint();
    return cache;
}

PermanenceCache rescore_after_update(const PermanenceCache& cache, const Graph& g_before,
                                     const CommunityStructure& cs, const EdgeUpdate& e) {
    check_cache_matches(cache, g_before, cs, "rescore_after_update");
    Graph g_after = apply_update(g_before, e);

    PermanenceCache next = cache;
    for (NodeId w : affected_set(g_after, e.u, e.v)) {
        next.parts_[w] = vertex_permanence(g_after, cs, w);
    }
    // Resum in index order: bit-identical to a fresh build on g_after.
    double sum = 0.0;
    for (const auto& p : next.parts_) sum += p.permanence;
    next.sum_ = sum;
    next.graph_version_ = g_after.version();
    next.partition_fingerprint_ = cs.fingerprint();
    return next;
}

double permanence_sum_after(const Graph& g, const CommunityStructure& cs,
                            const PermanenceCache& cache, const EdgeUpdate& e) {
    check_cache_matches(cache, g, cs, "permanence_sum_after");
    std::vector<NodeId> aff = affected_set(g, e.u, e.v);
    std::vector<double> rescored(aff.size());
    for (std::size_t i = 0; i < aff.size(); ++i) {
        rescored[i] = vertex_permanence_toggled(g, cs, aff[i], e).permanence;
    }
    double sum = 0.0;
    std::size_t j = 0;
    int n = cache.node_count();
    for (NodeId v = 0; v < n; ++v) {
        if (j < aff.size() && aff[j] == v) {
            sum += rescored[j++];
        } else {
            sum += cache.vertex(v);
        }
    }
    return sum;
}

}  // namespace permnet
