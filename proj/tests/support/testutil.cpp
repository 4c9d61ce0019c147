#include "testutil.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <tuple>

namespace testutil {

Graph two_triangles_bridge() {
    Graph g = Graph::with_nodes(6);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    g.add_edge(3, 5);
    g.add_edge(4, 5);
    g.add_edge(2, 3);
    return g;
}

CommunityStructure two_triangles_partition() {
    return CommunityStructure::from_assignment({0, 0, 0, 1, 1, 1});
}

Graph complete_graph(int n) {
    Graph g = Graph::with_nodes(n);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph path_graph(int n) {
    Graph g = Graph::with_nodes(n);
    for (NodeId u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
}

Graph star_graph(int leaves) {
    Graph g = Graph::with_nodes(leaves + 1);
    for (NodeId v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

Graph random_graph(int n, double edge_prob, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Graph g = Graph::with_nodes(n);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (coin(rng) < edge_prob) g.add_edge(u, v);
    return g;
}

CommunityStructure random_partition(int n, int max_k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, max_k)));
    std::vector<int> raw(n);
    for (int v = 0; v < n; ++v) raw[v] = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
    return CommunityStructure::from_assignment(raw);
}

double naive_vertex_permanence(const Graph& g, const CommunityStructure& cs, NodeId v) {
    int deg = g.degree(v);
    if (deg == 0) return 0.0;
    int own = cs.community_of(v);
    std::map<int, int> external;
    std::vector<NodeId> internal;
    for (NodeId w : g.neighbors(v)) {
        int c = cs.community_of(w);
        if (c == own) {
            internal.push_back(w);
        } else {
            ++external[c];
        }
    }
    int e_max = 0;
    for (const auto& [c, count] : external) e_max = std::max(e_max, count);
    int internal_degree = static_cast<int>(internal.size());
    double c_in = 0.0;
    if (internal_degree >= 2) {
        int linked = 0;
        for (std::size_t i = 0; i < internal.size(); ++i)
            for (std::size_t j = i + 1; j < internal.size(); ++j)
                if (g.has_edge(internal[i], internal[j])) ++linked;
        int possible = internal_degree * (internal_degree - 1) / 2;
        c_in = static_cast<double>(linked) / static_cast<double>(possible);
    }
    double denom = static_cast<double>(std::max(e_max, 1)) * static_cast<double>(deg);
    return static_cast<double>(internal_degree) / denom - (1.0 - c_in);
}

double naive_graph_permanence(const Graph& g, const CommunityStructure& cs) {
    double sum = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) sum += naive_vertex_permanence(g, cs, v);
    return sum / static_cast<double>(g.node_count());
}

OracleMetrics oracle_metrics(const Graph& g, const CommunityStructure& cs) {
    int n = g.node_count();
    long long m = g.edge_count();
    std::vector<long long> intra_edges(cs.k(), 0);
    std::vector<long long> degree_sum(cs.k(), 0);
    long long total_pairs = 0;
    long long correct = 0;
    long long intra_with_edge = 0;
    for (NodeId u = 0; u < n; ++u) {
        degree_sum[cs.community_of(u)] += g.degree(u);
        for (NodeId v = u + 1; v < n; ++v) {
            ++total_pairs;
            bool edge = g.has_edge(u, v);
            bool same = cs.same_community(u, v);
            if (same && edge) {
                ++intra_with_edge;
                ++intra_edges[cs.community_of(u)];
                ++correct;
            } else if (!same && !edge) {
                ++correct;
            }
        }
    }
    OracleMetrics out;
    double md = static_cast<double>(m);
    for (int c = 0; c < cs.k(); ++c) {
        double frac = static_cast<double>(degree_sum[c]) / (2.0 * md);
        out.modularity += static_cast<double>(intra_edges[c]) / md - frac * frac;
    }
    out.coverage = static_cast<double>(intra_with_edge) / md;
    out.partition_quality = static_cast<double>(correct) / static_cast<double>(total_pairs);
    return out;
}

namespace {

// Strongest external pull for u, computed from scratch; smallest community
// index wins ties, nullopt with no external edges.
std::optional<int> naive_pull(const Graph& g, const CommunityStructure& cs, NodeId u) {
    int own = cs.community_of(u);
    std::map<int, int> external;  // ordered: ascending community index
    for (NodeId w : g.neighbors(u)) {
        int c = cs.community_of(w);
        if (c != own) ++external[c];
    }
    std::optional<int> best;
    int best_count = 0;
    for (const auto& [c, count] : external) {
        if (count > best_count) {
            best_count = count;
            best = c;
        }
    }
    return best;
}

bool lex_less(const Graph& g, const EdgeUpdate& a, const EdgeUpdate& b) {
    return std::tie(g.label(a.u), g.label(a.v)) < std::tie(g.label(b.u), g.label(b.v));
}

// Best candidate of a pool by vertex-level score with full recomputation on
// a mutated copy; hide scores old-minus-new, recovery new-minus-old.
std::optional<EdgeUpdate> pick_best(const Graph& g, const CommunityStructure& cs,
                                    const std::vector<EdgeUpdate>& pool, bool hide) {
    std::optional<EdgeUpdate> best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (const EdgeUpdate& e : pool) {
        Graph g2 = apply_update(g, e);
        double before = naive_vertex_permanence(g, cs, e.u);
        double after = naive_vertex_permanence(g2, cs, e.u);
        double score = hide ? before - after : after - before;
        if (!best || score > best_score || (score == best_score && lex_less(g, e, *best))) {
            best = e;
            best_score = score;
        }
    }
    return best;
}

double graph_level(const Graph& g, const CommunityStructure& cs, const EdgeUpdate& e, bool hide) {
    Graph g2 = apply_update(g, e);
    double before = naive_graph_permanence(g, cs);
    double after = naive_graph_permanence(g2, cs);
    return hide ? before - after : after - before;
}

}  // namespace

OracleStep oracle_greedy_step(const Graph& g, const CommunityStructure& cs, int target_comm,
                              bool hide) {
    OracleStep step;

    // inter pool: (u in target, v in u's strongest external community);
    // hiding adds missing pairs, recovery deletes present ones
    for (NodeId u : cs.members(target_comm)) {
        std::optional<int> pull = naive_pull(g, cs, u);
        if (!pull) continue;
        for (NodeId v : cs.members(*pull)) {
            bool present = g.has_edge(u, v);
            if (hide && !present) step.inter_pool.push_back({permnet::EdgeAction::Add, u, v});
            if (!hide && present) step.inter_pool.push_back({permnet::EdgeAction::Delete, u, v});
        }
    }
    // intra pool: pairs inside the target, oriented label-lexicographically;
    // hiding deletes present pairs, recovery adds missing ones
    const std::vector<NodeId>& members = cs.members(target_comm);
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            NodeId x = members[i];
            NodeId y = members[j];
            bool present = g.has_edge(x, y);
            if (present != hide) continue;
            if (!(g.label(x) < g.label(y))) std::swap(x, y);
            step.intra_pool.push_back(
                {hide ? permnet::EdgeAction::Delete : permnet::EdgeAction::Add, x, y});
        }
    }

    step.best_inter = pick_best(g, cs, step.inter_pool, hide);
    step.best_intra = pick_best(g, cs, step.intra_pool, hide);

    constexpr double kNone = -std::numeric_limits<double>::infinity();
    double inter_level = step.best_inter ? graph_level(g, cs, *step.best_inter, hide) : kNone;
    double intra_level = step.best_intra ? graph_level(g, cs, *step.best_intra, hide) : kNone;

    if (step.best_inter && inter_level >= intra_level && inter_level > 0.0) {
        step.applied = step.best_inter;
    } else if (step.best_intra && intra_level > 0.0) {
        step.applied = step.best_intra;
    }
    return step;
}

}  // namespace testutil
