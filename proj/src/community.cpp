#include "permnet/community.hpp"

#include <algorithm>

#include "permnet/metrics.hpp"
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

namespace permnet {

// ---------------------------------------------------------------------------
// CommunityStructure
// ---------------------------------------------------------------------------

CommunityStructure CommunityStructure::from_assignment(const std::vector<int>& raw_labels) {
    int n = static_cast<int>(raw_labels.size());
    // canonical community order: ascending smallest member id
    std::unordered_map<int, int> compact;
    std::vector<std::vector<NodeId>> groups;
    for (NodeId v = 0; v < n; ++v) {
        auto [it, fresh] = compact.emplace(raw_labels[v], static_cast<int>(groups.size()));
        if (fresh) groups.emplace_back();
        groups[it->second].push_back(v);
    }
    CommunityStructure cs;
    cs.members_ = std::move(groups);
    cs.assignment_.assign(n, -1);
    for (int c = 0; c < static_cast<int>(cs.members_.size()); ++c)
        for (NodeId v : cs.members_[c]) cs.assignment_[v] = c;
    return cs;
}

CommunityStructure CommunityStructure::from_communities(
    int node_count, const std::vector<std::vector<NodeId>>& groups) {
    std::vector<int> raw(node_count, -1);
    for (int c = 0; c < static_cast<int>(groups.size()); ++c) {
        if (groups[c].empty()) throw std::invalid_argument("empty community");
        for (NodeId v : groups[c]) {
            if (v < 0 || v >= node_count)
                throw std::out_of_range("community member out of range");
            if (raw[v] != -1) throw std::invalid_argument("overlapping communities");
            raw[v] = c;
        }
    }
    for (NodeId v = 0; v < node_count; ++v)
        if (raw[v] == -1)
            throw std::invalid_argument("node " + std::to_string(v) + " not covered");
    return from_assignment(raw);
}

CommunityStructure CommunityStructure::singletons(int node_count) {
    std::vector<int> raw(node_count);
    std::iota(raw.begin(), raw.end(), 0);
    return from_assignment(raw);
}

int CommunityStructure::community_of(NodeId v) const {
    if (v < 0 || v >= node_count())
        throw std::out_of_range("unknown node id " + std::to_string(v));
    return assignment_[v];
}

const std::vector<NodeId>& CommunityStructure::members(int community) const {
    if (community < 0 || community >= k())
        throw std::out_of_range("unknown community index " + std::to_string(community));
    return members_[community];
}

void CommunityStructure::validate(const Graph& g) const {
    if (node_count() != g.node_count())
        throw std::invalid_argument("partition covers a different node set");
    std::vector<char> seen(node_count(), 0);
    for (int c = 0; c < k(); ++c) {
        if (members_[c].empty()) throw std::invalid_argument("empty community");
        for (NodeId v : members_[c]) {
            if (assignment_[v] != c)
                throw std::invalid_argument("assignment/members mismatch");
            if (seen[v]) throw std::invalid_argument("overlapping communities");
            seen[v] = 1;
        }
    }
    for (NodeId v = 0; v < node_count(); ++v)
        if (!seen[v]) throw std::invalid_argument("node not covered by any community");
}

std::uint64_t CommunityStructure::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t x) {
        h ^= x;
        h *= 0x100000001b3ull;
    };
    mix(static_cast<std::uint64_t>(k()));
    for (int a : assignment_) mix(static_cast<std::uint64_t>(a) + 1);
    return h;
}

// ---------------------------------------------------------------------------
// Seeded shuffling. Hand-rolled Fisher-Yates so visit orders are stable across
// standard libraries.
// ---------------------------------------------------------------------------

namespace {

std::uint64_t next_u64(std::mt19937_64& rng) { return rng(); }

void shuffle_ids(std::vector<NodeId>& ids, std::mt19937_64& rng) {
    for (std::size_t i = ids.size(); i > 1; --i)
        std::swap(ids[i - 1], ids[next_u64(rng) % i]);
}

}  // namespace

// ---------------------------------------------------------------------------
// Louvain
// ---------------------------------------------------------------------------

namespace {

// Weighted level graph used during aggregation. self_weight holds twice the
// collapsed intra weight so node strengths stay consistent.
struct LevelGraph {
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<double> self_weight;
    double total_weight2 = 0;  // sum of strengths == 2m

    int size() const { return static_cast<int>(adj.size()); }
    double strength(int v) const {
        double s = self_weight[v];
        for (auto [_, w] : adj[v]) s += w;
        return s;
    }
};

// One pass of local moving; returns true if any node changed community.
bool local_moving(const LevelGraph& lg, std::vector<int>& community, std::mt19937_64& rng) {
    int n = lg.size();
    std::vector<double> comm_tot(n, 0.0);
    for (int v = 0; v < n; ++v) comm_tot[community[v]] += lg.strength(v);

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0);
    shuffle_ids(order, rng);

    bool any_move = false;
    bool moved = true;
    int sweeps = 0;
    std::vector<double> weight_to(n, 0.0);
    std::vector<int> touched;
    while (moved && sweeps < 1000) {
        moved = false;
        ++sweeps;
        for (int v : order) {
            int home = community[v];
            double k_v = lg.strength(v);

            touched.clear();
            for (auto [nb, w] : lg.adj[v]) {
                int c = community[nb];
                if (weight_to[c] == 0.0) touched.push_back(c);
                weight_to[c] += w;
            }
            if (weight_to[home] == 0.0) touched.push_back(home);

            comm_tot[home] -= k_v;
            // gain of joining c (up to a constant): w(v,c) - tot_c * k_v / 2m
            auto gain = [&](int c) {
                return weight_to[c] - comm_tot[c] * k_v / lg.total_weight2;
            };
            std::sort(touched.begin(), touched.end());
            int best = home;
            double best_gain = gain(home);
            for (int c : touched) {
                if (c == home) continue;
                double gnew = gain(c);
                if (gnew > best_gain || (gnew == best_gain && c < best)) {
                    best = c;
                    best_gain = gnew;
                }
            }
            comm_tot[best] += k_v;
            if (best != home) {
                community[v] = best;
                moved = true;
                any_move = true;
            }
            for (int c : touched) weight_to[c] = 0.0;
        }
    }
    return any_move;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& community,
                     std::vector<int>& relabel) {
    int n = lg.size();
    relabel.assign(n, -1);
    int k = 0;
    // supernode ids follow ascending community id, keeping levels stable
    std::vector<int> present;
    for (int v = 0; v < n; ++v) present.push_back(community[v]);
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    std::unordered_map<int, int> to_new;
    for (int c : present) to_new[c] = k++;
    for (int v = 0; v < n; ++v) relabel[v] = to_new[community[v]];

    LevelGraph out;
    out.adj.resize(k);
    out.self_weight.assign(k, 0.0);
    out.total_weight2 = lg.total_weight2;
    std::vector<std::map<int, double>> acc(k);
    for (int v = 0; v < n; ++v) {
        int cv = relabel[v];
        out.self_weight[cv] += lg.self_weight[v];
        for (auto [nb, w] : lg.adj[v]) {
            int cn = relabel[nb];
            if (cn == cv)
                out.self_weight[cv] += w;  // both directions accumulate
            else
                acc[cv][cn] += w;
        }
    }
    for (int c = 0; c < k; ++c)
        for (auto [nb, w] : acc[c]) out.adj[c].emplace_back(nb, w);
    return out;
}

}  // namespace

namespace {

CommunityStructure louvain_once(const Graph& g, std::uint64_t stream) {
    int n = g.node_count();
    LevelGraph lg;
    lg.adj.resize(n);
    lg.self_weight.assign(n, 0.0);
    for (NodeId v = 0; v < n; ++v)
        for (NodeId nb : g.neighbors(v)) lg.adj[v].emplace_back(nb, 1.0);
    lg.total_weight2 = 2.0 * g.edge_count();

    std::mt19937_64 rng(stream);
    std::vector<int> node_to_final(n);
    std::iota(node_to_final.begin(), node_to_final.end(), 0);

    while (true) {
        std::vector<int> community(lg.size());
        std::iota(community.begin(), community.end(), 0);
        bool improved = local_moving(lg, community, rng);
        if (!improved) break;
        std::vector<int> relabel;
        LevelGraph next = aggregate(lg, community, relabel);
        for (int v = 0; v < n; ++v) node_to_final[v] = relabel[community[node_to_final[v]]];
        if (next.size() == lg.size()) break;
        lg = std::move(next);
    }
    return CommunityStructure::from_assignment(node_to_final);
}

}  // namespace

CommunityStructure detect_louvain(const Graph& g, std::uint64_t seed) {
    int n = g.node_count();
    if (n == 0) throw std::invalid_argument("empty graph");
    if (g.edge_count() == 0) return CommunityStructure::singletons(n);

    constexpr int kRestarts = 32;
    CommunityStructure best = CommunityStructure::singletons(n);
    double best_q = -2.0;
    for (int r = 0; r < kRestarts; ++r) {
        std::uint64_t stream = seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(r);
        CommunityStructure cs = louvain_once(g, stream);
        double q = modularity(g, cs);
        if (q > best_q) {  // strict: the earliest restart wins ties
            best_q = q;
            best = std::move(cs);
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Label propagation
// ---------------------------------------------------------------------------

namespace {

CommunityStructure labelprop_once(const Graph& g, std::uint64_t stream) {
    int n = g.node_count();
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);

    std::mt19937_64 rng(stream);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0);

    std::vector<int> count(n, 0);
    std::vector<int> touched;
    for (int sweep = 0; sweep < 100; ++sweep) {
        shuffle_ids(order, rng);
        bool changed = false;
        for (NodeId v : order) {
            if (g.degree(v) == 0) continue;
            touched.clear();
            for (NodeId nb : g.neighbors(v)) {
                if (count[label[nb]] == 0) touched.push_back(label[nb]);
                ++count[label[nb]];
            }
            int best = -1, best_count = 0;
            std::sort(touched.begin(), touched.end());
            for (int l : touched) {
                if (count[l] > best_count) {
                    best = l;
                    best_count = count[l];
                }
            }
            for (int l : touched) count[l] = 0;
            if (best != label[v]) {
                label[v] = best;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return CommunityStructure::from_assignment(label);
}

}  // namespace

CommunityStructure detect_label_propagation(const Graph& g, std::uint64_t seed) {
    int n = g.node_count();
    if (n == 0) throw std::invalid_argument("empty graph");
    if (g.edge_count() == 0) return CommunityStructure::singletons(n);

    constexpr int kRestarts = 2;  // labelprop
    CommunityStructure best = CommunityStructure::singletons(n);
    double best_q = -2.0;
    for (int r = 0; r < kRestarts; ++r) {
        std::uint64_t stream = seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(r);
        CommunityStructure cs = labelprop_once(g, stream);
        double q = modularity(g, cs);
        if (q > best_q) {  // strict: the earliest restart wins ties
            best_q = q;
            best = std::move(cs);
        }
    }
    return best;
}

int match_community(const CommunityStructure& cs, const std::vector<NodeId>& target_nodes) {
    if (target_nodes.empty()) throw std::invalid_argument("empty target node set");
    std::vector<NodeId> target = target_nodes;
    std::sort(target.begin(), target.end());
    target.erase(std::unique(target.begin(), target.end()), target.end());

    int best = 0;
    double best_jaccard = -1.0;
    for (int c = 0; c < cs.k(); ++c) {
        const auto& mem = cs.members(c);
        std::size_t inter = 0;
        std::size_t i = 0, j = 0;
        while (i < target.size() && j < mem.size()) {
            if (target[i] == mem[j]) {
                ++inter;
                ++i;
                ++j;
            } else if (target[i] < mem[j]) {
                ++i;
            } else {
                ++j;
            }
        }
        double uni = static_cast<double>(target.size() + mem.size() - inter);
        double jac = inter == 0 ? 0.0 : static_cast<double>(inter) / uni;
        if (jac > best_jaccard) {
            best_jaccard = jac;
            best = c;
        }
    }
    return best;
}

CommunityStructure transfer_partition(const CommunityStructure& cs, const Graph& from,
                                      const Graph& to) {
    if (from.node_count() != to.node_count() || cs.node_count() != from.node_count()) {
        throw std::invalid_argument("transfer_partition: node counts differ");
    }
    std::vector<int> raw(to.node_count());
    for (NodeId v = 0; v < to.node_count(); ++v) {
        raw[v] = cs.community_of(from.id_of(to.label(v)));
    }
    return CommunityStructure::from_assignment(raw);
}

const std::vector<std::pair<std::string, DetectorFn>>& detectors() {
    static const std::vector<std::pair<std::string, DetectorFn>> table = {
        {"louvain", [](const Graph& g, std::uint64_t s) { return detect_louvain(g, s); }},
        {"labelprop",
         [](const Graph& g, std::uint64_t s) { return detect_label_propagation(g, s); }},
    };
    return table;
}

DetectorFn find_detector(const std::string& name) {
    for (const auto& [n, fn] : detectors())
        if (n == name) return fn;
    throw std::invalid_argument("unknown detector '" + name + "'");
}

std::string serialize_communities(const CommunityStructure& cs, const Graph& g) {
    std::string out;
    for (int c = 0; c < cs.k(); ++c) {
        bool first = true;
        for (NodeId v : cs.members(c)) {
            if (!first) out += ' ';
            out += g.label(v);
            first = false;
        }
        out += '\n';
    }
    return out;
}

}  // namespace permnet
