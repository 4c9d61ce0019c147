#ifndef PERMNET_COMMUNITY_HPP
#define PERMNET_COMMUNITY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "permnet/graph.hpp"

namespace permnet {

// Disjoint partition of the node set into k non-empty communities, indexed
// 0..k-1. Communities are canonically ordered by their smallest member id,
// members sorted ascending, so equal partitions compare equal and "smallest
// community index" tie-breaks are well defined.
class CommunityStructure {
public:
    // Compacts arbitrary per-node community labels into canonical indices.
    static CommunityStructure from_assignment(const std::vector<int>& raw_labels);
    // Communities given as node-id sets; must cover 0..n-1 disjointly.
    static CommunityStructure from_communities(int node_count,
                                               const std::vector<std::vector<NodeId>>& groups);

    static CommunityStructure singletons(int node_count);

    int k() const { return static_cast<int>(members_.size()); }
    int node_count() const { return static_cast<int>(assignment_.size()); }
    int community_of(NodeId v) const;
    const std::vector<NodeId>& members(int community) const;
    const std::vector<int>& assignment() const { return assignment_; }
    bool same_community(NodeId u, NodeId v) const {
        return community_of(u) == community_of(v);
    }

    // Throws unless the partition is a valid disjoint cover of g's node set.
    void validate(const Graph& g) const;

    std::uint64_t fingerprint() const;

    bool operator==(const CommunityStructure&) const = default;

private:
    std::vector<int> assignment_;
    std::vector<std::vector<NodeId>> members_;
};

// Multi-level modularity optimization (local moving + aggregation). Runs a
// handful of restarts with visiting orders derived from the seed and keeps
// the highest-modularity result, which flattens the local-optimum tail;
// deterministic per (g, seed). Equal-gain moves go to the candidate
// community with the smallest index.
CommunityStructure detect_louvain(const Graph& g, std::uint64_t seed);

// Asynchronous label propagation in seeded random order. Each node adopts the
// plurality label among its neighbors, ties to the smallest label; converged
// when a full sweep changes nothing, capped at 100 sweeps. Runs a handful of
// restarts with orders derived from the seed and keeps the highest-modularity
// result, which suppresses the degenerate all-one-community collapses;
// deterministic per (g, seed).
CommunityStructure detect_label_propagation(const Graph& g, std::uint64_t seed);

// Community with the highest Jaccard overlap against target_nodes; ties go to
// the smallest community index.
int match_community(const CommunityStructure& cs, const std::vector<NodeId>& target_nodes);

// Re-express a partition of `from` in `to`'s id space by matching node
// labels. Throws when the node sets differ.
CommunityStructure transfer_partition(const CommunityStructure& cs, const Graph& from,
                                      const Graph& to);

using DetectorFn = std::function<CommunityStructure(const Graph&, std::uint64_t)>;

// Registered detectors by name ("louvain", "labelprop").
const std::vector<std::pair<std::string, DetectorFn>>& detectors();
DetectorFn find_detector(const std::string& name);

// One line per community, space-separated node labels.
std::string serialize_communities(const CommunityStructure& cs, const Graph& g);

}  // namespace permnet

#endif
