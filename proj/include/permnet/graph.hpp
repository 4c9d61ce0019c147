#ifndef PERMNET_GRAPH_HPP
#define PERMNET_GRAPH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace permnet {

// Dense internal node id, 0..n-1. External string labels are kept alongside
// for reporting and tie-breaking.
using NodeId = int;

enum class EdgeAction { Add, Delete };

struct EdgeUpdate {
    EdgeAction action = EdgeAction::Add;
    NodeId u = -1;
    NodeId v = -1;

    EdgeUpdate() = default;
    EdgeUpdate(EdgeAction a, NodeId uu, NodeId vv) : action(a), u(uu), v(vv) {}

    EdgeUpdate inverse() const {
        return {action == EdgeAction::Add ? EdgeAction::Delete : EdgeAction::Add, u, v};
    }

    bool operator==(const EdgeUpdate&) const = default;
};

// Undirected simple graph. Adjacency is a sorted neighbor vector per node,
// so has_edge is a binary search and iteration order is deterministic.
// Mutation keeps both directions in sync; self-loops and parallel edges are
// rejected. Copies are cheap enough at the target scale (n <= ~10^4) and give
// the value semantics callers rely on when holding pre- and post-update graphs.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::vector<std::string> labels);

    // Nodes named 0..n-1 with their index as label.
    static Graph with_nodes(int n);

    int node_count() const { return static_cast<int>(adjacency_.size()); }
    int edge_count() const { return edge_count_; }

    const std::string& label(NodeId v) const {
        check_node(v);
        return labels_[v];
    }
    // Throws if unknown.
    NodeId id_of(const std::string& label) const;
    bool has_label(const std::string& label) const {
        return label_to_id_.count(label) > 0;
    }

    const std::vector<NodeId>& neighbors(NodeId v) const {
        check_node(v);
        return adjacency_[v];
    }
    int degree(NodeId v) const {
        check_node(v);
        return static_cast<int>(adjacency_[v].size());
    }
    bool has_edge(NodeId u, NodeId v) const;

    void add_edge(NodeId u, NodeId v);
    void remove_edge(NodeId u, NodeId v);

    // All edges as (u, v) pairs with u < v, ordered by (u, v).
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    // Stamp distinguishing mutation histories; used to tie caches to one
    // graph value. Copies share the stamp, every mutation changes it.
    std::uint64_t version() const { return version_; }

    // Structural equality (labels and adjacency); the version stamp is ignored.
    bool operator==(const Graph& other) const {
        return labels_ == other.labels_ && adjacency_ == other.adjacency_;
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> label_to_id_;
    std::vector<std::vector<NodeId>> adjacency_;
    int edge_count_ = 0;
    std::uint64_t version_ = 0x9e3779b97f4a7c15ull;

    void check_node(NodeId v) const {
        if (v < 0 || v >= node_count())
            throw std::out_of_range("unknown node id " + std::to_string(v));
    }
    void bump_version(EdgeAction a, NodeId u, NodeId v);
};

// Applies one edge update as a value operation: validates the update against
// g, returns the modified copy. The node set never changes.
Graph apply_update(const Graph& g, const EdgeUpdate& e);

bool is_connected(const Graph& g);

}  // namespace permnet

#endif
