#include "permnet/graph.hpp"

#include <algorithm>

namespace permnet {

Graph::Graph(std::vector<std::string> labels) : labels_(std::move(labels)) {
    adjacency_.resize(labels_.size());
    label_to_id_.reserve(labels_.size());
    for (NodeId v = 0; v < node_count(); ++v) {
        auto [it, fresh] = label_to_id_.emplace(labels_[v], v);
        if (!fresh)
            throw std::invalid_argument("duplicate node label '" + labels_[v] + "'");
    }
}

Graph Graph::with_nodes(int n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return Graph(std::move(labels));
}

NodeId Graph::id_of(const std::string& label) const {
    auto it = label_to_id_.find(label);
    if (it == label_to_id_.end())
        throw std::out_of_range("unknown node label '" + label + "'");
    return it->second;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    const auto& nb = adjacency_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::bump_version(EdgeAction a, NodeId u, NodeId v) {
    // splitmix64-style mixing over the update history
    std::uint64_t x = version_ ^ (static_cast<std::uint64_t>(u) << 32) ^
                      static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) ^
                      (a == EdgeAction::Add ? 0x2545f4914f6cdd1dull : 0x9e6c7d4921ed1ca7ull);
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    version_ = x ^ (x >> 31);
}

void Graph::add_edge(NodeId u, NodeId v) {
    check_node(u);
    check_node(v);
    if (u == v)
        throw std::invalid_argument("self-loop on node '" + labels_[u] + "'");
    auto& nu = adjacency_[u];
    auto pos = std::lower_bound(nu.begin(), nu.end(), v);
    if (pos != nu.end() && *pos == v)
        throw std::invalid_argument("edge (" + labels_[u] + ", " + labels_[v] + ") already present");
    nu.insert(pos, v);
    auto& nv = adjacency_[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++edge_count_;
    bump_version(EdgeAction::Add, u, v);
}

void Graph::remove_edge(NodeId u, NodeId v) {
    check_node(u);
    check_node(v);
    auto& nu = adjacency_[u];
    auto pos = std::lower_bound(nu.begin(), nu.end(), v);
    if (pos == nu.end() || *pos != v)
        throw std::invalid_argument("edge (" + labels_[u] + ", " + labels_[v] + ") not present");
    nu.erase(pos);
    auto& nv = adjacency_[v];
    nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
    --edge_count_;
    bump_version(EdgeAction::Delete, u, v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u)
        for (NodeId v : adjacency_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph apply_update(const Graph& g, const EdgeUpdate& e) {
    if (e.u == e.v)
        throw std::invalid_argument("edge update endpoints coincide");
    Graph out = g;
    if (e.action == EdgeAction::Add)
        out.add_edge(e.u, e.v);
    else
        out.remove_edge(e.u, e.v);
    return out;
}

bool is_connected(const Graph& g) {
    int n = g.node_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        NodeId x = stack.back();
        stack.pop_back();
        for (NodeId y : g.neighbors(x)) {
            if (!seen[y]) {
                seen[y] = 1;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    return reached == n;
}

}  // namespace permnet
