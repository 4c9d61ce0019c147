#ifndef PERMNET_IO_HPP
#define PERMNET_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "permnet/graph.hpp"

namespace permnet {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GraphFormat { EdgeList, Gml };

// One "u v" pair per line; `#` starts a comment; labels are arbitrary
// non-whitespace tokens. Node ids are assigned in first-appearance order.
// Duplicate pairs (either orientation) collapse to one edge; self-loops and
// lines with a token count other than two are rejected with their line number.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);

// Minimal GML subset: a `graph [ ... ]` block with `node [ id <int> ... ]`
// and `edge [ source <int> target <int> ]` entries. A node's `label`
// attribute names it when present, otherwise the id does. `directed` is
// accepted and ignored (everything is treated as undirected, reverse
// duplicates collapse). All unknown keys, including nested blocks, are
// skipped.
Graph parse_gml(std::istream& in);
Graph parse_gml(const std::string& text);

// Sorted "u v" lines (lexicographic by label, smaller label first within a
// line) so serialized graphs diff deterministically.
std::string serialize_edge_list(const Graph& g);
std::string serialize_gml(const Graph& g);

// .gml / .GML chooses GML, anything else the edge-list format.
GraphFormat format_from_path(const std::string& path);

Graph load_graph(const std::string& path, std::optional<GraphFormat> format = std::nullopt);
void write_graph(const std::string& path, const Graph& g,
                 std::optional<GraphFormat> format = std::nullopt);

}  // namespace permnet

#endif
