#include "permnet/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace permnet {

namespace {

Graph build_from_labeled_edges(const std::vector<std::string>& labels,
                               const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    Graph g{labels};
    for (auto [u, v] : pairs) {
        if (!g.has_edge(u, v)) g.add_edge(u, v);
    }
    return g;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
    std::vector<std::string> labels;
    std::map<std::string, NodeId> ids;
    std::vector<std::pair<NodeId, NodeId>> pairs;

    auto intern = [&](const std::string& tok) {
        auto it = ids.find(tok);
        if (it != ids.end()) return it->second;
        NodeId id = static_cast<NodeId>(labels.size());
        labels.push_back(tok);
        ids.emplace(tok, id);
        return id;
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;  // blank or comment-only line
        if (!(ls >> b) || (ls >> extra))
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected exactly two tokens");
        if (a == b)
            throw ParseError("line " + std::to_string(lineno) + ": self-loop on '" + a + "'");
        NodeId ua = intern(a);  // sequenced: first appearance fixes the id order
        NodeId ub = intern(b);
        pairs.emplace_back(ua, ub);
    }
    return build_from_labeled_edges(labels, pairs);
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

// ---------------------------------------------------------------------------
// GML subset
// ---------------------------------------------------------------------------

namespace {

struct GmlToken {
    enum Kind { Word, Int, Real, Str, Open, Close, End } kind = End;
    std::string text;
    long long value = 0;
};

class GmlLexer {
public:
    explicit GmlLexer(std::istream& in) : in_(in) {}

    GmlToken next() {
        int c;
        while ((c = in_.get()) != EOF) {
            if (std::isspace(c)) continue;
            if (c == '#') {  // comment to end of line
                while ((c = in_.get()) != EOF && c != '\n') {}
                continue;
            }
            break;
        }
        if (c == EOF) return {GmlToken::End, "", 0};
        if (c == '[') return {GmlToken::Open, "[", 0};
        if (c == ']') return {GmlToken::Close, "]", 0};
        if (c == '"') {
            std::string s;
            while ((c = in_.get()) != EOF && c != '"') s.push_back(static_cast<char>(c));
            if (c == EOF) throw ParseError("gml: unterminated string");
            return {GmlToken::Str, s, 0};
        }
        std::string tok;
        tok.push_back(static_cast<char>(c));
        while ((c = in_.peek()) != EOF && !std::isspace(c) && c != '[' && c != ']')
            tok.push_back(static_cast<char>(in_.get()));
        if (tok.find_first_not_of("+-0123456789") == std::string::npos &&
            tok.find_first_of("0123456789") != std::string::npos)
            return {GmlToken::Int, tok, std::stoll(tok)};
        if (tok.find_first_not_of("+-0123456789.eE") == std::string::npos &&
            tok.find_first_of("0123456789") != std::string::npos)
            return {GmlToken::Real, tok, 0};
        return {GmlToken::Word, tok, 0};
    }

private:
    std::istream& in_;
};

// Consumes a value we do not care about; nested blocks are skipped whole.
void skip_value(GmlLexer& lex, const GmlToken& first) {
    if (first.kind != GmlToken::Open) return;  // scalar already consumed
    int depth = 1;
    while (depth > 0) {
        GmlToken t = lex.next();
        if (t.kind == GmlToken::End) throw ParseError("gml: unbalanced brackets");
        if (t.kind == GmlToken::Open) ++depth;
        if (t.kind == GmlToken::Close) --depth;
    }
}

}  // namespace

Graph parse_gml(std::istream& in) {
    GmlLexer lex(in);

    // find the graph block
    bool found = false;
    for (GmlToken t = lex.next(); t.kind != GmlToken::End; t = lex.next()) {
        if (t.kind == GmlToken::Word && t.text == "graph") {
            GmlToken open = lex.next();
            if (open.kind != GmlToken::Open)
                throw ParseError("gml: 'graph' not followed by '['");
            found = true;
            break;
        }
    }
    if (!found) throw ParseError("gml: no graph block");

    struct NodeDecl {
        long long id;
        std::optional<std::string> label;
    };
    std::vector<NodeDecl> nodes;
    std::vector<std::pair<long long, long long>> edges;

    auto parse_block = [&](bool is_node) {
        GmlToken open = lex.next();
        if (open.kind != GmlToken::Open)
            throw ParseError(std::string("gml: '") + (is_node ? "node" : "edge") +
                             "' not followed by '['");
        std::optional<long long> id, source, target;
        std::optional<std::string> label;
        while (true) {
            GmlToken key = lex.next();
            if (key.kind == GmlToken::Close) break;
            if (key.kind != GmlToken::Word)
                throw ParseError("gml: expected key inside block, got '" + key.text + "'");
            GmlToken val = lex.next();
            if (key.text == "id" && val.kind == GmlToken::Int)
                id = val.value;
            else if (key.text == "source" && val.kind == GmlToken::Int)
                source = val.value;
            else if (key.text == "target" && val.kind == GmlToken::Int)
                target = val.value;
            else if (key.text == "label" && (val.kind == GmlToken::Str || val.kind == GmlToken::Word ||
                                             val.kind == GmlToken::Int || val.kind == GmlToken::Real))
                label = val.text;
            else
                skip_value(lex, val);
        }
        if (is_node) {
            if (!id) throw ParseError("gml: node block without id");
            nodes.push_back({*id, label});
        } else {
            if (!source || !target) throw ParseError("gml: edge block without source/target");
            edges.emplace_back(*source, *target);
        }
    };

    while (true) {
        GmlToken t = lex.next();
        if (t.kind == GmlToken::Close) break;
        if (t.kind == GmlToken::End) throw ParseError("gml: graph block not closed");
        if (t.kind != GmlToken::Word)
            throw ParseError("gml: expected key inside graph block");
        if (t.text == "node") {
            parse_block(true);
        } else if (t.text == "edge") {
            parse_block(false);
        } else {
            skip_value(lex, lex.next());  // e.g. directed 0, Creator "..."
        }
    }

    std::map<long long, NodeId> id_map;
    std::vector<std::string> labels;
    labels.reserve(nodes.size());
    for (const auto& nd : nodes) {
        if (id_map.count(nd.id))
            throw ParseError("gml: duplicate node id " + std::to_string(nd.id));
        id_map[nd.id] = static_cast<NodeId>(labels.size());
        labels.push_back(nd.label ? *nd.label : std::to_string(nd.id));
    }
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(edges.size());
    for (auto [s, t] : edges) {
        auto si = id_map.find(s), ti = id_map.find(t);
        if (si == id_map.end() || ti == id_map.end())
            throw ParseError("gml: edge references undeclared node id " +
                             std::to_string(si == id_map.end() ? s : t));
        if (si->second == ti->second)
            throw ParseError("gml: self-loop on node id " + std::to_string(s));
        pairs.emplace_back(si->second, ti->second);
    }
    return build_from_labeled_edges(labels, pairs);
}

Graph parse_gml(const std::string& text) {
    std::istringstream in(text);
    return parse_gml(in);
}

std::string serialize_edge_list(const Graph& g) {
    std::vector<std::pair<std::string, std::string>> lines;
    lines.reserve(g.edge_count());
    for (auto [u, v] : g.edges()) {
        std::string a = g.label(u), b = g.label(v);
        if (b < a) std::swap(a, b);
        lines.emplace_back(std::move(a), std::move(b));
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& [a, b] : lines) {
        out += a;
        out += ' ';
        out += b;
        out += '\n';
    }
    return out;
}

std::string serialize_gml(const Graph& g) {
    std::ostringstream out;
    out << "graph [\n  directed 0\n";
    for (NodeId v = 0; v < g.node_count(); ++v)
        out << "  node [\n    id " << v << "\n    label \"" << g.label(v) << "\"\n  ]\n";
    for (auto [u, v] : g.edges())
        out << "  edge [\n    source " << u << "\n    target " << v << "\n  ]\n";
    out << "]\n";
    return out.str();
}

GraphFormat format_from_path(const std::string& path) {
    auto dot = path.rfind('.');
    if (dot != std::string::npos) {
        std::string ext = path.substr(dot + 1);
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (ext == "gml") return GraphFormat::Gml;
    }
    return GraphFormat::EdgeList;
}

Graph load_graph(const std::string& path, std::optional<GraphFormat> format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
    GraphFormat f = format.value_or(format_from_path(path));
    try {
        return f == GraphFormat::Gml ? parse_gml(in) : parse_edge_list(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_graph(const std::string& path, const Graph& g, std::optional<GraphFormat> format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file '" + path + "'");
    GraphFormat f = format.value_or(format_from_path(path));
    out << (f == GraphFormat::Gml ? serialize_gml(g) : serialize_edge_list(g));
}

}  // namespace permnet
