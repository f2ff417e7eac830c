#include "bunkbed/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace bunkbed {

namespace {

std::vector<std::string> content_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::string current;
    auto flush = [&] {
        const auto hash = current.find('#');
        if (hash != std::string::npos) current.erase(hash);
        std::istringstream probe(current);
        std::string token;
        if (probe >> token) lines.push_back(current);
        current.clear();
    };
    for (char c : text) {
        if (c == '\n')
            flush();
        else if (c != '\r')
            current.push_back(c);
    }
    flush();
    return lines;
}

} // namespace

GraphFile parse_graph_text(std::string_view text) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("empty graph file");

    std::size_t cursor = 0;
    int n = 0, m = 0;
    {
        std::istringstream head(lines[cursor++]);
        if (!(head >> n >> m)) throw ParseError("first line must be 'n m'");
        std::string extra;
        if (head >> extra) throw ParseError("trailing tokens after 'n m'");
    }
    if (n <= 0 || m < 0) throw ParseError("bad graph dimensions");

    std::vector<std::pair<int, int>> edges;
    std::vector<Rational> weights;
    bool any_weight = false;
    for (int i = 0; i < m; ++i) {
        if (cursor >= lines.size()) throw ParseError("missing edge lines");
        std::istringstream line(lines[cursor++]);
        int u, v;
        if (!(line >> u >> v)) throw ParseError("bad edge line: " + lines[cursor - 1]);
        std::string w;
        if (line >> w) {
            weights.push_back(parse_rational(w));
            any_weight = true;
        } else {
            weights.push_back(Rational(1));
        }
        std::string extra;
        if (line >> extra) throw ParseError("trailing tokens on edge line");
        edges.push_back({u, v});
    }

    GraphFile file{BaseGraph(n, edges), std::nullopt, std::nullopt};
    if (any_weight) file.edge_weights = weights;

    if (cursor < lines.size()) {
        std::istringstream marker(lines[cursor]);
        std::string token;
        marker >> token;
        if (token != "%vertical")
            throw ParseError("unexpected content after edges: " + lines[cursor]);
        ++cursor;
        std::vector<Rational> vertical;
        for (int i = 0; i < n; ++i) {
            if (cursor >= lines.size()) throw ParseError("missing vertical weights");
            std::istringstream line(lines[cursor++]);
            std::string w;
            if (!(line >> w)) throw ParseError("bad vertical weight line");
            std::string extra;
            if (line >> extra) throw ParseError("trailing tokens on vertical weight line");
            vertical.push_back(parse_rational(w));
        }
        if (cursor != lines.size()) throw ParseError("trailing content after vertical weights");
        file.vertical_weights = std::move(vertical);
        if (!file.edge_weights) file.edge_weights = weights; // defaults of 1
    } else if (cursor != lines.size()) {
        throw ParseError("trailing content in graph file");
    }
    return file;
}

GraphFile read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_graph_text(buffer.str());
}

std::string serialize_graph(const BaseGraph& graph, const std::vector<Rational>* edge_weights,
                            const std::vector<Rational>* vertical_weights) {
    std::ostringstream out;
    out << graph.vertex_count() << ' ' << graph.edge_count() << '\n';
    for (int e = 0; e < graph.edge_count(); ++e) {
        out << graph.edge(e).u << ' ' << graph.edge(e).v;
        if (edge_weights) out << ' ' << rational_to_string((*edge_weights)[e]);
        out << '\n';
    }
    if (vertical_weights) {
        out << "%vertical\n";
        for (const Rational& w : *vertical_weights) out << rational_to_string(w) << '\n';
    }
    return out.str();
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

std::string digest_hex(std::string_view data) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

} // namespace bunkbed
