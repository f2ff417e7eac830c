#include "bunkbed/graph.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace bunkbed {

namespace {

bool connected_check(int n, const std::vector<std::vector<AdjEntry>>& adjacency) {
    if (n == 0) return false;
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (const auto& entry : adjacency[x]) {
            if (!seen[entry.to]) {
                seen[entry.to] = true;
                ++reached;
                stack.push_back(entry.to);
            }
        }
    }
    return reached == n;
}

} // namespace

BaseGraph::BaseGraph(int vertex_count, const std::vector<std::pair<int, int>>& edge_list)
    : n_(vertex_count) {
    if (vertex_count <= 0) throw MalformedEdge("vertex count must be positive");
    edges_.reserve(edge_list.size());
    adjacency_.assign(n_, {});
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : edge_list) {
        if (a < 0 || a >= n_ || b < 0 || b >= n_)
            throw MalformedEdge("edge endpoint out of range: (" + std::to_string(a) + "," +
                                std::to_string(b) + ")");
        if (a == b) throw MalformedEdge("self-loop at vertex " + std::to_string(a));
        const int u = std::min(a, b), v = std::max(a, b);
        if (!seen.insert({u, v}).second)
            throw MalformedEdge("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        const int id = static_cast<int>(edges_.size());
        edges_.push_back({u, v});
        adjacency_[u].push_back({v, id});
        adjacency_[v].push_back({u, id});
    }
    for (auto& list : adjacency_)
        std::sort(list.begin(), list.end(),
                  [](const AdjEntry& lhs, const AdjEntry& rhs) { return lhs.to < rhs.to; });
    connected_ = connected_check(n_, adjacency_);
}

int BaseGraph::edge_id(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) return -1;
    const auto& list = adjacency_[u];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const AdjEntry& e, int target) { return e.to < target; });
    if (it != list.end() && it->to == v) return it->edge;
    return -1;
}

OrientedEdge BaseGraph::oriented(int id, bool reversed) const {
    const Edge& e = edges_[id];
    return reversed ? OrientedEdge{id, true, e.v, e.u} : OrientedEdge{id, false, e.u, e.v};
}

bool is_cut_edge(const BaseGraph& graph, int u, int v) {
    const int id = graph.edge_id(u, v);
    if (id < 0)
        throw NotAnEdge("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
    // BFS from u avoiding the edge itself
    std::vector<bool> seen(graph.vertex_count(), false);
    std::vector<int> stack = {u};
    seen[u] = true;
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (const auto& entry : graph.neighbors(x)) {
            if (entry.edge == id || seen[entry.to]) continue;
            if (entry.to == v) return false;
            seen[entry.to] = true;
            stack.push_back(entry.to);
        }
    }
    return true;
}

BaseGraph path_graph(int length) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < length; ++i) edges.push_back({i, i + 1});
    return BaseGraph(length + 1, edges);
}

BaseGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
    return BaseGraph(n, edges);
}

BaseGraph cycle_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return BaseGraph(n, edges);
}

BaseGraph star_graph(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
    return BaseGraph(leaves + 1, edges);
}

BaseGraph random_connected_graph(int n, double edge_probability, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return random_connected_graph(n, edge_probability, rng);
}

BaseGraph random_connected_graph(int n, double edge_probability, SplitMix64& rng, int max_attempts) {
    if (n < 2) throw MalformedEdge("random graph needs n >= 2");
    if (!(edge_probability > 0.0) || edge_probability > 1.0)
        throw MalformedEdge("edge probability must be in (0,1]");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.next_unit() < edge_probability) edges.push_back({i, j});
        BaseGraph g(n, edges);
        if (g.is_connected()) return g;
    }
    throw GenerationExhausted("no connected graph after " + std::to_string(max_attempts) +
                              " attempts (n=" + std::to_string(n) + ")");
}

BunkbedGraph::BunkbedGraph(BaseGraph base) : base_(std::move(base)) {
    const int n = base_.vertex_count();
    const int m = base_.edge_count();
    std::vector<std::pair<int, int>> edges;
    edges.reserve(2 * m + n);
    for (const Edge& e : base_.edges()) edges.push_back({e.u, e.v});
    for (const Edge& e : base_.edges()) edges.push_back({e.u + n, e.v + n});
    for (int u = 0; u < n; ++u) edges.push_back({u, u + n});
    product_ = BaseGraph(2 * n, edges);
}

int BunkbedGraph::reflect_vertex(int vertex) const {
    const int n = base_vertices();
    return vertex < n ? vertex + n : vertex - n;
}

int BunkbedGraph::reflect_edge(int edge_id) const {
    const int m = base_edges();
    if (edge_id >= 2 * m) return edge_id; // vertical
    return edge_id < m ? edge_id + m : edge_id - m;
}

} // namespace bunkbed
