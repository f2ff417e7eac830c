#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bunkbed/errors.hpp"
#include "bunkbed/rng.hpp"

namespace bunkbed {

// Endpoints are stored normalized (u < v); the edge id is the position in
// the construction order.
struct Edge {
    int u;
    int v;
    int other(int x) const { return x == u ? v : u; }
};

struct AdjEntry {
    int to;
    int edge;
};

// An oriented copy of an edge: tail = e^-, head = e^+.
struct OrientedEdge {
    int edge;
    bool reversed;
    int tail;
    int head;
};

// Simple undirected graph, immutable after construction. Vertex ids are
// 0..n-1; adjacency lists are sorted by neighbor id.
class BaseGraph {
  public:
    BaseGraph() = default;
    // Throws MalformedEdge on out-of-range endpoints, self-loops and
    // duplicate unordered pairs.
    BaseGraph(int vertex_count, const std::vector<std::pair<int, int>>& edge_list);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int id) const { return edges_[id]; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const AdjEntry> neighbors(int v) const { return adjacency_[v]; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

    // -1 when (u,v) is not an edge
    int edge_id(int u, int v) const;
    bool has_edge(int u, int v) const { return edge_id(u, v) >= 0; }

    OrientedEdge oriented(int edge_id, bool reversed) const;

    bool is_connected() const { return connected_; }

  private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<AdjEntry>> adjacency_;
    bool connected_ = true;
};

// true iff deleting the edge (u,v) disconnects u from v; throws NotAnEdge.
bool is_cut_edge(const BaseGraph& graph, int u, int v);

// Families used all over the tests and the harness. path_graph follows the
// convention V(P_n) = {0..n}: the parameter is the length (edge count).
BaseGraph path_graph(int length);
BaseGraph complete_graph(int n);
BaseGraph cycle_graph(int n);
BaseGraph star_graph(int leaves);

// Erdos-Renyi conditioned on connectivity; deterministic given the seed
// (SplitMix64 draws one unit per vertex pair in lexicographic order, one
// whole pass per attempt). Throws GenerationExhausted after `max_attempts`
// rejections.
inline constexpr int kRandomGraphMaxAttempts = 1000;
BaseGraph random_connected_graph(int n, double edge_probability, std::uint64_t seed);
BaseGraph random_connected_graph(int n, double edge_probability, SplitMix64& rng,
                                 int max_attempts = kRandomGraphMaxAttempts);

// The Cartesian product G x K2. Vertex (u, layer) has id u + layer*|V(G)|.
// Edge ids: layer-0 horizontal copies first (base edge order), then layer-1
// horizontal copies, then one vertical edge per base vertex.
class BunkbedGraph {
  public:
    explicit BunkbedGraph(BaseGraph base);

    const BaseGraph& base() const { return base_; }
    const BaseGraph& product() const { return product_; }

    int base_vertices() const { return base_.vertex_count(); }
    int base_edges() const { return base_.edge_count(); }

    int vertex_id(int base_vertex, int layer) const { return base_vertex + layer * base_vertices(); }
    int base_vertex(int vertex) const { return vertex % base_vertices(); }
    int layer(int vertex) const { return vertex / base_vertices(); }

    int horizontal_id(int base_edge, int layer) const { return base_edge + layer * base_edges(); }
    int vertical_id(int base_vertex) const { return 2 * base_edges() + base_vertex; }
    bool is_vertical(int edge_id) const { return edge_id >= 2 * base_edges(); }
    bool is_horizontal(int edge_id) const { return !is_vertical(edge_id); }
    // For horizontal edges: which layer; for vertical: which base vertex.
    int horizontal_layer(int edge_id) const { return edge_id / base_edges(); }
    int horizontal_base_edge(int edge_id) const { return edge_id % base_edges(); }
    int vertical_base_vertex(int edge_id) const { return edge_id - 2 * base_edges(); }

    // The reflection automorphism (u, i) -> (u, 1-i).
    int reflect_vertex(int vertex) const;
    int reflect_edge(int edge_id) const;

  private:
    BaseGraph base_;
    BaseGraph product_;
};

} // namespace bunkbed
