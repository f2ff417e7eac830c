#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "bunkbed/harness.hpp"

namespace bunkbed::harness {

namespace {

// Internal representation for small graphs: one neighbor bitmask per vertex.
using NeighborMasks = std::vector<std::uint16_t>;

int pair_index(int n, int i, int j) { // i < j
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

NeighborMasks masks_from_graph(const BaseGraph& graph) {
    NeighborMasks masks(graph.vertex_count(), 0);
    for (const Edge& e : graph.edges()) {
        masks[e.u] |= std::uint16_t(1) << e.v;
        masks[e.v] |= std::uint16_t(1) << e.u;
    }
    return masks;
}

bool masks_connected(const NeighborMasks& masks) {
    const int n = static_cast<int>(masks.size());
    std::uint16_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint16_t next = 0;
        for (int v = 0; v < n; ++v)
            if (frontier & (std::uint16_t(1) << v)) next |= masks[v];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (std::uint16_t(1) << n) - 1;
}

// 1-WL color refinement. Color ids are ranks of (color, sorted neighbor
// colors) signatures, so they are invariant under relabeling.
std::vector<int> refine_colors(const NeighborMasks& masks) {
    const int n = static_cast<int>(masks.size());
    std::vector<int> colors(n, 0);
    int distinct = 1;
    for (int round = 0; round < n; ++round) {
        std::vector<std::vector<int>> signatures(n);
        for (int v = 0; v < n; ++v) {
            auto& sig = signatures[v];
            sig.push_back(colors[v]);
            for (int w = 0; w < n; ++w)
                if (masks[v] & (std::uint16_t(1) << w)) sig.push_back(colors[w]);
            std::sort(sig.begin() + 1, sig.end());
        }
        std::vector<std::vector<int>> sorted = signatures;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int v = 0; v < n; ++v)
            colors[v] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), signatures[v]) - sorted.begin());
        const int now = static_cast<int>(sorted.size());
        if (now == distinct) break;
        distinct = now;
    }
    return colors;
}

std::uint64_t mask_under_order(const NeighborMasks& masks, const std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    std::uint64_t out = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (masks[order[i]] & (std::uint16_t(1) << order[j]))
                out |= std::uint64_t(1) << pair_index(n, i, j);
    return out;
}

std::uint64_t canonical_mask(const NeighborMasks& masks) {
    const int n = static_cast<int>(masks.size());
    const auto colors = refine_colors(masks);

    // vertices grouped by canonical color; orderings respect the grouping
    std::vector<std::vector<int>> classes;
    {
        const int distinct = *std::max_element(colors.begin(), colors.end()) + 1;
        classes.assign(distinct, {});
        for (int v = 0; v < n; ++v) classes[colors[v]].push_back(v);
    }

    std::vector<int> order;
    order.reserve(n);
    std::uint64_t best = ~std::uint64_t(0);
    // nested next_permutation over the class blocks
    auto search = [&](auto&& self, std::size_t class_id) -> void {
        if (class_id == classes.size()) {
            best = std::min(best, mask_under_order(masks, order));
            return;
        }
        auto block = classes[class_id];
        std::sort(block.begin(), block.end());
        do {
            const std::size_t mark = order.size();
            order.insert(order.end(), block.begin(), block.end());
            self(self, class_id + 1);
            order.resize(mark);
        } while (std::next_permutation(block.begin(), block.end()));
    };
    search(search, 0);
    return best;
}

BaseGraph graph_from_edge_mask(int n, std::uint64_t mask) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mask & (std::uint64_t(1) << pair_index(n, i, j))) edges.push_back({i, j});
    return BaseGraph(n, edges);
}

} // namespace

std::uint64_t canonical_adjacency_mask(const BaseGraph& graph) {
    if (graph.vertex_count() > 10) throw OutOfRange("canonical form capped at 10 vertices");
    return canonical_mask(masks_from_graph(graph));
}

std::vector<BaseGraph> all_connected_graphs(int n) {
    if (n < 1 || n > 8) throw OutOfRange("exhaustive family supports 1 <= n <= 8");
    if (n == 1) return {BaseGraph(1, {})};

    const int bits = n * (n - 1) / 2;
    std::vector<BaseGraph> representatives;
    std::unordered_set<std::uint64_t> seen;
    NeighborMasks masks(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << bits); ++mask) {
        std::fill(masks.begin(), masks.end(), 0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (mask & (std::uint64_t(1) << pair_index(n, i, j))) {
                    masks[i] |= std::uint16_t(1) << j;
                    masks[j] |= std::uint16_t(1) << i;
                }
        if (!masks_connected(masks)) continue;
        if (!seen.insert(canonical_mask(masks)).second) continue;
        representatives.push_back(graph_from_edge_mask(n, mask));
    }
    return representatives;
}

} // namespace bunkbed::harness
