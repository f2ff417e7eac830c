#include "bunkbed/maxflow.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "bunkbed/presistance.hpp" // minmax_rearrange

namespace bunkbed::maxflow {

Rational FlowAssignment::divergence(const BaseGraph& graph, int x) const {
    Rational d = 0;
    for (const auto& entry : graph.neighbors(x)) {
        const Edge& e = graph.edge(entry.edge);
        // orientation with tail x
        d += (e.u == x) ? theta[entry.edge] : Rational(-theta[entry.edge]);
    }
    return d;
}

Rational FlowAssignment::strength(const BaseGraph& graph) const {
    Rational s = 0;
    for (int a : source) s += divergence(graph, a);
    return s;
}

bool is_admissible(const CapacitatedNetwork& network, const FlowAssignment& flow) {
    for (int e = 0; e < network.graph.edge_count(); ++e)
        if (abs(flow.theta[e]) > network.weights[e]) return false;
    return true;
}

bool conserves(const BaseGraph& graph, const FlowAssignment& flow) {
    std::vector<int> kind(graph.vertex_count(), 0);
    for (int a : flow.source) kind[a] = 1;
    for (int z : flow.sink) kind[z] = -1;
    for (int x = 0; x < graph.vertex_count(); ++x) {
        const Rational d = flow.divergence(graph, x);
        if (kind[x] == 0 && d != 0) return false;
        if (kind[x] == 1 && d < 0) return false;
        if (kind[x] == -1 && d > 0) return false;
    }
    return true;
}

namespace {

// Residual network for an undirected edge: a paired arc in each direction,
// both with capacity c(e); pushing on one arc cancels against the other, so
// the net flow stays within [-c, c].
struct Dinic {
    struct Arc {
        int to;
        Rational cap;
        Rational flow;
    };

    int n;
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> out; // arc indices per vertex
    std::vector<int> level;
    std::vector<std::size_t> cursor;

    explicit Dinic(const CapacitatedNetwork& network) : n(network.graph.vertex_count()), out(n) {
        arcs.reserve(2 * network.graph.edge_count());
        for (int e = 0; e < network.graph.edge_count(); ++e) {
            const Edge& edge = network.graph.edge(e);
            out[edge.u].push_back(static_cast<int>(arcs.size()));
            arcs.push_back({edge.v, network.weights[e], Rational(0)});
            out[edge.v].push_back(static_cast<int>(arcs.size()));
            arcs.push_back({edge.u, network.weights[e], Rational(0)});
        }
    }

    Rational residual(int a) const { return arcs[a].cap - arcs[a].flow; }

    bool bfs(int s, int t) {
        level.assign(n, -1);
        std::queue<int> queue;
        level[s] = 0;
        queue.push(s);
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop();
            for (int a : out[x]) {
                if (level[arcs[a].to] == -1 && residual(a) > 0) {
                    level[arcs[a].to] = level[x] + 1;
                    queue.push(arcs[a].to);
                }
            }
        }
        return level[t] != -1;
    }

    Rational augment(int x, int t, Rational pushed) {
        if (x == t) return pushed;
        for (; cursor[x] < out[x].size(); ++cursor[x]) {
            const int a = out[x][cursor[x]];
            const int y = arcs[a].to;
            if (level[y] != level[x] + 1 || residual(a) <= 0) continue;
            const Rational amount = augment(y, t, std::min(pushed, residual(a)));
            if (amount > 0) {
                arcs[a].flow += amount;
                arcs[a ^ 1].flow -= amount;
                return amount;
            }
        }
        return Rational(0);
    }

    Rational run(int s, int t) {
        Rational total = 0;
        Rational infinity = 1;
        for (const Arc& a : arcs) infinity += a.cap;
        while (bfs(s, t)) {
            cursor.assign(n, 0);
            while (true) {
                const Rational pushed = augment(s, t, infinity);
                if (pushed == 0) break;
                total += pushed;
            }
        }
        return total;
    }

    std::vector<bool> reachable(int s) const {
        std::vector<bool> seen(n, false);
        std::vector<int> stack = {s};
        seen[s] = true;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int a : out[x])
                if (!seen[arcs[a].to] && residual(a) > 0) {
                    seen[arcs[a].to] = true;
                    stack.push_back(arcs[a].to);
                }
        }
        return seen;
    }
};

} // namespace

MaxFlowResult max_flow(const CapacitatedNetwork& network, int s, int t) {
    if (network.role != WeightRole::capacity) throw InvalidWeight("max_flow needs capacity role");
    const int n = network.graph.vertex_count();
    if (s < 0 || s >= n || t < 0 || t >= n) throw OutOfRange("source/sink out of range");
    if (s == t) throw SameSourceSink("source equals sink");

    Dinic solver(network);
    MaxFlowResult result;
    result.value = solver.run(s, t);

    result.flow.theta.assign(network.graph.edge_count(), Rational(0));
    for (int e = 0; e < network.graph.edge_count(); ++e)
        result.flow.theta[e] = solver.arcs[2 * e].flow; // net flow along u -> v
    result.flow.source = {s};
    result.flow.sink = {t};

    result.cut.source_side = solver.reachable(s);
    result.cut.value = 0;
    for (int e = 0; e < network.graph.edge_count(); ++e) {
        const Edge& edge = network.graph.edge(e);
        if (result.cut.source_side[edge.u] != result.cut.source_side[edge.v]) {
            result.cut.crossing_edges.push_back(e);
            result.cut.value += network.weights[e];
        }
    }
    return result;
}

Rational potential_form_value(const CapacitatedNetwork& network, std::span<const Rational> f) {
    if (static_cast<int>(f.size()) != network.graph.vertex_count())
        throw OutOfRange("potential size mismatch");
    Rational total = 0;
    for (int e = 0; e < network.graph.edge_count(); ++e) {
        const Edge& edge = network.graph.edge(e);
        total += network.weights[e] * abs(f[edge.u] - f[edge.v]);
    }
    return total;
}

Rational exhaustive_min_cut(const CapacitatedNetwork& network, int s, int t) {
    const int n = network.graph.vertex_count();
    if (s == t) throw SameSourceSink("source equals sink");
    if (n > 24) throw OutOfRange("exhaustive cut enumeration capped at 24 vertices");
    std::vector<int> free_vertices;
    for (int v = 0; v < n; ++v)
        if (v != s && v != t) free_vertices.push_back(v);

    std::vector<bool> in_s(n, false);
    in_s[s] = true;
    Rational best = -1;
    const std::uint64_t subsets = std::uint64_t(1) << free_vertices.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        for (std::size_t i = 0; i < free_vertices.size(); ++i)
            in_s[free_vertices[i]] = (mask >> i) & 1;
        Rational value = 0;
        for (int e = 0; e < network.graph.edge_count(); ++e) {
            const Edge& edge = network.graph.edge(e);
            if (in_s[edge.u] != in_s[edge.v]) value += network.weights[e];
        }
        if (best < 0 || value < best) best = value;
    }
    return best;
}

FlowInequalityReport verify_flow_inequality(const CapacitatedNetwork& network, int x, int y) {
    if (!network.bunkbed) throw AsymmetricCapacities("not a bunkbed network");
    if (!reflection_symmetric(network))
        throw AsymmetricCapacities("capacities are not reflection-symmetric");
    const BunkbedGraph& bb = *network.bunkbed;
    const int n = bb.base_vertices();
    if (x < 0 || x >= n || y < 0 || y >= n) throw OutOfRange("x/y out of range");
    if (x == y) throw SameSourceSink("x equals y");

    FlowInequalityReport report;
    report.x = x;
    report.y = y;
    report.mf00 = max_flow(network, bb.vertex_id(x, 0), bb.vertex_id(y, 0)).value;
    report.mf01 = max_flow(network, bb.vertex_id(x, 0), bb.vertex_id(y, 1)).value;
    report.holds = report.mf00 >= report.mf01;
    return report;
}

FlowInequalityReport verify_flow_inequality(const BunkbedGraph& bunkbed,
                                            std::span<const Rational> weights, int x, int y) {
    std::vector<Rational> w(weights.begin(), weights.end());
    return verify_flow_inequality(make_bunkbed_network(bunkbed, std::move(w), WeightRole::capacity),
                                  x, y);
}

FlowInequalityReport verify_flow_inequality(const BaseGraph& base, std::span<const Rational> weights,
                                            int x, int y) {
    return verify_flow_inequality(BunkbedGraph(base), weights, x, y);
}

RearrangementReport rearrangement_value_inequality(const CapacitatedNetwork& bunkbed_network,
                                                   std::span<const Rational> f, int x, int y) {
    if (!bunkbed_network.bunkbed) throw OutOfRange("rearrangement needs a bunkbed network");
    const BunkbedGraph& bb = *bunkbed_network.bunkbed;
    if (x < 0 || x >= bb.base_vertices() || y < 0 || y >= bb.base_vertices())
        throw OutOfRange("x/y out of range");
    std::vector<Rational> values(f.begin(), f.end());
    RearrangementReport report;
    report.before = potential_form_value(bunkbed_network, values);
    const auto rearranged = presistance::minmax_rearrange(bb, std::move(values));
    report.after = potential_form_value(bunkbed_network, rearranged);
    return report;
}

} // namespace bunkbed::maxflow
