#include "bunkbed/saw.hpp"

#include <algorithm>
#include <future>
#include <string>

namespace bunkbed::saw {

namespace {

BigInt from_u128(unsigned __int128 x) {
    const std::uint64_t hi = static_cast<std::uint64_t>(x >> 64);
    const std::uint64_t lo = static_cast<std::uint64_t>(x);
    BigInt result = hi;
    result <<= 64;
    result += lo;
    return result;
}

// Flattened adjacency for the enumeration kernel; neighbor order matches
// the (sorted) BaseGraph adjacency, so enumeration order is canonical.
struct Csr {
    std::vector<int> offset;
    std::vector<int> to;
    std::vector<int> edge;

    explicit Csr(const BaseGraph& graph) {
        offset.reserve(graph.vertex_count() + 1);
        offset.push_back(0);
        for (int v = 0; v < graph.vertex_count(); ++v) {
            for (const auto& entry : graph.neighbors(v)) {
                to.push_back(entry.to);
                edge.push_back(entry.edge);
            }
            offset.push_back(static_cast<int>(to.size()));
        }
    }
};

constexpr int kDeadlineStride = 1 << 16;

// Depth-first backtracking over all self-avoiding walks from a start
// vertex; OnArrival fires whenever a target is reached (the walk may then
// be extended further, so longer walks through a target are still found).
template <typename OnArrival>
struct CountKernel {
    const Csr& csr;
    std::uint64_t target_mask;
    OnArrival on_arrival;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    std::uint64_t visited = 0;
    int countdown = kDeadlineStride;
    bool timed_out = false;

    bool expired() {
        if (--countdown > 0) return timed_out;
        countdown = kDeadlineStride;
        if (deadline && std::chrono::steady_clock::now() > *deadline) timed_out = true;
        return timed_out;
    }

    void run(int start, int first_neighbor_index = -1) {
        visited = std::uint64_t(1) << start;
        if (first_neighbor_index < 0) {
            descend_all(start, start, 0);
        } else {
            const int i = csr.offset[start] + first_neighbor_index;
            step(start, csr.to[i], start, 0);
        }
    }

    void descend_all(int x, int second, int depth) {
        for (int i = csr.offset[x]; i < csr.offset[x + 1]; ++i) step(x, csr.to[i], second, depth);
    }

    void step(int x, int y, int second, int depth) {
        const std::uint64_t bit = std::uint64_t(1) << y;
        if (visited & bit) return;
        if (expired()) return;
        const int second_vertex = depth == 0 ? y : second;
        if (target_mask & bit) on_arrival(y, x, second_vertex, visited);
        visited |= bit;
        descend_all(y, second_vertex, depth + 1);
        visited &= ~bit;
    }
};

// Stored-mode kernel: maintains the full alternating sequence.
template <typename OnArrival>
struct WalkKernel {
    const Csr& csr;
    std::uint64_t target_mask;
    OnArrival on_arrival;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    std::uint64_t visited = 0;
    std::vector<int> vertices = {};
    std::vector<int> edges = {};
    int countdown = kDeadlineStride;
    bool timed_out = false;

    bool expired() {
        if (--countdown > 0) return timed_out;
        countdown = kDeadlineStride;
        if (deadline && std::chrono::steady_clock::now() > *deadline) timed_out = true;
        return timed_out;
    }

    void run(int start) {
        visited = std::uint64_t(1) << start;
        vertices = {start};
        descend(start);
    }

    void descend(int x) {
        for (int i = csr.offset[x]; i < csr.offset[x + 1]; ++i) {
            const int y = csr.to[i];
            const std::uint64_t bit = std::uint64_t(1) << y;
            if (visited & bit) continue;
            if (expired()) return;
            vertices.push_back(y);
            edges.push_back(csr.edge[i]);
            if (target_mask & bit) on_arrival(vertices, edges, visited);
            visited |= bit;
            descend(y);
            visited &= ~bit;
            vertices.pop_back();
            edges.pop_back();
        }
    }
};

void check_enumerable(const BaseGraph& graph, int a, int b) {
    if (graph.vertex_count() > 64) throw OutOfRange("enumeration capped at 64 vertices");
    if (a < 0 || a >= graph.vertex_count() || b < 0 || b >= graph.vertex_count())
        throw OutOfRange("endpoint out of range");
    if (a == b) throw OutOfRange("walk endpoints must differ");
}

struct ClassFlags {
    int parity;
    int label; // 0-based class index
};

// O(1) classification at arrival, from the DFS state. `other` is v_{1-j};
// e_v can only ever be the final edge (v0/v1 are walk endpoints), and e_u
// only the first, so membership tests reduce to mask/prev/second checks.
ClassFlags classify_arrival(int parity, int prev, int second, std::uint64_t mask, int u1, int v0,
                            int v1) {
    const bool other_seen = (mask >> (parity == 0 ? v1 : v0)) & 1;
    const bool last_is_ev = prev == (parity == 0 ? v1 : v0);
    const bool u1_seen = (mask >> u1) & 1;
    const bool first_is_eu = second == u1;
    if (parity == 0) {
        if (!other_seen) return {0, 0};           // S1(u0,v0): not via v1
        if (last_is_ev) return {0, 1};            // S2(u0,v0): ends v1 (+) v0
        if (!u1_seen) return {0, 2};              // S3(u0,v0): via v1, not u1, e_v
        if (first_is_eu) return {0, 3};           // S4(u0,v0): e_u first, via v1
        return {0, 4};                            // S5(u0,v0)
    }
    if (!other_seen) return {1, 1};               // S2(u0,v1): not via v0
    if (last_is_ev) return {1, 0};                // S1(u0,v1): ends v0 (+) v1
    if (!u1_seen) return {1, 3};                  // S4(u0,v1): via v0, not u1, e_v
    if (first_is_eu) return {1, 2};               // S3(u0,v1): e_u first, via v0
    return {1, 4};                                // S5(u0,v1)
}

} // namespace

bool is_valid_walk(const BaseGraph& graph, const SawWalk& walk) {
    if (walk.vertices.size() != walk.edges.size() + 1 || walk.vertices.empty()) return false;
    std::uint64_t seen = 0;
    for (int v : walk.vertices) {
        if (v < 0 || v >= graph.vertex_count() || graph.vertex_count() > 64) return false;
        const std::uint64_t bit = std::uint64_t(1) << v;
        if (seen & bit) return false;
        seen |= bit;
    }
    for (std::size_t i = 0; i < walk.edges.size(); ++i) {
        const int id = graph.edge_id(walk.vertices[i], walk.vertices[i + 1]);
        if (id < 0 || id != walk.edges[i]) return false;
    }
    return true;
}

int class_index(SawClass c) { return static_cast<int>(c); }

CountResult count_saw(const BaseGraph& graph, int a, int b, const EnumerationOptions& options) {
    check_enumerable(graph, a, b);
    const Csr csr(graph);
    const std::uint64_t target = std::uint64_t(1) << b;

    CountResult result;
    if (options.store_walks) {
        std::size_t stored = 0;
        auto arrival = [&](const std::vector<int>& vertices, const std::vector<int>& edges,
                           std::uint64_t) {
            if (++stored > options.max_walks)
                throw WalkLimitExceeded("more than " + std::to_string(options.max_walks) + " walks");
            result.walks.push_back({vertices, edges});
        };
        WalkKernel<decltype(arrival)> kernel{csr, target, arrival, options.deadline};
        kernel.run(a);
        result.count = static_cast<std::uint64_t>(result.walks.size());
        result.timed_out = kernel.timed_out;
        return result;
    }

    const int branches = graph.degree(a);
    auto run_branch = [&](int branch) -> std::pair<unsigned __int128, bool> {
        unsigned __int128 count = 0;
        auto arrival = [&](int, int, int, std::uint64_t) { ++count; };
        CountKernel<decltype(arrival)> kernel{csr, target, arrival, options.deadline};
        kernel.run(a, branch);
        return {count, kernel.timed_out};
    };

    unsigned __int128 total = 0;
    if (options.threads > 1 && branches > 1) {
        std::vector<std::future<std::pair<unsigned __int128, bool>>> futures;
        futures.reserve(branches);
        for (int branch = 0; branch < branches; ++branch)
            futures.push_back(std::async(std::launch::async, run_branch, branch));
        for (auto& future : futures) {
            auto [count, timed_out] = future.get();
            total += count;
            result.timed_out |= timed_out;
        }
    } else {
        for (int branch = 0; branch < branches; ++branch) {
            auto [count, timed_out] = run_branch(branch);
            total += count;
            result.timed_out |= timed_out;
        }
    }
    result.count = from_u128(total);
    return result;
}

Classification classify_walk(const SawWalk& walk, const BunkbedGraph& bunkbed, int u, int v) {
    const BaseGraph& graph = bunkbed.product();
    if (!is_valid_walk(graph, walk)) throw WrongEndpoints("not a valid walk");
    const int u0 = bunkbed.vertex_id(u, 0);
    const int u1 = bunkbed.vertex_id(u, 1);
    const int v0 = bunkbed.vertex_id(v, 0);
    const int v1 = bunkbed.vertex_id(v, 1);
    if (walk.from() != u0 || (walk.to() != v0 && walk.to() != v1))
        throw WrongEndpoints("walk must run u0 -> v0 or u0 -> v1");

    const int parity = walk.to() == v1 ? 1 : 0;
    std::uint64_t mask = 0; // all vertices before the endpoint
    for (std::size_t i = 0; i + 1 < walk.vertices.size(); ++i)
        mask |= std::uint64_t(1) << walk.vertices[i];
    const int prev = walk.vertices[walk.vertices.size() - 2];
    const int second = walk.vertices[1];
    const auto flags = classify_arrival(parity, prev, second, mask, u1, v0, v1);
    return {static_cast<SawClass>(flags.label), flags.parity};
}

SawWalk reflect_walk(const BunkbedGraph& bunkbed, const SawWalk& walk) {
    SawWalk image;
    image.vertices.reserve(walk.vertices.size());
    image.edges.reserve(walk.edges.size());
    for (int v : walk.vertices) image.vertices.push_back(bunkbed.reflect_vertex(v));
    for (int e : walk.edges) image.edges.push_back(bunkbed.reflect_edge(e));
    return image;
}

SawWalk reverse_walk(const SawWalk& walk) {
    SawWalk image = walk;
    std::reverse(image.vertices.begin(), image.vertices.end());
    std::reverse(image.edges.begin(), image.edges.end());
    return image;
}

namespace {

SawWalk checked_map(int i, const SawWalk& walk, const BunkbedGraph& bunkbed, int u, int v,
                    int expect_parity) {
    if (i < 1 || i > 4) throw WrongClass("bijections exist for classes 1..4");
    const auto cls = classify_walk(walk, bunkbed, u, v);
    if (class_index(cls.label) != i - 1 || cls.target_parity != expect_parity)
        throw WrongClass("walk is not in S" + std::to_string(i) + "(u0,v" +
                         std::to_string(expect_parity) + ")");

    const int u0 = bunkbed.vertex_id(u, 0);
    const int v0 = bunkbed.vertex_id(v, 0);
    const int v1 = bunkbed.vertex_id(v, 1);
    const int e_u = bunkbed.vertical_id(u);
    const int e_v = bunkbed.vertical_id(v);

    SawWalk image = walk;
    if (expect_parity == 0) {
        switch (i) {
        case 1: // append e_v
            image.vertices.push_back(v1);
            image.edges.push_back(e_v);
            break;
        case 2: // delete the final e_v
            image.vertices.pop_back();
            image.edges.pop_back();
            break;
        case 3: // reflect, then attach e_u at the beginning
            image = reflect_walk(bunkbed, image);
            image.vertices.insert(image.vertices.begin(), u0);
            image.edges.insert(image.edges.begin(), e_u);
            break;
        case 4: // remove the initial e_u, then reflect
            image.vertices.erase(image.vertices.begin());
            image.edges.erase(image.edges.begin());
            image = reflect_walk(bunkbed, image);
            break;
        }
    } else {
        switch (i) {
        case 1: // delete the final e_v
            image.vertices.pop_back();
            image.edges.pop_back();
            break;
        case 2: // append e_v
            image.vertices.push_back(v0);
            image.edges.push_back(e_v);
            break;
        case 3: // remove the initial e_u, then reflect
            image.vertices.erase(image.vertices.begin());
            image.edges.erase(image.edges.begin());
            image = reflect_walk(bunkbed, image);
            break;
        case 4: // reflect, then attach e_u at the beginning
            image = reflect_walk(bunkbed, image);
            image.vertices.insert(image.vertices.begin(), u0);
            image.edges.insert(image.edges.begin(), e_u);
            break;
        }
    }
    return image;
}

} // namespace

SawWalk bijection_map(int i, const SawWalk& walk, const BunkbedGraph& bunkbed, int u, int v) {
    return checked_map(i, walk, bunkbed, u, v, 0);
}

SawWalk bijection_inverse(int i, const SawWalk& walk, const BunkbedGraph& bunkbed, int u, int v) {
    return checked_map(i, walk, bunkbed, u, v, 1);
}

BigInt SawCensus::total(int parity) const {
    BigInt sum = 0;
    for (const BigInt& c : counts[parity]) sum += c;
    return sum;
}

SawCensus census(const BunkbedGraph& bunkbed, int u, int v, const CensusOptions& options) {
    const BaseGraph& graph = bunkbed.product();
    const int n = bunkbed.base_vertices();
    if (u < 0 || u >= n || v < 0 || v >= n) throw OutOfRange("u/v out of range");
    if (u == v) throw OutOfRange("u and v must differ");
    if (!bunkbed.base().is_connected()) throw OutOfRange("census requires a connected base");

    const int u0 = bunkbed.vertex_id(u, 0);
    const int u1 = bunkbed.vertex_id(u, 1);
    const int v0 = bunkbed.vertex_id(v, 0);
    const int v1 = bunkbed.vertex_id(v, 1);
    const Csr csr(graph);
    const std::uint64_t targets = (std::uint64_t(1) << v0) | (std::uint64_t(1) << v1);

    using Counts = std::array<std::array<unsigned __int128, 5>, 2>;
    auto run_branch = [&](int branch) -> std::pair<Counts, bool> {
        Counts counts{};
        auto arrival = [&](int y, int prev, int second, std::uint64_t mask) {
            const auto flags = classify_arrival(y == v1 ? 1 : 0, prev, second, mask, u1, v0, v1);
            ++counts[flags.parity][flags.label];
        };
        CountKernel<decltype(arrival)> kernel{csr, targets, arrival, options.deadline};
        kernel.run(u0, branch);
        return {counts, kernel.timed_out};
    };

    SawCensus result;
    Counts totals{};
    const int branches = graph.degree(u0);
    if (options.threads > 1 && branches > 1) {
        std::vector<std::future<std::pair<Counts, bool>>> futures;
        futures.reserve(branches);
        for (int branch = 0; branch < branches; ++branch)
            futures.push_back(std::async(std::launch::async, run_branch, branch));
        for (auto& future : futures) {
            auto [counts, timed_out] = future.get();
            for (int j = 0; j < 2; ++j)
                for (int c = 0; c < 5; ++c) totals[j][c] += counts[j][c];
            result.timed_out |= timed_out;
        }
    } else {
        for (int branch = 0; branch < branches; ++branch) {
            auto [counts, timed_out] = run_branch(branch);
            for (int j = 0; j < 2; ++j)
                for (int c = 0; c < 5; ++c) totals[j][c] += counts[j][c];
            result.timed_out |= timed_out;
        }
    }
    for (int j = 0; j < 2; ++j)
        for (int c = 0; c < 5; ++c) result.counts[j][c] = from_u128(totals[j][c]);
    return result;
}

SawCensus census(const BaseGraph& base, int u, int v, const CensusOptions& options) {
    return census(BunkbedGraph(base), u, v, options);
}

StoredCensus census_with_walks(const BunkbedGraph& bunkbed, int u, int v, std::size_t max_walks) {
    const BaseGraph& graph = bunkbed.product();
    const int n = bunkbed.base_vertices();
    if (u < 0 || u >= n || v < 0 || v >= n) throw OutOfRange("u/v out of range");
    if (u == v) throw OutOfRange("u and v must differ");

    const int u0 = bunkbed.vertex_id(u, 0);
    const int u1 = bunkbed.vertex_id(u, 1);
    const int v0 = bunkbed.vertex_id(v, 0);
    const int v1 = bunkbed.vertex_id(v, 1);
    const Csr csr(graph);
    const std::uint64_t targets = (std::uint64_t(1) << v0) | (std::uint64_t(1) << v1);

    StoredCensus result;
    std::size_t stored = 0;
    auto arrival = [&](const std::vector<int>& vertices, const std::vector<int>& edges,
                       std::uint64_t mask) {
        if (++stored > max_walks)
            throw WalkLimitExceeded("more than " + std::to_string(max_walks) + " walks");
        const int y = vertices.back();
        const int prev = vertices[vertices.size() - 2];
        const auto flags =
            classify_arrival(y == v1 ? 1 : 0, prev, vertices[1], mask, u1, v0, v1);
        result.counts.counts[flags.parity][flags.label] += 1;
        result.walks[flags.parity][flags.label].push_back({vertices, edges});
    };
    WalkKernel<decltype(arrival)> kernel{csr, targets, arrival, std::nullopt};
    kernel.run(u0);
    return result;
}

BigInt ladder_s5_adjacent(int n, int k) {
    if (n < 4 || k < 1 || k > n - 2) throw OutOfRange("need n >= 4 and 1 <= k <= n-2");
    return BigInt(k) * (n - k - 1);
}

BigInt ladder_f(int m, int parity) {
    if (m < 3 || (parity != 0 && parity != 1)) throw OutOfRange("need m >= 3 and parity in {0,1}");
    const BunkbedGraph ladder((path_graph(m - 2)));
    const int target = ladder.vertex_id(m - 2, parity);
    return count_saw(ladder.product(), ladder.vertex_id(0, 0), target).count;
}

std::pair<BigInt, BigInt> ladder_s5_distant(int n, int k, int m) {
    if (n < 4 || m < 2 || k < 1 || k + m > n - 1)
        throw OutOfRange("need n >= 4, m >= 2, interior pair u=k, v=k+m");
    if (m == 2) {
        const BigInt both = BigInt(k) * (n - k - 2);
        return {both, both};
    }
    const BigInt scale = BigInt(k) * (n - k - m);
    return {scale * ladder_f(m, 0), scale * ladder_f(m, 1)};
}

LadderPairReport verify_ladder_pair(int n, int u, int v) {
    if (n < 2) throw OutOfRange("need n >= 2");
    if (u < 0 || v > n || u >= v) throw OutOfRange("need 0 <= u < v <= n");
    const BunkbedGraph ladder((path_graph(n)));

    LadderPairReport report;
    report.u = u;
    report.v = v;
    const bool interior = u >= 1 && v <= n - 1;
    const bool adjacent = v == u + 1;
    if (n <= 3) {
        report.paper_case = LadderCase::small_n_equal;
        report.expect_strict = false;
    } else if (interior && adjacent) {
        report.paper_case = LadderCase::adjacent_interior;
        report.expect_strict = true;
    } else {
        report.paper_case = LadderCase::other_equal;
        report.expect_strict = false;
    }

    const SawCensus counts = census(ladder, u, v);
    report.total0 = counts.total(0);
    report.total1 = counts.total(1);
    report.s5_0 = counts.counts[0][4];
    report.s5_1 = counts.counts[1][4];
    report.strict = report.total0 > report.total1;
    report.matches_paper = report.strict == report.expect_strict &&
                           (report.strict || report.total0 == report.total1);

    report.formula_ok = true;
    if (!interior) {
        report.formula_ok = report.s5_0 == 0 && report.s5_1 == 0;
    } else if (n >= 4 && adjacent) {
        report.formula_ok = report.s5_0 == ladder_s5_adjacent(n, u) && report.s5_1 == 0;
    } else if (n >= 4) {
        const auto [want0, want1] = ladder_s5_distant(n, u, v - u);
        report.formula_ok = report.s5_0 == want0 && report.s5_1 == want1;
    }
    return report;
}

std::vector<LadderPairReport> verify_ladder_proposition(int n) {
    if (n < 2) throw OutOfRange("need n >= 2");
    std::vector<LadderPairReport> reports;
    for (int u = 0; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) reports.push_back(verify_ladder_pair(n, u, v));
    return reports;
}

} // namespace bunkbed::saw
