#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bunkbed/graph.hpp"
#include "bunkbed/numbers.hpp"

namespace bunkbed::saw {

// Alternating vertex/edge sequence (w0, e1, w1, ..., en, wn) with all
// vertices distinct; walks of length 0 are excluded throughout.
struct SawWalk {
    std::vector<int> vertices;
    std::vector<int> edges;

    int length() const { return static_cast<int>(edges.size()); }
    int from() const { return vertices.front(); }
    int to() const { return vertices.back(); }
    bool operator==(const SawWalk&) const = default;
};

// Checks the alternating-sequence invariants against the graph.
bool is_valid_walk(const BaseGraph& graph, const SawWalk& walk);

enum class SawClass { s1, s2, s3, s4, s5 };
inline constexpr std::array<SawClass, 5> kAllClasses = {SawClass::s1, SawClass::s2, SawClass::s3,
                                                        SawClass::s4, SawClass::s5};
int class_index(SawClass c);

struct Classification {
    SawClass label;
    int target_parity; // j: the walk ends at v_j
};

struct EnumerationOptions {
    bool store_walks = false;
    std::size_t max_walks = std::size_t(1) << 20; // stored-mode cap
    int threads = 1;                              // first-edge branch parallelism (count mode)
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct CountResult {
    BigInt count;
    std::vector<SawWalk> walks; // populated only in stored mode
    bool timed_out = false;
};

// Exact count of self-avoiding walks a -> b by depth-first backtracking,
// neighbors visited in ascending vertex order (so stored walk streams are
// canonical). Throws WalkLimitExceeded in stored mode past max_walks.
CountResult count_saw(const BaseGraph& graph, int a, int b, const EnumerationOptions& options = {});

// Five-way classification of a walk from u0 to v_j relative to (u, v).
// Throws WrongEndpoints unless the walk runs u0 -> v0 or u0 -> v1.
Classification classify_walk(const SawWalk& walk, const BunkbedGraph& bunkbed, int u, int v);

// The explicit bijections S_i(u0,v0) <-> S_i(u0,v1) for i = 1..4:
//   i=1: append / delete e_v;  i=2: delete / append e_v;
//   i=3: reflect then prepend e_u / drop e_u then reflect;
//   i=4: drop e_u then reflect / reflect then prepend e_u.
// Throws WrongClass when the input walk is not in the stated class.
SawWalk bijection_map(int i, const SawWalk& walk, const BunkbedGraph& bunkbed, int u, int v);
SawWalk bijection_inverse(int i, const SawWalk& walk, const BunkbedGraph& bunkbed, int u, int v);

// Layer swap (u,i) -> (u,1-i) applied to a walk; an automorphism image.
SawWalk reflect_walk(const BunkbedGraph& bunkbed, const SawWalk& walk);
SawWalk reverse_walk(const SawWalk& walk);

struct SawCensus {
    // counts[j][i]: |S_{i+1}(u0, v_j)|
    std::array<std::array<BigInt, 5>, 2> counts{};
    bool timed_out = false;

    BigInt total(int parity) const;
};

struct CensusOptions {
    int threads = 1;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Counts of all ten classes in one enumeration pass over the bunkbed.
SawCensus census(const BunkbedGraph& bunkbed, int u, int v, const CensusOptions& options = {});
SawCensus census(const BaseGraph& base, int u, int v, const CensusOptions& options = {});

// Stored-walk variant for bijection verification on small instances.
struct StoredCensus {
    SawCensus counts;
    // walks[j][i]: the walks of S_{i+1}(u0, v_j) in enumeration order
    std::array<std::array<std::vector<SawWalk>, 5>, 2> walks;
};
StoredCensus census_with_walks(const BunkbedGraph& bunkbed, int u, int v,
                               std::size_t max_walks = std::size_t(1) << 22);

// Ladder closed forms (V(P_n) = {0..n}). Adjacent interior pair u=k, v=k+1:
// |S5(u0,v0)| = k(n-k-1) and |S5(u0,v1)| = 0. Distant interior pair
// u=k, v=k+m (m >= 2): both counts k(n-k-2) when m=2, else k(n-k-m)*f_i(m)
// with f_i(m) the number of walks (0,0) -> (m-2,i) in P_{m-2} x K2.
BigInt ladder_s5_adjacent(int n, int k);
std::pair<BigInt, BigInt> ladder_s5_distant(int n, int k, int m);
BigInt ladder_f(int m, int parity);

enum class LadderCase { small_n_equal, adjacent_interior, other_equal };

struct LadderPairReport {
    int u;
    int v;
    LadderCase paper_case;  // the case the paper's statement assigns
    bool expect_strict;     // paper's prediction: total0 > total1
    BigInt total0, total1;  // census
    BigInt s5_0, s5_1;      // census S5 counts
    bool strict;            // enumerated truth: total0 > total1
    bool matches_paper;     // enumerated relation == paper's prediction
    bool formula_ok;        // S5 closed forms (n >= 4 interior; 0 otherwise)
};

// Census-verified check of a single pair of P_n x K2, and the sweep over
// all pairs.
LadderPairReport verify_ladder_pair(int n, int u, int v);
std::vector<LadderPairReport> verify_ladder_proposition(int n);

} // namespace bunkbed::saw
