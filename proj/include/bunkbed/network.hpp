#pragma once

#include <optional>
#include <vector>

#include "bunkbed/graph.hpp"
#include "bunkbed/numbers.hpp"

namespace bunkbed {

enum class WeightRole { capacity, resistance };

// A graph plus exact rational edge weights. When the network lives on a
// bunkbed, `bunkbed` holds the product structure and `graph` is its
// flattened product graph (weights are indexed by product edge id).
struct CapacitatedNetwork {
    BaseGraph graph;
    std::optional<BunkbedGraph> bunkbed;
    std::vector<Rational> weights;
    WeightRole role = WeightRole::capacity;

    const Rational& weight(int edge_id) const { return weights[edge_id]; }
};

// Validates weights against the role: capacities must be >= 0 (finite by
// construction), resistances strictly positive. Throws InvalidWeight.
CapacitatedNetwork make_network(BaseGraph graph, std::vector<Rational> weights, WeightRole role);
CapacitatedNetwork make_bunkbed_network(BunkbedGraph bunkbed, std::vector<Rational> weights,
                                        WeightRole role);

// One weight per base edge (shared by both horizontal copies) plus one per
// vertical edge; reflection-symmetric by construction.
struct BunkbedWeights {
    std::vector<Rational> horizontal;
    std::vector<Rational> vertical;
};
CapacitatedNetwork make_bunkbed_network(BunkbedGraph bunkbed, const BunkbedWeights& weights,
                                        WeightRole role);

// weight(e_0) == weight(e_1) for every base edge; vertical edges are
// unconstrained. False for non-bunkbed networks.
bool reflection_symmetric(const CapacitatedNetwork& network);

} // namespace bunkbed
