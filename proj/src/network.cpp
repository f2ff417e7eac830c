#include "bunkbed/network.hpp"

#include <string>

namespace bunkbed {

namespace {

void validate_weights(const BaseGraph& graph, const std::vector<Rational>& weights,
                      WeightRole role) {
    if (static_cast<int>(weights.size()) != graph.edge_count())
        throw InvalidWeight("expected " + std::to_string(graph.edge_count()) + " weights, got " +
                            std::to_string(weights.size()));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (role == WeightRole::capacity && weights[i] < 0)
            throw InvalidWeight("negative capacity on edge " + std::to_string(i));
        if (role == WeightRole::resistance && weights[i] <= 0)
            throw InvalidWeight("non-positive resistance on edge " + std::to_string(i));
    }
}

} // namespace

CapacitatedNetwork make_network(BaseGraph graph, std::vector<Rational> weights, WeightRole role) {
    validate_weights(graph, weights, role);
    return {std::move(graph), std::nullopt, std::move(weights), role};
}

CapacitatedNetwork make_bunkbed_network(BunkbedGraph bunkbed, std::vector<Rational> weights,
                                        WeightRole role) {
    validate_weights(bunkbed.product(), weights, role);
    CapacitatedNetwork net{bunkbed.product(), std::move(bunkbed), std::move(weights), role};
    return net;
}

CapacitatedNetwork make_bunkbed_network(BunkbedGraph bunkbed, const BunkbedWeights& weights,
                                        WeightRole role) {
    const int m = bunkbed.base_edges();
    const int n = bunkbed.base_vertices();
    if (static_cast<int>(weights.horizontal.size()) != m)
        throw InvalidWeight("expected one horizontal weight per base edge");
    if (static_cast<int>(weights.vertical.size()) != n)
        throw InvalidWeight("expected one vertical weight per base vertex");
    std::vector<Rational> expanded;
    expanded.reserve(2 * m + n);
    expanded.insert(expanded.end(), weights.horizontal.begin(), weights.horizontal.end());
    expanded.insert(expanded.end(), weights.horizontal.begin(), weights.horizontal.end());
    expanded.insert(expanded.end(), weights.vertical.begin(), weights.vertical.end());
    return make_bunkbed_network(std::move(bunkbed), std::move(expanded), role);
}

bool reflection_symmetric(const CapacitatedNetwork& network) {
    if (!network.bunkbed) return false;
    const int m = network.bunkbed->base_edges();
    for (int e = 0; e < m; ++e)
        if (network.weights[e] != network.weights[e + m]) return false;
    return true;
}

} // namespace bunkbed
