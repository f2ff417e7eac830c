#pragma once

#include <span>
#include <vector>

#include "bunkbed/network.hpp"

namespace bunkbed::maxflow {

// Antisymmetric edge function theta: the stored value is the flow along the
// edge's canonical orientation (edge.u -> edge.v); the reverse orientation
// carries the negation.
struct FlowAssignment {
    std::vector<Rational> theta;
    std::vector<int> source; // A
    std::vector<int> sink;   // Z

    Rational value(const OrientedEdge& oe) const {
        return oe.reversed ? Rational(-theta[oe.edge]) : theta[oe.edge];
    }
    // (d* theta)(x) = sum over oriented edges with tail x
    Rational divergence(const BaseGraph& graph, int x) const;
    // sum of divergence over the source set
    Rational strength(const BaseGraph& graph) const;
};

// Admissibility |theta(e)| <= c(e) for every edge.
bool is_admissible(const CapacitatedNetwork& network, const FlowAssignment& flow);
// Conservation at every vertex outside source/sink, >= 0 on source, <= 0 on sink.
bool conserves(const BaseGraph& graph, const FlowAssignment& flow);

struct CutCertificate {
    std::vector<bool> source_side; // s in S
    std::vector<int> crossing_edges;
    Rational value;
};

struct MaxFlowResult {
    Rational value;
    FlowAssignment flow;
    CutCertificate cut;
};

// Dinic's blocking-flow algorithm over exact rationals. The cut is the
// BFS-reachable set of the final residual network (the source-side-minimal
// min cut). Requires the capacity role; throws SameSourceSink when s == t.
MaxFlowResult max_flow(const CapacitatedNetwork& network, int s, int t);

// sum over edges of c(e)*|f(u)-f(v)|
Rational potential_form_value(const CapacitatedNetwork& network, std::span<const Rational> f);

// Brute-force oracle: minimum crossing capacity over all vertex bipartitions
// with s on one side and t on the other. Exponential; guarded to <= 24
// vertices (throws OutOfRange beyond).
Rational exhaustive_min_cut(const CapacitatedNetwork& network, int s, int t);

struct FlowInequalityReport {
    int x;
    int y;
    Rational mf00; // MF(x0, y0)
    Rational mf01; // MF(x0, y1)
    bool holds;    // mf00 >= mf01, compared exactly
};

// Theorem check on a bunkbed: weights must be reflection-symmetric on the
// horizontal pairs (throws AsymmetricCapacities otherwise).
FlowInequalityReport verify_flow_inequality(const BunkbedGraph& bunkbed,
                                            std::span<const Rational> weights, int x, int y);
FlowInequalityReport verify_flow_inequality(const BaseGraph& base,
                                            std::span<const Rational> weights, int x, int y);
FlowInequalityReport verify_flow_inequality(const CapacitatedNetwork& network, int x, int y);

struct RearrangementReport {
    Rational before;
    Rational after;
};

// Evaluates the potential-form value of f and of its min/max layer
// rearrangement (convex function |.|). With reflection-symmetric capacities
// the contract is after <= before; x and y are only range-checked.
RearrangementReport rearrangement_value_inequality(const CapacitatedNetwork& bunkbed_network,
                                                   std::span<const Rational> f, int x, int y);

} // namespace bunkbed::maxflow
