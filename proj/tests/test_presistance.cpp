#include <doctest.h>

#include <cmath>

#include "bunkbed/presistance.hpp"
#include "bunkbed/rng.hpp"
#include "oracles.hpp"

using namespace bunkbed;
using namespace bunkbed::presistance;

namespace {

CapacitatedNetwork resistor_network(const BaseGraph& g, std::vector<Rational> r) {
    return make_network(g, std::move(r), WeightRole::resistance);
}

CapacitatedNetwork random_resistor_network(SplitMix64& rng, int n, double p) {
    const BaseGraph g = random_connected_graph(n, p, rng);
    std::vector<Rational> r;
    for (int e = 0; e < g.edge_count(); ++e) r.push_back(random_positive_rational(rng, 8, 4));
    return resistor_network(g, std::move(r));
}

CapacitatedNetwork random_symmetric_resistances(SplitMix64& rng, int n, double p) {
    const BaseGraph base = random_connected_graph(n, p, rng);
    BunkbedWeights w;
    for (int e = 0; e < base.edge_count(); ++e)
        w.horizontal.push_back(random_positive_rational(rng, 8, 4));
    for (int v = 0; v < base.vertex_count(); ++v)
        w.vertical.push_back(random_positive_rational(rng, 8, 4));
    return make_bunkbed_network(BunkbedGraph(base), w, WeightRole::resistance);
}

} // namespace

TEST_CASE("p parameter") {
    CHECK(PParameter(2.0).q == doctest::Approx(2.0));
    CHECK(PParameter(1.5).q == doctest::Approx(3.0));
    CHECK(PParameter(3.0).q == doctest::Approx(1.5));
    CHECK_THROWS_AS(PParameter(1.0), OutOfRange);
    CHECK_THROWS_AS(PParameter(0.5), OutOfRange);
}

TEST_CASE("single edge: forced potential and unit flow") {
    for (double p : {1.5, 2.0, 3.0}) {
        const auto net = resistor_network(path_graph(1), {Rational(1)});
        const auto result = primal_p_resistance(net, 0, 1, PParameter(p));
        CHECK(result.diagnostics.converged);
        CHECK(result.c_p == doctest::Approx(1.0));
        CHECK(result.r_p == doctest::Approx(1.0));
        CHECK(result.potential.values[0] == doctest::Approx(1.0));
        CHECK(result.potential.values[1] == doctest::Approx(0.0));
        CHECK(result.unit_flow[0] == doctest::Approx(1.0));
    }
    // r = 2: R_p = 2 for every p (the only unit flow), C_p = 2^{-1/(p-1)}
    for (double p : {1.5, 2.0, 3.0}) {
        const auto net = resistor_network(path_graph(1), {Rational(2)});
        const auto result = primal_p_resistance(net, 0, 1, PParameter(p));
        CHECK(result.r_p == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(result.c_p == doctest::Approx(std::pow(2.0, -1.0 / (p - 1.0))).epsilon(1e-9));
        // the duality identity in its two equivalent arrangements
        CHECK(result.r_p == doctest::Approx(std::pow(result.c_p, -(p - 1.0))).epsilon(1e-9));
        CHECK(result.c_p == doctest::Approx(std::pow(result.r_p, -1.0 / (p - 1.0))).epsilon(1e-9));
    }
}

TEST_CASE("series path: resistances add for every p") {
    const auto net = resistor_network(path_graph(2), {Rational(3, 2), Rational(1, 2)});
    for (double p : {1.5, 2.0, 3.0}) {
        const auto result = primal_p_resistance(net, 0, 2, PParameter(p));
        CHECK(result.r_p == doctest::Approx(2.0).epsilon(1e-8));
        CHECK(result.unit_flow[0] == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(result.unit_flow[1] == doctest::Approx(1.0).epsilon(1e-8));
    }
    // unit-resistance two-edge series at p=2: C_2 = 1/2 at f(mid) = 1/2, R_2 = 2
    const auto unit = resistor_network(path_graph(2), {Rational(1), Rational(1)});
    const auto r2 = primal_p_resistance(unit, 0, 2, PParameter(2.0));
    CHECK(r2.c_p == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(r2.r_p == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r2.potential.values[1] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("two disjoint subdivided paths: symmetric split") {
    // x=0, y=1; paths 0-2-1 and 0-3-1 with r = 1/2 per half edge
    const BaseGraph g(4, {{0, 2}, {2, 1}, {0, 3}, {3, 1}});
    const auto net = resistor_network(
        g, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)});
    for (double p : {2.0, 3.0}) {
        const auto result = primal_p_resistance(net, 0, 1, PParameter(p));
        // split 1/2-1/2, so R_p = 2 * (1/2)^p * (path resistance 1)
        CHECK(result.r_p == doctest::Approx(2.0 * std::pow(0.5, p)).epsilon(1e-8));
        CHECK(std::abs(result.unit_flow[0]) == doctest::Approx(0.5).epsilon(1e-7));
    }
    // p=3 dual value pinned by hand: C_3 = 2, R_3 = 2^{-(p-1)} = 1/4
    const auto p3 = primal_p_resistance(net, 0, 1, PParameter(3.0));
    CHECK(p3.c_p == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(p3.r_p == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("dual objective matches a one-dimensional oracle on series paths") {
    SplitMix64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const double p = 1.3 + rng.next_unit() * 2.2;
        const double q = 1.0 + 1.0 / (p - 1.0);
        const Rational r1(1 + static_cast<int>(rng.next_below(12)), 4);
        const Rational r2(1 + static_cast<int>(rng.next_below(12)), 4);
        const auto net = resistor_network(path_graph(2), {r1, r2});
        const double r1x = to_double(r1), r2x = to_double(r2);
        const auto oracle_objective = [&](double t) {
            return std::pow(std::abs(1.0 - t), q) / std::pow(r1x, q - 1.0) +
                   std::pow(t, q) / std::pow(r2x, q - 1.0);
        };
        const double t_star = oracles::ternary_min(oracle_objective, 0.0, 1.0);
        const auto result = dual_capacity(net, 0, 2, PParameter(p));
        CHECK(result.diagnostics.converged);
        CHECK(result.c_value == doctest::Approx(oracle_objective(t_star)).epsilon(1e-8));
    }
}

TEST_CASE("duality identity sweep on random networks") {
    SplitMix64 rng(81);
    int converged_instances = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const auto net = random_resistor_network(rng, rng.next_int(2, 7), 0.6);
        const int n = net.graph.vertex_count();
        const int x = static_cast<int>(rng.next_below(n));
        int y = static_cast<int>(rng.next_below(n - 1));
        if (y >= x) ++y;
        for (double p : {1.5, 2.0, 3.0}) {
            const auto result = primal_p_resistance(net, x, y, PParameter(p));
            REQUIRE(result.diagnostics.converged);
            ++converged_instances;
            CHECK(std::abs(result.gap) / result.r_p < 1e-6);
            CHECK(result.conservation_residual < 1e-8);
            CHECK(std::abs(result.strength) > 0.0);
            // unit flow means strength 1 after normalization
            double strength = 0.0;
            for (const auto& entry : net.graph.neighbors(x)) {
                const Edge& e = net.graph.edge(entry.edge);
                strength += (e.u == x) ? result.unit_flow[entry.edge] : -result.unit_flow[entry.edge];
            }
            CHECK(strength == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    CHECK(converged_instances == 75);
}

TEST_CASE("p=2 cross-check against an independent Kirchhoff solve") {
    SplitMix64 rng(91);
    for (int trial = 0; trial < 30; ++trial) {
        const auto net = random_resistor_network(rng, rng.next_int(2, 10), 0.5);
        const int n = net.graph.vertex_count();
        const int x = static_cast<int>(rng.next_below(n));
        int y = static_cast<int>(rng.next_below(n - 1));
        if (y >= x) ++y;
        const auto result = primal_p_resistance(net, x, y, PParameter(2.0));
        const double reference = oracles::effective_resistance_kirchhoff(net, x, y);
        CHECK(std::abs(result.r_p - reference) <= 1e-8 * std::max(1.0, reference));
    }
}

TEST_CASE("disconnected pair and diagnostics") {
    const BaseGraph two_islands(4, {{0, 1}, {2, 3}});
    const auto net = resistor_network(two_islands, {Rational(1), Rational(1)});
    CHECK_THROWS_AS(dual_capacity(net, 0, 2, PParameter(2.0)), DisconnectedPair);

    // iteration cap reached: best iterate returned with converged = false
    const BaseGraph g(4, {{0, 2}, {2, 1}, {0, 3}, {3, 1}});
    const auto paths = resistor_network(
        g, {Rational(1, 2), Rational(1, 2), Rational(1, 3), Rational(2, 3)});
    SolverOptions strangled;
    strangled.max_iterations = 1;
    strangled.gradient_tol = 0.0;
    const auto result = dual_capacity(paths, 0, 1, PParameter(3.0), strangled);
    CHECK_FALSE(result.diagnostics.converged);
    CHECK(result.potential.values.size() == 4);
    CHECK(result.c_value > 0.0);
}

TEST_CASE("minmax rearrangement") {
    const BunkbedGraph bb((path_graph(2)));

    // already layer-sorted: identity
    PotentialVector f;
    f.values.assign(bb.product().vertex_count(), 0.0);
    f.high_pin = bb.vertex_id(0, 0);
    f.low_pin = bb.vertex_id(2, 0);
    f.values[bb.vertex_id(0, 0)] = 1.0;
    f.values[bb.vertex_id(1, 0)] = 0.6;
    f.values[bb.vertex_id(1, 1)] = 0.4;
    const auto same = minmax_rearrange(bb, f);
    CHECK(same.values == f.values);
    CHECK(same.high_pin == bb.vertex_id(0, 0));
    CHECK(same.low_pin == bb.vertex_id(2, 1));

    // the spec's point example
    auto g = f;
    g.values[bb.vertex_id(1, 0)] = 0.2;
    g.values[bb.vertex_id(1, 1)] = 0.7;
    const auto swapped = minmax_rearrange(bb, g);
    CHECK(swapped.values[bb.vertex_id(1, 0)] == doctest::Approx(0.7));
    CHECK(swapped.values[bb.vertex_id(1, 1)] == doctest::Approx(0.2));

    // vertical gaps preserved, layers sorted, per-edge phi-energy does not
    // increase, for random f and random q >= 1
    SplitMix64 rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const BaseGraph base = random_connected_graph(rng.next_int(2, 6), 0.6, rng);
        const BunkbedGraph bunk(base);
        std::vector<double> values(bunk.product().vertex_count());
        for (auto& value : values) value = rng.next_unit();
        const double q = 1.0 + rng.next_unit() * 3.0;
        const auto h = minmax_rearrange(bunk, values);
        for (int u = 0; u < base.vertex_count(); ++u) {
            const double f0 = values[bunk.vertex_id(u, 0)], f1 = values[bunk.vertex_id(u, 1)];
            const double h0 = h[bunk.vertex_id(u, 0)], h1 = h[bunk.vertex_id(u, 1)];
            CHECK(h0 >= h1);
            CHECK(std::abs(h0 - h1) == doctest::Approx(std::abs(f0 - f1)));
        }
        for (const Edge& e : base.edges()) {
            const double before =
                std::pow(std::abs(values[bunk.vertex_id(e.u, 0)] - values[bunk.vertex_id(e.v, 0)]), q) +
                std::pow(std::abs(values[bunk.vertex_id(e.u, 1)] - values[bunk.vertex_id(e.v, 1)]), q);
            const double after =
                std::pow(std::abs(h[bunk.vertex_id(e.u, 0)] - h[bunk.vertex_id(e.v, 0)]), q) +
                std::pow(std::abs(h[bunk.vertex_id(e.u, 1)] - h[bunk.vertex_id(e.v, 1)]), q);
            CHECK(after <= before + 1e-12 * std::max(1.0, before));
        }
    }
}

TEST_CASE("clamping to [0,1] never increases the dual objective") {
    SplitMix64 rng(111);
    for (int trial = 0; trial < 200; ++trial) {
        const auto net = random_resistor_network(rng, rng.next_int(2, 7), 0.6);
        const double q = 1.0 + rng.next_unit() * 3.0;
        std::vector<double> f(net.graph.vertex_count());
        for (auto& value : f) value = -1.0 + 3.0 * rng.next_unit(); // outside [0,1] on purpose
        auto clamped = f;
        for (auto& value : clamped) value = std::min(1.0, std::max(0.0, value));
        double before = 0.0, after = 0.0;
        for (int e = 0; e < net.graph.edge_count(); ++e) {
            const Edge& edge = net.graph.edge(e);
            const double kappa = std::pow(to_double(net.weights[e]), 1.0 - q);
            before += kappa * std::pow(std::abs(f[edge.u] - f[edge.v]), q);
            after += kappa * std::pow(std::abs(clamped[edge.u] - clamped[edge.v]), q);
        }
        CHECK(after <= before + 1e-12 * std::max(1.0, before));
    }
}

TEST_CASE("convex quadruple inequality") {
    // equality cases are exact in floating point
    const auto equal_a = convex_quadruple_inequality(2.7, 1.3, 0.4, 1.3, -2.0);
    CHECK(equal_a.lhs == equal_a.rhs);
    const auto aligned = convex_quadruple_inequality(1.8, 2.0, 1.0, 0.5, -1.0); // a0>a1, b0>b1
    CHECK(aligned.lhs == aligned.rhs);
    const auto point = convex_quadruple_inequality(2.0, 1.0, 0.0, 0.0, 1.0);
    CHECK(point.lhs == doctest::Approx(2.0));
    CHECK(point.rhs == doctest::Approx(0.0));
    CHECK(point.holds);

    CHECK_THROWS_AS(convex_quadruple_inequality(0.5, 1, 2, 3, 4), OutOfRange);

    SplitMix64 rng(121);
    for (int trial = 0; trial < 20000; ++trial) {
        const double q = 1.0 + rng.next_unit() * 3.0;
        const auto sample = [&] { return -2.0 + 4.0 * rng.next_unit(); };
        CHECK(convex_quadruple_inequality(q, sample(), sample(), sample(), sample()).holds);
    }
}

TEST_CASE("theorem-2 inequality checker") {
    // p=2 on the P2 ladder with unit resistances, against the Kirchhoff oracle
    const BunkbedGraph bb((path_graph(2)));
    BunkbedWeights unit;
    unit.horizontal.assign(2, Rational(1));
    unit.vertical.assign(3, Rational(1));
    const auto net = make_bunkbed_network(bb, unit, WeightRole::resistance);
    const auto report = verify_p_resistance_inequality(net, 0, 2, PParameter(2.0));
    CHECK(report.holds);
    CHECK(report.both_converged);
    const double straight_ref =
        oracles::effective_resistance_kirchhoff(net, bb.vertex_id(0, 0), bb.vertex_id(2, 0));
    const double crossed_ref =
        oracles::effective_resistance_kirchhoff(net, bb.vertex_id(0, 0), bb.vertex_id(2, 1));
    CHECK(report.straight.r_p == doctest::Approx(straight_ref).epsilon(1e-9));
    CHECK(report.crossed.r_p == doctest::Approx(crossed_ref).epsilon(1e-9));
    CHECK(crossed_ref >= straight_ref);

    // huge vertical resistances nearly decouple the layers
    BunkbedWeights heavy = unit;
    heavy.vertical.assign(3, Rational(1000000));
    const auto hnet = make_bunkbed_network(bb, heavy, WeightRole::resistance);
    const auto hreport = verify_p_resistance_inequality(hnet, 0, 2, PParameter(2.0));
    CHECK(hreport.holds);
    CHECK(hreport.crossed.r_p > 100.0 * hreport.straight.r_p);

    // asymmetric horizontal resistances are rejected
    auto broken = net.weights;
    broken[2] += 1;
    CHECK_THROWS_AS(verify_p_resistance_inequality(
                        make_bunkbed_network(bb, broken, WeightRole::resistance), 0, 2,
                        PParameter(2.0)),
                    AsymmetricResistances);

    // sweep across p
    SplitMix64 rng(131);
    for (int trial = 0; trial < 12; ++trial) {
        const auto bnet = random_symmetric_resistances(rng, rng.next_int(2, 6), 0.6);
        const int n = bnet.bunkbed->base_vertices();
        const int x = static_cast<int>(rng.next_below(n));
        int y = static_cast<int>(rng.next_below(n - 1));
        if (y >= x) ++y;
        for (double p : {1.5, 2.0, 3.0}) {
            const auto r = verify_p_resistance_inequality(bnet, x, y, PParameter(p));
            CHECK(r.holds);
        }
    }
}
