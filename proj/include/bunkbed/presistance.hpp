#pragma once

#include <span>
#include <vector>

#include "bunkbed/network.hpp"

namespace bunkbed::presistance {

// p > 1 with the dual exponent q = 1 + 1/(p-1) = p/(p-1).
struct PParameter {
    double p;
    double q;
    explicit PParameter(double p_value);
};

// Potential on the vertices with f(high_pin) = 1 and f(low_pin) = 0, all
// values in [0,1].
struct PotentialVector {
    std::vector<double> values;
    int high_pin = -1;
    int low_pin = -1;
};

struct SolverOptions {
    double rel_objective_tol = 1e-12; // relative decrease per iteration...
    int objective_window = 5;         // ...sustained over this many iterations
    double gradient_tol = 1e-10;      // projected gradient norm
    int max_iterations = 10000;
    double epsilon = 1e-12; // IRLS edge-weight regularization floor on |df|
};

struct SolverDiagnostics {
    int iterations = 0;
    bool converged = false;
    double objective = 0.0;
    double projected_gradient_norm = 0.0;
    bool used_gradient_fallback = false;
};

struct DualResult {
    PotentialVector potential;
    double c_value = 0.0; // dual objective sum |df|^q / r^(q-1) at the minimizer
    SolverDiagnostics diagnostics;
};

// Minimizes the dual objective by iteratively reweighted least squares
// (each step an SPD solve on the interior vertices), warm-started from the
// p=2 harmonic solution, with monotone damping and a projected-gradient
// fallback when IRLS stalls. Not-converged results carry the best iterate
// in the diagnostics rather than throwing. Throws DisconnectedPair when x
// and y are not connected; requires the resistance role and x != y.
DualResult dual_capacity(const CapacitatedNetwork& network, int x, int y, PParameter p,
                         const SolverOptions& options = {});

struct PResistanceResult {
    double p = 0.0;
    double r_p = 0.0;       // primal value: sum r(e)|theta(e)|^p of the unit flow
    double c_p = 0.0;       // dual objective value
    double dual_bound = 0.0; // c_p^(-(p-1)), a lower bound on the true R_p
    double gap = 0.0;        // r_p - dual_bound (>= 0 up to roundoff)
    PotentialVector potential;
    std::vector<double> unit_flow; // per edge, canonical orientation
    double strength = 0.0;              // pre-normalization strength of the extracted flow
    double conservation_residual = 0.0; // max interior |divergence| of the unit flow
    SolverDiagnostics diagnostics;
};

// Solves the dual and extracts the optimal unit flow
// theta ~ sign(df) * (|df|/r)^(q-1), normalized to unit strength.
PResistanceResult primal_p_resistance(const CapacitatedNetwork& network, int x, int y, PParameter p,
                                      const SolverOptions& options = {});

// Layer-wise min/max rearrangement: h(u0) = max(f(u0), f(u1)),
// h(u1) = min(f(u0), f(u1)). Works for any ordered value type (the max-flow
// module uses the rational instantiation).
template <typename T>
std::vector<T> minmax_rearrange(const BunkbedGraph& bunkbed, std::vector<T> f) {
    const int n = bunkbed.base_vertices();
    for (int u = 0; u < n; ++u) {
        T& top = f[bunkbed.vertex_id(u, 0)];
        T& bottom = f[bunkbed.vertex_id(u, 1)];
        if (top < bottom) std::swap(top, bottom);
    }
    return f;
}

// For [0,1]-valued potentials the unit pin stays in layer 0 and the zero
// pin lands in layer 1.
PotentialVector minmax_rearrange(const BunkbedGraph& bunkbed, const PotentialVector& f);

struct QuadrupleReport {
    double lhs;
    double rhs;
    bool holds; // lhs >= rhs - 1e-12 * scale
};

// phi(a0-b0)+phi(a1-b1) >= phi(a0 v a1 - b0 v b1) + phi(a0 ^ a1 - b0 ^ b1)
// with phi = |.|^q, q >= 1.
QuadrupleReport convex_quadruple_inequality(double q, double a0, double b0, double a1, double b1);

struct PResistanceInequalityReport {
    int x;
    int y;
    PResistanceResult straight; // R_p(x0, y0)
    PResistanceResult crossed;  // R_p(x0, y1)
    bool holds;                 // crossed >= straight - 1e-8 * scale
    bool both_converged;
};

inline constexpr double kInequalitySlack = 1e-8;

// Theorem check on a bunkbed; resistances must be reflection-symmetric on
// horizontal pairs (throws AsymmetricResistances otherwise).
PResistanceInequalityReport verify_p_resistance_inequality(const BunkbedGraph& bunkbed,
                                                           std::span<const Rational> resistances,
                                                           int x, int y, PParameter p,
                                                           const SolverOptions& options = {});
PResistanceInequalityReport verify_p_resistance_inequality(const CapacitatedNetwork& network,
                                                           int x, int y, PParameter p,
                                                           const SolverOptions& options = {});

} // namespace bunkbed::presistance
