#include "bunkbed/presistance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace bunkbed::presistance {

PParameter::PParameter(double p_value) : p(p_value), q(1.0 + 1.0 / (p_value - 1.0)) {
    if (!(p_value > 1.0)) throw OutOfRange("p must be > 1");
}

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

struct Workspace {
    const BaseGraph& graph;
    std::vector<double> resistance;
    std::vector<double> kappa; // r^(1-q)
    int x, y;
    double q;
    std::vector<int> interior;      // vertices other than x, y
    std::vector<int> interior_index; // -1 for pins

    Workspace(const CapacitatedNetwork& network, int x_, int y_, double q_)
        : graph(network.graph), x(x_), y(y_), q(q_) {
        resistance.reserve(network.weights.size());
        for (const Rational& r : network.weights) resistance.push_back(to_double(r));
        kappa.reserve(resistance.size());
        for (double r : resistance) kappa.push_back(std::pow(r, 1.0 - q));
        interior_index.assign(graph.vertex_count(), -1);
        for (int v = 0; v < graph.vertex_count(); ++v) {
            if (v == x || v == y) continue;
            interior_index[v] = static_cast<int>(interior.size());
            interior.push_back(v);
        }
    }

    double objective(const std::vector<double>& f) const {
        double total = 0.0;
        for (int e = 0; e < graph.edge_count(); ++e) {
            const Edge& edge = graph.edge(e);
            total += kappa[e] * std::pow(std::abs(f[edge.u] - f[edge.v]), q);
        }
        return total;
    }

    std::vector<double> gradient(const std::vector<double>& f) const {
        std::vector<double> g(graph.vertex_count(), 0.0);
        for (int e = 0; e < graph.edge_count(); ++e) {
            const Edge& edge = graph.edge(e);
            const double d = f[edge.u] - f[edge.v];
            const double t = q * kappa[e] * std::pow(std::abs(d), q - 1.0) * (d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0));
            g[edge.u] += t;
            g[edge.v] -= t;
        }
        return g;
    }

    // KKT violation over the interior under the [0,1] box
    double projected_gradient_norm(const std::vector<double>& f) const {
        const auto g = gradient(f);
        double norm2 = 0.0;
        for (int v : interior) {
            double gv = g[v];
            if (f[v] <= 0.0) gv = std::min(gv, 0.0);
            if (f[v] >= 1.0) gv = std::max(gv, 0.0);
            norm2 += gv * gv;
        }
        return std::sqrt(norm2);
    }

    // Weighted Laplacian solve over interior vertices with f(x)=1, f(y)=0.
    // Returns false when the solve produced non-finite values.
    bool weighted_harmonic(const std::vector<double>& w, std::vector<double>& f) const {
        const int k = static_cast<int>(interior.size());
        f.assign(graph.vertex_count(), 0.0);
        f[x] = 1.0;
        f[y] = 0.0;
        if (k == 0) return true;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
        for (int e = 0; e < graph.edge_count(); ++e) {
            const Edge& edge = graph.edge(e);
            const int iu = interior_index[edge.u];
            const int iv = interior_index[edge.v];
            if (iu < 0 && iv < 0) continue;
            if (iu >= 0) a(iu, iu) += w[e];
            if (iv >= 0) a(iv, iv) += w[e];
            if (iu >= 0 && iv >= 0) {
                a(iu, iv) -= w[e];
                a(iv, iu) -= w[e];
            } else if (iu >= 0) {
                b(iu) += w[e] * f[edge.v];
            } else {
                b(iv) += w[e] * f[edge.u];
            }
        }
        const Eigen::VectorXd solution = a.ldlt().solve(b);
        for (int i = 0; i < k; ++i) {
            if (!std::isfinite(solution(i))) return false;
            f[interior[i]] = solution(i);
        }
        return true;
    }
};

} // namespace

DualResult dual_capacity(const CapacitatedNetwork& network, int x, int y, PParameter p,
                         const SolverOptions& options) {
    if (network.role != WeightRole::resistance)
        throw InvalidWeight("dual_capacity needs resistance role");
    const int n = network.graph.vertex_count();
    if (x < 0 || x >= n || y < 0 || y >= n) throw OutOfRange("x/y out of range");
    if (x == y) throw OutOfRange("x equals y");
    if (!network.graph.is_connected()) throw DisconnectedPair("network is not connected");

    Workspace ws(network, x, y, p.q);

    // p=2 warm start: conductances 1/r
    std::vector<double> f;
    {
        std::vector<double> w(ws.resistance.size());
        for (std::size_t e = 0; e < w.size(); ++e) w[e] = 1.0 / ws.resistance[e];
        if (!ws.weighted_harmonic(w, f)) {
            f.assign(n, 0.0);
            f[x] = 1.0;
        }
        for (int v : ws.interior) f[v] = clamp01(f[v]);
    }

    SolverDiagnostics diag;
    double current = ws.objective(f);
    int flat_window = 0;
    std::vector<double> w(ws.resistance.size());
    std::vector<double> candidate, trial(f.size());

    for (diag.iterations = 0; diag.iterations < options.max_iterations; ++diag.iterations) {
        diag.projected_gradient_norm = ws.projected_gradient_norm(f);
        if (diag.projected_gradient_norm < options.gradient_tol) {
            diag.converged = true;
            break;
        }
        if (flat_window >= options.objective_window) {
            diag.converged = true;
            break;
        }

        // IRLS weights kappa * max(|df|, eps)^(q-2)
        for (int e = 0; e < ws.graph.edge_count(); ++e) {
            const Edge& edge = ws.graph.edge(e);
            const double d = std::max(std::abs(f[edge.u] - f[edge.v]), options.epsilon);
            w[e] = ws.kappa[e] * std::pow(d, p.q - 2.0);
        }

        bool accepted = false;
        double next = current;
        if (ws.weighted_harmonic(w, candidate)) {
            for (int v : ws.interior) candidate[v] = clamp01(candidate[v]);
            // The exact Newton step for sum kappa|df|^q is f + (candidate-f)/(q-1),
            // an extrapolation past the IRLS point when q < 2; leading with it
            // makes the tail quadratic instead of linear.
            const double newton = std::min(8.0, std::max(0.25, 1.0 / (p.q - 1.0)));
            for (double alpha = newton; alpha >= 1e-12; alpha *= 0.5) {
                trial = f;
                for (int v : ws.interior) trial[v] = clamp01(f[v] + alpha * (candidate[v] - f[v]));
                const double value = ws.objective(trial);
                if (value <= current) {
                    f = trial;
                    next = value;
                    accepted = true;
                    break;
                }
            }
        }

        if (!accepted) {
            // projected gradient with Armijo backtracking
            diag.used_gradient_fallback = true;
            const auto g = ws.gradient(f);
            double g_scale = 0.0;
            for (int v : ws.interior) g_scale = std::max(g_scale, std::abs(g[v]));
            if (g_scale == 0.0) {
                diag.converged = true;
                break;
            }
            for (double step = 1.0 / g_scale; step >= 1e-18 / g_scale; step *= 0.5) {
                trial = f;
                double predicted = 0.0;
                for (int v : ws.interior) {
                    trial[v] = clamp01(f[v] - step * g[v]);
                    predicted += g[v] * (f[v] - trial[v]);
                }
                const double value = ws.objective(trial);
                if (value <= current - 1e-4 * predicted && value <= current) {
                    f = trial;
                    next = value;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break; // stalled at numerical floor
        }

        const double decrease = (current - next) / std::max(current, 1e-300);
        flat_window = (decrease < options.rel_objective_tol) ? flat_window + 1 : 0;
        current = next;
    }
    diag.objective = current;
    if (!diag.converged) diag.projected_gradient_norm = ws.projected_gradient_norm(f);

    DualResult result;
    result.potential.values = std::move(f);
    result.potential.high_pin = x;
    result.potential.low_pin = y;
    result.c_value = current;
    result.diagnostics = diag;
    return result;
}

PResistanceResult primal_p_resistance(const CapacitatedNetwork& network, int x, int y, PParameter p,
                                      const SolverOptions& options) {
    DualResult dual = dual_capacity(network, x, y, p, options);
    const BaseGraph& graph = network.graph;
    const auto& f = dual.potential.values;

    PResistanceResult result;
    result.p = p.p;
    result.c_p = dual.c_value;
    result.potential = dual.potential;
    result.diagnostics = dual.diagnostics;

    // Optimal flow shape: sign(df) * (|df|/r)^(q-1)
    std::vector<double> g(graph.edge_count(), 0.0);
    for (int e = 0; e < graph.edge_count(); ++e) {
        const Edge& edge = graph.edge(e);
        const double d = f[edge.u] - f[edge.v];
        const double r = to_double(network.weights[e]);
        const double magnitude = std::pow(std::abs(d) / r, p.q - 1.0);
        g[e] = (d >= 0 ? magnitude : -magnitude);
    }
    double strength = 0.0;
    for (const auto& entry : graph.neighbors(x)) {
        const Edge& edge = graph.edge(entry.edge);
        strength += (edge.u == x) ? g[entry.edge] : -g[entry.edge];
    }
    result.strength = strength;

    result.unit_flow.assign(graph.edge_count(), 0.0);
    if (strength > 0.0)
        for (int e = 0; e < graph.edge_count(); ++e) result.unit_flow[e] = g[e] / strength;

    double residual = 0.0;
    for (int v = 0; v < graph.vertex_count(); ++v) {
        if (v == x || v == y) continue;
        double div = 0.0;
        for (const auto& entry : graph.neighbors(v)) {
            const Edge& edge = graph.edge(entry.edge);
            div += (edge.u == v) ? result.unit_flow[entry.edge] : -result.unit_flow[entry.edge];
        }
        residual = std::max(residual, std::abs(div));
    }
    result.conservation_residual = residual;

    double r_value = 0.0;
    for (int e = 0; e < graph.edge_count(); ++e)
        r_value += to_double(network.weights[e]) * std::pow(std::abs(result.unit_flow[e]), p.p);
    result.r_p = r_value;
    result.dual_bound = std::pow(result.c_p, -(p.p - 1.0));
    result.gap = result.r_p - result.dual_bound;
    return result;
}

PotentialVector minmax_rearrange(const BunkbedGraph& bunkbed, const PotentialVector& f) {
    PotentialVector h;
    h.values = minmax_rearrange(bunkbed, f.values);
    // values live in [0,1], so the unit pin surfaces in layer 0 and the
    // zero pin sinks to layer 1
    h.high_pin = bunkbed.vertex_id(bunkbed.base_vertex(f.high_pin), 0);
    h.low_pin = bunkbed.vertex_id(bunkbed.base_vertex(f.low_pin), 1);
    return h;
}

QuadrupleReport convex_quadruple_inequality(double q, double a0, double b0, double a1, double b1) {
    if (!(q >= 1.0)) throw OutOfRange("q must be >= 1");
    const auto phi = [q](double t) { return std::pow(std::abs(t), q); };
    QuadrupleReport report;
    report.lhs = phi(a0 - b0) + phi(a1 - b1);
    report.rhs = phi(std::max(a0, a1) - std::max(b0, b1)) + phi(std::min(a0, a1) - std::min(b0, b1));
    const double scale = std::max({1.0, std::abs(report.lhs), std::abs(report.rhs)});
    report.holds = report.lhs >= report.rhs - 1e-12 * scale;
    return report;
}

PResistanceInequalityReport verify_p_resistance_inequality(const CapacitatedNetwork& network, int x,
                                                           int y, PParameter p,
                                                           const SolverOptions& options) {
    if (!network.bunkbed) throw AsymmetricResistances("not a bunkbed network");
    if (!reflection_symmetric(network))
        throw AsymmetricResistances("resistances are not reflection-symmetric");
    const BunkbedGraph& bb = *network.bunkbed;
    const int n = bb.base_vertices();
    if (x < 0 || x >= n || y < 0 || y >= n) throw OutOfRange("x/y out of range");
    if (x == y) throw OutOfRange("x equals y");

    PResistanceInequalityReport report;
    report.x = x;
    report.y = y;
    report.straight = primal_p_resistance(network, bb.vertex_id(x, 0), bb.vertex_id(y, 0), p, options);
    report.crossed = primal_p_resistance(network, bb.vertex_id(x, 0), bb.vertex_id(y, 1), p, options);
    const double scale =
        std::max({1.0, std::abs(report.straight.r_p), std::abs(report.crossed.r_p)});
    report.holds = report.crossed.r_p >= report.straight.r_p - kInequalitySlack * scale;
    report.both_converged =
        report.straight.diagnostics.converged && report.crossed.diagnostics.converged;
    return report;
}

PResistanceInequalityReport verify_p_resistance_inequality(const BunkbedGraph& bunkbed,
                                                           std::span<const Rational> resistances,
                                                           int x, int y, PParameter p,
                                                           const SolverOptions& options) {
    std::vector<Rational> r(resistances.begin(), resistances.end());
    return verify_p_resistance_inequality(
        make_bunkbed_network(bunkbed, std::move(r), WeightRole::resistance), x, y, p, options);
}

} // namespace bunkbed::presistance
