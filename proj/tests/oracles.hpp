#pragma once

// Test-only oracles, deliberately independent of the library's solver paths:
// a hand-rolled Gaussian elimination for Kirchhoff effective resistance and
// a one-dimensional ternary-search minimizer.

#include <cmath>
#include <functional>
#include <vector>

#include "bunkbed/network.hpp"

namespace oracles {

// Effective resistance by nodal analysis: ground y, inject a unit current
// at x, solve the reduced conductance Laplacian by plain Gaussian
// elimination with partial pivoting; R_eff = potential at x.
inline double effective_resistance_kirchhoff(const bunkbed::CapacitatedNetwork& network, int x,
                                             int y) {
    const auto& graph = network.graph;
    const int n = graph.vertex_count();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (int e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edge(e);
        const double conductance = 1.0 / bunkbed::to_double(network.weights[e]);
        a[edge.u][edge.u] += conductance;
        a[edge.v][edge.v] += conductance;
        a[edge.u][edge.v] -= conductance;
        a[edge.v][edge.u] -= conductance;
    }
    // delete row/column y, right-hand side e_x
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
        if (v != y) keep.push_back(v);
    const int k = static_cast<int>(keep.size());
    std::vector<std::vector<double>> m(k, std::vector<double>(k + 1, 0.0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) m[i][j] = a[keep[i]][keep[j]];
        m[i][k] = keep[i] == x ? 1.0 : 0.0;
    }
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int row = col + 1; row < k; ++row)
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        std::swap(m[col], m[pivot]);
        for (int row = col + 1; row < k; ++row) {
            const double factor = m[row][col] / m[col][col];
            for (int j = col; j <= k; ++j) m[row][j] -= factor * m[col][j];
        }
    }
    std::vector<double> solution(k, 0.0);
    for (int row = k - 1; row >= 0; --row) {
        double value = m[row][k];
        for (int j = row + 1; j < k; ++j) value -= m[row][j] * solution[j];
        solution[row] = value / m[row][row];
    }
    for (int i = 0; i < k; ++i)
        if (keep[i] == x) return solution[i];
    return 0.0;
}

// Ternary search for the minimum of a strictly unimodal function on [lo,hi].
inline double ternary_min(const std::function<double(double)>& f, double lo, double hi,
                          int iterations = 300) {
    for (int i = 0; i < iterations; ++i) {
        const double a = lo + (hi - lo) / 3.0;
        const double b = hi - (hi - lo) / 3.0;
        if (f(a) < f(b))
            hi = b;
        else
            lo = a;
    }
    return (lo + hi) / 2.0;
}

} // namespace oracles
