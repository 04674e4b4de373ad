#pragma once

// Graph Mover's Distance between ordered geometric graphs.
//
// Suppliers are the m vertices of G (weight 1 each) plus a dummy supplier of
// weight n; consumers are the n vertices of H (weight 1 each) plus a dummy
// consumer of weight m. Ground costs come from ground_cost_matrix().
//
// Deleting a vertex costs C_E times the lengths of its incident edges (the
// dummy column/row); there is no separate vertex-deletion charge, and a
// deleted edge is paid from each endpoint that is deleted. The value depends
// on vertex order: permuting the vertices of one graph can change it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "gmd/error.hpp"
#include "gmd/geometry.hpp"
#include "gmd/ground_cost.hpp"
#include "gmd/transport.hpp"

namespace gmd {

struct GmdResult {
    double value = 0.0;
    Flow flow;
    GroundCostMatrix matrix;
};

inline TransportInstance gmd_instance(const GroundCostMatrix& d) {
    const std::size_t m = d.m();
    const std::size_t n = d.n();
    TransportInstance inst;
    inst.supplies.assign(m + 1, 1.0);
    inst.supplies[m] = static_cast<double>(n);
    inst.demands.assign(n + 1, 1.0);
    inst.demands[n] = static_cast<double>(m);
    inst.costs = d.entries();
    return inst;
}

inline GmdResult gmd(const GeometricGraph& g, const GeometricGraph& h, const CostParams& params) {
    GmdResult r;
    r.matrix = ground_cost_matrix(g, h, params);
    r.flow = solve_transport(gmd_instance(r.matrix));
    r.value = r.flow.objective;
    return r;
}

inline double gmd_value(const GeometricGraph& g, const GeometricGraph& h, const CostParams& params) {
    return gmd(g, h, params).value;
}

inline constexpr std::size_t kGmdBruteforceLimit = 6;

// Minimum over partial injections sigma between the real vertex index sets of
//   sum_{(i,j) in sigma} d(i,j) + sum_{i unmatched} d(i,n) + sum_{j unmatched} d(m,j).
// Integral optimal flows of the GMD instance are exactly such injections.
inline double gmd_bruteforce(const GeometricGraph& g, const GeometricGraph& h, const CostParams& params) {
    if (g.vertex_count() > kGmdBruteforceLimit || h.vertex_count() > kGmdBruteforceLimit)
        throw SizeLimitError("gmd_bruteforce supports at most 6 vertices per graph");
    const GroundCostMatrix d = ground_cost_matrix(g, h, params);
    const std::size_t m = d.m();
    const std::size_t n = d.n();

    double best = std::numeric_limits<double>::infinity();
    std::vector<char> used(n, 0);
    // Assign each G vertex in turn to the dummy or to an unused H vertex.
    auto rec = [&](auto&& self, std::size_t i, double acc) -> void {
        if (acc >= best) return;
        if (i == m) {
            double total = acc;
            for (std::size_t j = 0; j < n; ++j)
                if (!used[j]) total += d.deletion_h(j);
            best = std::min(best, total);
            return;
        }
        self(self, i + 1, acc + d.deletion_g(i));
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            self(self, i + 1, acc + d(i, j));
            used[j] = 0;
        }
    };
    rec(rec, 0, 0.0);
    return best;
}

}  // namespace gmd
