#pragma once

// Exact solver for the balanced transportation problem
//
//   minimize   sum_ij f_ij c_ij
//   subject to f_ij >= 0, sum_j f_ij = supply_i, sum_i f_ij = demand_j
//
// by successive shortest augmenting paths with node potentials (dense
// Dijkstra on the residual bipartite network). Each augmentation moves the
// bottleneck amount along a cheapest path, so integral supplies and demands
// yield an integral optimal flow. With m+n nodes and integral weights summing
// to W the cost is O(W (m+n)^2); for the GMD W = m+n, which gives O(n^3).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "gmd/error.hpp"
#include "gmd/matrix.hpp"

namespace gmd {

inline constexpr double kBalanceTolerance = 1e-9;

struct TransportInstance {
    std::vector<double> supplies;
    std::vector<double> demands;
    Matrix<double> costs;  // supplies.size() x demands.size()
};

struct Flow {
    Matrix<double> values;
    double objective = 0.0;
};

inline double flow_objective(const Matrix<double>& costs, const Matrix<double>& values) {
    double s = 0.0;
    for (std::size_t i = 0; i < values.rows(); ++i)
        for (std::size_t j = 0; j < values.cols(); ++j) s += values(i, j) * costs(i, j);
    return s;
}

namespace detail {

inline void check_instance(const TransportInstance& inst) {
    const auto& c = inst.costs;
    if (c.rows() != inst.supplies.size() || c.cols() != inst.demands.size())
        throw DataError("cost matrix shape does not match supplies x demands");
    for (double w : inst.supplies)
        if (!std::isfinite(w) || w < 0.0) throw DataError("supplies must be finite and non-negative");
    for (double w : inst.demands)
        if (!std::isfinite(w) || w < 0.0) throw DataError("demands must be finite and non-negative");
    for (double x : c.data())
        if (!std::isfinite(x) || x < 0.0) throw DataError("costs must be finite and non-negative");
    const double s = std::accumulate(inst.supplies.begin(), inst.supplies.end(), 0.0);
    const double d = std::accumulate(inst.demands.begin(), inst.demands.end(), 0.0);
    if (std::abs(s - d) > kBalanceTolerance)
        throw InfeasibleError("total supply " + std::to_string(s) + " differs from total demand " +
                              std::to_string(d));
}

}  // namespace detail

inline Flow solve_transport(const TransportInstance& inst) {
    detail::check_instance(inst);
    const std::size_t S = inst.supplies.size();
    const std::size_t T = inst.demands.size();
    const Matrix<double>& cost = inst.costs;

    Flow out{Matrix<double>(S, T, 0.0), 0.0};
    const double total = std::accumulate(inst.supplies.begin(), inst.supplies.end(), 0.0);
    if (total == 0.0) return out;

    const double tol = 1e-12 * std::max(1.0, total);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    std::vector<double> rs(inst.supplies), rd(inst.demands);
    // Nodes: suppliers [0, S), consumers [S, S+T).
    const std::size_t N = S + T;
    std::vector<double> pot(N, 0.0), dist(N);
    std::vector<std::size_t> prev(N);
    std::vector<char> done(N);
    Matrix<double>& f = out.values;

    double remaining = total;
    while (remaining > tol) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(prev.begin(), prev.end(), kNone);
        std::fill(done.begin(), done.end(), 0);
        for (std::size_t i = 0; i < S; ++i)
            if (rs[i] > tol) dist[i] = 0.0;

        std::size_t target = kNone;
        for (;;) {
            std::size_t u = kNone;
            double best = kInf;
            for (std::size_t v = 0; v < N; ++v)
                if (!done[v] && dist[v] < best) best = dist[v], u = v;
            if (u == kNone) break;
            done[u] = 1;
            if (u >= S && rd[u - S] > tol) {
                target = u;
                break;
            }
            if (u < S) {
                for (std::size_t j = 0; j < T; ++j) {
                    const std::size_t v = S + j;
                    if (done[v]) continue;
                    const double rc = std::max(0.0, cost(u, j) + pot[u] - pot[v]);
                    if (dist[u] + rc < dist[v]) dist[v] = dist[u] + rc, prev[v] = u;
                }
            } else {
                const std::size_t j = u - S;
                for (std::size_t i = 0; i < S; ++i) {
                    if (done[i] || f(i, j) <= tol) continue;
                    const double rc = std::max(0.0, -cost(i, j) + pot[u] - pot[i]);
                    if (dist[u] + rc < dist[i]) dist[i] = dist[u] + rc, prev[i] = u;
                }
            }
        }
        if (target == kNone) throw Error("transport solver: no augmenting path (internal error)");

        // Bottleneck along the path: source supply, sink demand, backward arcs.
        double amount = rd[target - S];
        std::size_t v = target;
        while (prev[v] != kNone) {
            const std::size_t u = prev[v];
            if (u >= S) amount = std::min(amount, f(v, u - S));  // backward arc consumer -> supplier
            v = u;
        }
        const std::size_t source = v;
        amount = std::min(amount, rs[source]);

        v = target;
        while (prev[v] != kNone) {
            const std::size_t u = prev[v];
            if (u < S) {
                f(u, v - S) += amount;
            } else {
                double& x = f(v, u - S);
                x -= amount;
                if (x <= tol) x = 0.0;
            }
            v = u;
        }
        rs[source] -= amount;
        rd[target - S] -= amount;
        remaining -= amount;

        const double reach = dist[target];
        for (std::size_t k = 0; k < N; ++k) pot[k] += std::min(dist[k], reach);
    }

    out.objective = flow_objective(cost, f);
    return out;
}

enum class FlowViolationKind { Shape, Negative, RowSum, ColumnSum };

struct FlowViolation {
    FlowViolationKind kind;
    std::size_t row = 0;
    std::size_t col = 0;
    double residual = 0.0;  // observed minus required
};

// Checks non-negativity, row sums against supplies and column sums against
// demands. An empty result means the flow is feasible.
inline std::vector<FlowViolation> check_flow(const TransportInstance& inst, const Flow& flow,
                                             double tol = kBalanceTolerance) {
    std::vector<FlowViolation> out;
    const auto& f = flow.values;
    if (f.rows() != inst.supplies.size() || f.cols() != inst.demands.size()) {
        out.push_back({FlowViolationKind::Shape, f.rows(), f.cols(), 0.0});
        return out;
    }
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j)
            if (f(i, j) < -tol) out.push_back({FlowViolationKind::Negative, i, j, f(i, j)});
    for (std::size_t i = 0; i < f.rows(); ++i) {
        double s = 0.0;
        for (double x : f.row(i)) s += x;
        if (std::abs(s - inst.supplies[i]) > tol)
            out.push_back({FlowViolationKind::RowSum, i, 0, s - inst.supplies[i]});
    }
    for (std::size_t j = 0; j < f.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < f.rows(); ++i) s += f(i, j);
        if (std::abs(s - inst.demands[j]) > tol)
            out.push_back({FlowViolationKind::ColumnSum, 0, j, s - inst.demands[j]});
    }
    return out;
}

inline std::string describe(const FlowViolation& v) {
    switch (v.kind) {
        case FlowViolationKind::Shape:
            return "flow shape mismatch";
        case FlowViolationKind::Negative:
            return "negative flow at (" + std::to_string(v.row) + "," + std::to_string(v.col) +
                   "): " + std::to_string(v.residual);
        case FlowViolationKind::RowSum:
            return "row " + std::to_string(v.row) + " ships supply off by " + std::to_string(v.residual);
        case FlowViolationKind::ColumnSum:
            return "column " + std::to_string(v.col) + " receives demand off by " + std::to_string(v.residual);
    }
    return {};
}

// Debug dump: objective line, then the flow rows.
inline void write_csv(std::ostream& os, const Flow& flow) {
    const auto old = os.precision(17);
    os << "objective\n" << flow.objective << '\n';
    os.precision(old);
    write_csv_rows(os, flow.values);
}

}  // namespace gmd
