#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>

#include "gmd/geometry.hpp"
#include "gmd/matrix.hpp"

namespace gmd {

// (m+1) x (n+1) ground distances between the vertices of G (rows) and H
// (columns). Row m is the dummy supplier, column n the dummy consumer.
class GroundCostMatrix {
public:
    GroundCostMatrix() = default;
    GroundCostMatrix(std::size_t m, std::size_t n, Matrix<double> entries)
        : m_(m), n_(n), entries_(std::move(entries)) {}

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const Matrix<double>& entries() const noexcept { return entries_; }

    // Cost of deleting real vertex i of G / j of H.
    double deletion_g(std::size_t i) const { return entries_(i, n_); }
    double deletion_h(std::size_t j) const { return entries_(m_, j); }

    friend bool operator==(const GroundCostMatrix&, const GroundCostMatrix&) = default;

private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    Matrix<double> entries_{1, 1, 0.0};
};

inline double deletion_cost(const AdjLengthVector& vec, const CostParams& params) {
    double s = 0.0;
    for (double x : vec) s += std::abs(x);
    return params.edge() * s;
}

// d(i,j) = C_V |u_i - v_j| + C_E || E^G_i[0..p) - E^H_j[0..p) ||_1 with
// p = min(m, n); the dummy row/column hold C_E ||E||_1 of the other side.
inline GroundCostMatrix ground_cost_matrix(const GeometricGraph& g, const GeometricGraph& h,
                                           const CostParams& params) {
    if (g.dim() != h.dim()) throw DataError("dimension mismatch");
    require_valid_structure(g);
    require_valid_structure(h);

    const std::size_t m = g.vertex_count();
    const std::size_t n = h.vertex_count();
    const std::size_t p = std::min(m, n);
    const Matrix<double> eg = adjacency_lengths(g);
    const Matrix<double> eh = adjacency_lengths(h);

    Matrix<double> d(m + 1, n + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const auto gi = eg.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            const auto hj = eh.row(j);
            double l1 = 0.0;
            for (std::size_t k = 0; k < p; ++k) l1 += std::abs(gi[k] - hj[k]);
            d(i, j) = params.vertex() * distance(g.vertex(i), h.vertex(j)) + params.edge() * l1;
        }
        double s = 0.0;
        for (double x : gi) s += x;
        d(i, n) = params.edge() * s;
    }
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (double x : eh.row(j)) s += x;
        d(m, j) = params.edge() * s;
    }
    return {m, n, std::move(d)};
}

// Debug dump: header line "m,n,c_v,c_e" with values, then the matrix rows.
inline void write_csv(std::ostream& os, const GroundCostMatrix& d, const CostParams& params) {
    const auto old = os.precision(17);
    os << "m,n,c_v,c_e\n" << d.m() << ',' << d.n() << ',' << params.vertex() << ',' << params.edge() << '\n';
    os.precision(old);
    write_csv_rows(os, d.entries());
}

}  // namespace gmd
