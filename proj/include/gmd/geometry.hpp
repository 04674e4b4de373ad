#pragma once

// Core model: ordered geometric graphs in R^d, cost coefficients, adjacency
// length vectors, vertex-set Hausdorff distance and the rigid/random moves
// used by the stability harnesses.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gmd/error.hpp"
#include "gmd/matrix.hpp"
#include "gmd/segment.hpp"

namespace gmd {

class Point {
public:
    Point() = default;
    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) { check(); }
    Point(std::initializer_list<double> coords) : coords_(coords) { check(); }

    static Point zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t k) const { return coords_[k]; }
    std::span<const double> coords() const noexcept { return coords_; }

    double norm() const {
        double s = 0.0;
        for (double c : coords_) s += c * c;
        return std::sqrt(s);
    }

    friend bool operator==(const Point&, const Point&) = default;

private:
    void check() const {
        if (coords_.empty()) throw DataError("point must have at least one coordinate");
        for (double c : coords_)
            if (!std::isfinite(c)) throw DataError("non-finite coordinate");
    }

    std::vector<double> coords_;
};

inline double distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw DataError("dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

// Undirected edge between vertex indices; stored with a < b.
struct Edge {
    std::size_t a = 0;
    std::size_t b = 0;

    Edge() = default;
    Edge(std::size_t i, std::size_t j) : a(std::min(i, j)), b(std::max(i, j)) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Ordered geometric graph. Vertex storage order is the vertex index used by
// the GMD. Edge endpoints are normalized to a < b, but edge structure is not
// rejected here: validate_graph() reports problems, and the distance entry
// points call require_valid_structure().
class GeometricGraph {
public:
    GeometricGraph() = default;

    GeometricGraph(std::size_t dim, std::vector<Point> vertices, std::vector<Edge> edges = {})
        : dim_(dim), vertices_(std::move(vertices)), edges_(std::move(edges)) {
        if (dim_ == 0) throw DataError("graph dimension must be positive");
        for (const auto& v : vertices_)
            if (v.dim() != dim_) throw DataError("vertex dimension does not match graph dimension");
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return vertices_.empty(); }

    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Point& vertex(std::size_t i) const { return vertices_.at(i); }

    double edge_length(const Edge& e) const { return distance(vertices_.at(e.a), vertices_.at(e.b)); }

    friend bool operator==(const GeometricGraph&, const GeometricGraph&) = default;

private:
    std::size_t dim_ = 2;
    std::vector<Point> vertices_;
    std::vector<Edge> edges_;
};

// Positive vertex/edge cost coefficients shared by GGD and GMD.
class CostParams {
public:
    CostParams(double vertex, double edge) : vertex_(vertex), edge_(edge) {
        if (!(vertex > 0.0) || !(edge > 0.0) || !std::isfinite(vertex) || !std::isfinite(edge))
            throw DataError("cost coefficients must be positive and finite");
    }

    double vertex() const noexcept { return vertex_; }
    double edge() const noexcept { return edge_; }

private:
    double vertex_;
    double edge_;
};

// Row of incident edge lengths indexed by neighbour position.
using AdjLengthVector = std::vector<double>;

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind { BadIndex, SelfLoop, DuplicateEdge, Crossing, Touch, CollinearOverlap };

struct Violation {
    ViolationKind kind;
    std::size_t edge = 0;        // index into edges()
    std::size_t other_edge = 0;  // second edge for geometric violations
    std::string message;
};

inline constexpr double kDefaultEmbeddingEps = 1e-9;

namespace detail {

inline Vec2 as_vec2(const Point& p) { return {p[0], p[1]}; }

inline std::string format_point(Vec2 p) {
    std::ostringstream os;
    os << '(' << p.x << ',' << p.y << ')';
    return os.str();
}

}  // namespace detail

// Lists structural violations, plus (when check_embedding is set and dim == 2)
// edge pairs whose closed segments meet anywhere other than shared endpoints.
inline std::vector<Violation> validate_graph(const GeometricGraph& g, bool check_embedding = false,
                                             double eps = kDefaultEmbeddingEps) {
    std::vector<Violation> out;
    const auto& edges = g.edges();
    const std::size_t n = g.vertex_count();
    bool structurally_ok = true;

    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge& e = edges[k];
        if (e.a >= n || e.b >= n) {
            out.push_back({ViolationKind::BadIndex, k, k,
                           "bad edge index (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")"});
            structurally_ok = false;
        } else if (e.a == e.b) {
            out.push_back({ViolationKind::SelfLoop, k, k, "self-loop at vertex " + std::to_string(e.a)});
            structurally_ok = false;
        }
    }

    std::vector<std::pair<Edge, std::size_t>> sorted;
    sorted.reserve(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) sorted.emplace_back(edges[k], k);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k) {
        if (sorted[k].first == sorted[k - 1].first) {
            const Edge& e = sorted[k].first;
            out.push_back({ViolationKind::DuplicateEdge, sorted[k].second, sorted[k - 1].second,
                           "duplicate edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")"});
        }
    }

    if (!check_embedding || g.dim() != 2 || !structurally_ok) return out;

    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const Edge& e = edges[i];
            const Edge& f = edges[j];
            if (e == f) continue;
            const bool shared = e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b;
            const auto c = classify_contact(detail::as_vec2(g.vertex(e.a)), detail::as_vec2(g.vertex(e.b)),
                                            detail::as_vec2(g.vertex(f.a)), detail::as_vec2(g.vertex(f.b)), eps);
            switch (c.kind) {
                case ContactKind::CollinearOverlap:
                    out.push_back({ViolationKind::CollinearOverlap, i, j,
                                   "collinear overlap near " + detail::format_point(c.point)});
                    break;
                case ContactKind::Crossing:
                    if (!shared)
                        out.push_back({ViolationKind::Crossing, i, j,
                                       "interior crossing at " + detail::format_point(c.point)});
                    break;
                case ContactKind::Tee:
                    if (!shared)
                        out.push_back({ViolationKind::Touch, i, j,
                                       "endpoint touches edge interior at " + detail::format_point(c.point)});
                    break;
                case ContactKind::None:
                case ContactKind::EndpointTouch:
                    break;
            }
        }
    }
    return out;
}

// Throws DataError on bad index, self-loop or duplicate edge.
inline void require_valid_structure(const GeometricGraph& g) {
    for (const auto& v : validate_graph(g, false))
        throw DataError(v.message);
}

// ---------------------------------------------------------------------------
// Adjacency lengths

inline AdjLengthVector adj_length_vector(const GeometricGraph& g, std::size_t i) {
    if (i >= g.vertex_count()) throw DataError("vertex index out of range");
    AdjLengthVector row(g.vertex_count(), 0.0);
    for (const Edge& e : g.edges()) {
        if (e.a == i) row.at(e.b) = g.edge_length(e);
        else if (e.b == i) row.at(e.a) = g.edge_length(e);
    }
    return row;
}

// All adjacency length vectors as the rows of an m x m matrix.
inline Matrix<double> adjacency_lengths(const GeometricGraph& g) {
    const std::size_t m = g.vertex_count();
    Matrix<double> out(m, m, 0.0);
    for (const Edge& e : g.edges()) {
        const double len = g.edge_length(e);
        out(e.a, e.b) = len;
        out(e.b, e.a) = len;
    }
    return out;
}

inline double total_edge_length(const GeometricGraph& g) {
    double s = 0.0;
    for (const Edge& e : g.edges()) s += g.edge_length(e);
    return s;
}

// ---------------------------------------------------------------------------
// Hausdorff distance between vertex sets

inline double hausdorff_vertices(const GeometricGraph& a, const GeometricGraph& b) {
    if (a.empty() || b.empty()) throw DataError("hausdorff distance of an empty vertex set");
    if (a.dim() != b.dim()) throw DataError("dimension mismatch");
    auto directed = [](const GeometricGraph& from, const GeometricGraph& to) {
        double worst = 0.0;
        for (const Point& p : from.vertices()) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& q : to.vertices()) best = std::min(best, distance(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

// ---------------------------------------------------------------------------
// Moves

inline GeometricGraph translate(const GeometricGraph& g, const Point& t) {
    if (t.dim() != g.dim()) throw DataError("dimension mismatch");
    std::vector<Point> moved;
    moved.reserve(g.vertex_count());
    for (const Point& p : g.vertices()) {
        std::vector<double> c(p.coords().begin(), p.coords().end());
        for (std::size_t k = 0; k < c.size(); ++k) c[k] += t[k];
        moved.emplace_back(std::move(c));
    }
    return {g.dim(), std::move(moved), g.edges()};
}

// Uniform scaling about the origin.
inline GeometricGraph scale(const GeometricGraph& g, double s) {
    std::vector<Point> moved;
    moved.reserve(g.vertex_count());
    for (const Point& p : g.vertices()) {
        std::vector<double> c(p.coords().begin(), p.coords().end());
        for (double& x : c) x *= s;
        moved.emplace_back(std::move(c));
    }
    return {g.dim(), std::move(moved), g.edges()};
}

// Uniformly random vector in the closed ball of radius r in R^dim.
inline Point random_in_ball(std::size_t dim, double r, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> dir(dim);
    double len = 0.0;
    do {
        len = 0.0;
        for (double& x : dir) {
            x = gauss(rng);
            len += x * x;
        }
        len = std::sqrt(len);
    } while (len == 0.0);
    const double radius = r * std::pow(unit(rng), 1.0 / static_cast<double>(dim));
    for (double& x : dir) x = x / len * radius;
    return Point(std::move(dir));
}

// Random vector of exact norm r.
inline Point random_on_sphere(std::size_t dim, double r, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> dir(dim);
    double len = 0.0;
    do {
        len = 0.0;
        for (double& x : dir) {
            x = gauss(rng);
            len += x * x;
        }
        len = std::sqrt(len);
    } while (len == 0.0);
    for (double& x : dir) x = x / len * r;
    return Point(std::move(dir));
}

// Displaces every vertex independently by a uniform vector of norm <= delta.
inline GeometricGraph perturb(const GeometricGraph& g, double delta, std::uint64_t seed) {
    if (!(delta >= 0.0)) throw DataError("perturbation radius must be non-negative");
    if (delta == 0.0) return g;
    std::mt19937_64 rng(seed);
    std::vector<Point> moved;
    moved.reserve(g.vertex_count());
    for (const Point& p : g.vertices()) {
        const Point off = random_in_ball(g.dim(), delta, rng);
        std::vector<double> c(p.coords().begin(), p.coords().end());
        for (std::size_t k = 0; k < c.size(); ++k) c[k] += off[k];
        moved.emplace_back(std::move(c));
    }
    return {g.dim(), std::move(moved), g.edges()};
}

// Random graph with `n` vertices uniform in [lo, hi]^dim and each vertex pair
// joined with probability edge_prob.
inline GeometricGraph random_graph(std::size_t n, std::size_t dim, double edge_prob, std::mt19937_64& rng,
                                   double lo = 0.0, double hi = 10.0) {
    std::uniform_real_distribution<double> coord(lo, hi);
    std::bernoulli_distribution coin(edge_prob);
    std::vector<Point> verts;
    verts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> c(dim);
        for (double& x : c) x = coord(rng);
        verts.emplace_back(std::move(c));
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng)) edges.emplace_back(i, j);
    return {dim, std::move(verts), std::move(edges)};
}

}  // namespace gmd
