#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gmd/error.hpp"
#include "gmd/geometry.hpp"
#include "gmd/segment.hpp"

namespace gmd {

// Turns a 2D straight-line drawing into a geometric graph by inserting a
// vertex at every interior crossing and splitting the edges there.
//
// - Original vertices keep their indices; new vertices are appended in the
//   order their first crossing is found (edge pairs in lexicographic order).
// - Crossing points within eps of an existing vertex reuse that vertex.
// - An endpoint lying inside another edge splits that edge at the endpoint.
// - Collinear overlapping edges are rejected with DataError.
//
// Output edges follow input edge order, each replaced by its chain of pieces.
inline GeometricGraph planarize(const GeometricGraph& g, double eps = kDefaultEmbeddingEps) {
    if (g.dim() != 2) throw DataError("planarize requires a 2D graph");
    require_valid_structure(g);

    std::vector<Point> verts = g.vertices();
    const auto& edges = g.edges();
    std::vector<std::vector<std::pair<double, std::size_t>>> splits(edges.size());

    auto pos = [&](std::size_t v) { return detail::as_vec2(verts[v]); };
    auto vertex_at = [&](Vec2 p) {
        for (std::size_t v = 0; v < verts.size(); ++v)
            if (norm(pos(v) - p) <= eps) return v;
        verts.push_back(Point{p.x, p.y});
        return verts.size() - 1;
    };

    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const Edge& e = edges[i];
            const Edge& f = edges[j];
            const auto c = classify_contact(pos(e.a), pos(e.b), pos(f.a), pos(f.b), eps);
            if (c.kind == ContactKind::CollinearOverlap)
                throw DataError("collinear overlapping edges " + std::to_string(i) + " and " + std::to_string(j) +
                                " near " + detail::format_point(c.point));
            const bool shared = e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b;
            if (shared) continue;
            if (c.kind == ContactKind::Crossing) {
                const std::size_t v = vertex_at(c.point);
                splits[i].emplace_back(c.t, v);
                splits[j].emplace_back(c.s, v);
            } else if (c.kind == ContactKind::Tee) {
                if (c.tee_owner == 0) splits[j].emplace_back(c.s, c.tee_endpoint == 0 ? e.a : e.b);
                else splits[i].emplace_back(c.t, c.tee_endpoint == 0 ? f.a : f.b);
            }
        }
    }

    std::vector<Edge> out;
    std::set<Edge> seen;
    auto emit = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        const Edge piece(a, b);
        if (seen.insert(piece).second) out.push_back(piece);
    };
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto& s = splits[i];
        std::sort(s.begin(), s.end());
        std::size_t last = edges[i].a;
        for (const auto& [t, v] : s) {
            emit(last, v);
            last = v;
        }
        emit(last, edges[i].b);
    }
    return {2, std::move(verts), std::move(out)};
}

}  // namespace gmd
