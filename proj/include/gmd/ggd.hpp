#pragma once

// Exact Geometric Graph Distance by exhaustive enumeration of inexact
// matchings. Exponential; only meant for graphs of up to 7 vertices, where it
// serves as ground truth.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "gmd/error.hpp"
#include "gmd/geometry.hpp"
#include "gmd/matrix.hpp"

namespace gmd {

inline constexpr std::size_t kGgdVertexLimit = 7;

// Inexact matching between G (m vertices) and H (n vertices). image[u] is the
// H vertex matched to u, or nullopt when u maps to the dummy vertex. Every H
// vertex not hit by image maps to the dummy vertex.
class InexactMatching {
public:
    InexactMatching() = default;
    InexactMatching(std::vector<std::optional<std::size_t>> image, std::size_t target_count)
        : image_(std::move(image)), target_count_(target_count) {}

    std::size_t source_count() const noexcept { return image_.size(); }
    std::size_t target_count() const noexcept { return target_count_; }
    const std::vector<std::optional<std::size_t>>& image() const noexcept { return image_; }

    std::size_t matched_count() const {
        std::size_t k = 0;
        for (const auto& x : image_) k += x.has_value();
        return k;
    }

    // Injective into [0, target_count)?
    bool valid() const {
        std::vector<char> hit(target_count_, 0);
        for (const auto& x : image_) {
            if (!x) continue;
            if (*x >= target_count_ || hit[*x]) return false;
            hit[*x] = 1;
        }
        return true;
    }

    std::vector<std::optional<std::size_t>> preimage() const {
        std::vector<std::optional<std::size_t>> pre(target_count_);
        for (std::size_t u = 0; u < image_.size(); ++u)
            if (image_[u]) pre.at(*image_[u]) = u;
        return pre;
    }

    // The matching as a relation: (u, image) for every u of G, then
    // (nullopt, v) for every unmatched v of H.
    std::vector<std::pair<std::optional<std::size_t>, std::optional<std::size_t>>> pairs() const {
        std::vector<std::pair<std::optional<std::size_t>, std::optional<std::size_t>>> out;
        for (std::size_t u = 0; u < image_.size(); ++u) out.emplace_back(u, image_[u]);
        const auto pre = preimage();
        for (std::size_t v = 0; v < pre.size(); ++v)
            if (!pre[v]) out.emplace_back(std::nullopt, v);
        return out;
    }

    InexactMatching inverse() const {
        return {preimage(), image_.size()};
    }

    friend bool operator==(const InexactMatching&, const InexactMatching&) = default;

private:
    std::vector<std::optional<std::size_t>> image_;
    std::size_t target_count_ = 0;
};

// sum_k C(m,k) C(n,k) k!
inline std::uint64_t matching_count(std::size_t m, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t k = 0; k <= std::min(m, n); ++k) {
        // C(m,k) * n!/(n-k)!
        std::uint64_t c = 1;
        for (std::size_t i = 0; i < k; ++i) c = c * (m - i) / (i + 1);
        std::uint64_t falling = 1;
        for (std::size_t i = 0; i < k; ++i) falling *= (n - i);
        total += c * falling;
    }
    return total;
}

// Visits every inexact matching exactly once: by number of matched pairs, then
// lexicographically by (matched G subset, images in G order).
template <typename Visit>
void for_each_matching(std::size_t m, std::size_t n, Visit&& visit) {
    if (m > kGgdVertexLimit || n > kGgdVertexLimit)
        throw SizeLimitError("matching enumeration supports at most 7 vertices per graph");
    std::vector<std::size_t> chosen;
    std::vector<char> used(n, 0);
    std::vector<std::optional<std::size_t>> image(m);

    for (std::size_t k = 0; k <= std::min(m, n); ++k) {
        // Assign images to chosen[0..k) in order, smallest free H index first.
        auto assign = [&](auto&& self, std::size_t pos) -> void {
            if (pos == k) {
                visit(InexactMatching(image, n));
                return;
            }
            for (std::size_t v = 0; v < n; ++v) {
                if (used[v]) continue;
                used[v] = 1;
                image[chosen[pos]] = v;
                self(self, pos + 1);
                image[chosen[pos]].reset();
                used[v] = 0;
            }
        };
        // k-subsets of G in lexicographic order.
        auto choose = [&](auto&& self, std::size_t start) -> void {
            if (chosen.size() == k) {
                assign(assign, 0);
                return;
            }
            for (std::size_t u = start; u + (k - chosen.size()) <= m; ++u) {
                chosen.push_back(u);
                self(self, u + 1);
                chosen.pop_back();
            }
        };
        choose(choose, 0);
    }
}

// Evaluates matching costs for a fixed pair of graphs; caches edge lengths.
class MatchingCostEvaluator {
public:
    MatchingCostEvaluator(const GeometricGraph& g, const GeometricGraph& h, const CostParams& params)
        : g_(g), h_(h), params_(params), g_len_(adjacency_lengths(g)), h_len_(adjacency_lengths(h)),
          g_adj_(g.vertex_count(), g.vertex_count(), 0), h_adj_(h.vertex_count(), h.vertex_count(), 0) {
        if (g.dim() != h.dim()) throw DataError("dimension mismatch");
        require_valid_structure(g);
        require_valid_structure(h);
        for (const Edge& e : g.edges()) g_adj_(e.a, e.b) = g_adj_(e.b, e.a) = 1;
        for (const Edge& e : h.edges()) h_adj_(e.a, e.b) = h_adj_(e.b, e.a) = 1;
    }

    double operator()(const InexactMatching& pi) const {
        if (pi.source_count() != g_.vertex_count() || pi.target_count() != h_.vertex_count() || !pi.valid())
            throw DataError("invalid matching for this graph pair");
        const auto& img = pi.image();
        const auto pre = pi.preimage();
        const double cv = params_.vertex();
        const double ce = params_.edge();

        double cost = 0.0;
        // Vertex translations.
        for (std::size_t u = 0; u < img.size(); ++u)
            if (img[u]) cost += cv * distance(g_.vertex(u), h_.vertex(*img[u]));
        // Edges of G: translated when the image pair is an edge of H, else deleted.
        for (const Edge& e : g_.edges()) {
            const double len = g_len_(e.a, e.b);
            const auto& a = img[e.a];
            const auto& b = img[e.b];
            if (a && b && h_adj_(*a, *b)) cost += ce * std::abs(len - h_len_(*a, *b));
            else cost += ce * len;
        }
        // Edges of H without a preimage edge are deleted.
        for (const Edge& f : h_.edges()) {
            const auto& a = pre[f.a];
            const auto& b = pre[f.b];
            if (!(a && b && g_adj_(*a, *b))) cost += ce * h_len_(f.a, f.b);
        }
        return cost;
    }

private:
    const GeometricGraph& g_;
    const GeometricGraph& h_;
    CostParams params_;
    Matrix<double> g_len_;
    Matrix<double> h_len_;
    Matrix<char> g_adj_;
    Matrix<char> h_adj_;
};

inline double matching_cost(const GeometricGraph& g, const GeometricGraph& h, const InexactMatching& pi,
                            const CostParams& params) {
    return MatchingCostEvaluator(g, h, params)(pi);
}

struct GgdResult {
    double value = 0.0;
    InexactMatching argmin;
};

// Minimum matching cost; the first minimum in enumeration order wins ties.
inline GgdResult ggd_exact(const GeometricGraph& g, const GeometricGraph& h, const CostParams& params) {
    if (g.vertex_count() > kGgdVertexLimit || h.vertex_count() > kGgdVertexLimit)
        throw SizeLimitError("exact GGD supports at most 7 vertices per graph (got " +
                             std::to_string(g.vertex_count()) + " and " + std::to_string(h.vertex_count()) +
                             ")");
    const MatchingCostEvaluator eval(g, h, params);
    GgdResult best{std::numeric_limits<double>::infinity(), {}};
    for_each_matching(g.vertex_count(), h.vertex_count(), [&](const InexactMatching& pi) {
        const double c = eval(pi);
        if (c < best.value) best = {c, pi};
    });
    return best;
}

}  // namespace gmd
