#pragma once

// Experiment harnesses: top-k prototype retrieval on LETTER graphs, stability
// trials for GMD and GGD, the triangle-inequality probe, and the scaling
// benchmark. All report writers emit CSV.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gmd/distance.hpp"
#include "gmd/error.hpp"
#include "gmd/geometry.hpp"
#include "gmd/ggd.hpp"
#include "gmd/io.hpp"
#include "gmd/planarize.hpp"

namespace gmd {

// Runs body(i) for i in [0, count) on `jobs` threads. Results must be written
// to per-index slots so the outcome does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t count, std::size_t jobs, Body&& body) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, std::max<std::size_t>(count, 1));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    pool.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Retrieval

struct RetrievalReport {
    std::string distortion;
    std::vector<int> ks;
    std::map<int, std::size_t> hits;
    std::map<int, double> accuracy;
    std::size_t total = 0;
    // Top-1 confusion counts; row = true letter, column = predicted letter,
    // both indexed like kLetters.
    Matrix<std::size_t> confusion{15, 15, 0};
    double c_v = 0.0;
    double c_e = 0.0;
    double runtime_seconds = 0.0;
};

// Prototype letter indices ordered by increasing GMD to `test`; equal
// distances keep alphabetical order.
inline std::array<std::size_t, 15> rank_prototypes(const GeometricGraph& test, const PrototypeSet& prototypes,
                                                   const CostParams& params) {
    std::array<double, 15> dist{};
    for (std::size_t k = 0; k < 15; ++k) dist[k] = gmd_value(test, prototypes[k], params);
    std::array<std::size_t, 15> order{};
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
    return order;
}

inline RetrievalReport classify_topk(const std::vector<LetterRecord>& tests, const PrototypeSet& prototypes,
                                     const CostParams& params, std::vector<int> ks, std::size_t jobs = 0) {
    for (const auto& p : prototypes)
        if (p.dim() != 2) throw DataError("prototype graphs must be 2D");
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (int k : ks)
        if (k < 1) throw DataError("k must be at least 1");

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::size_t> rank(tests.size());
    std::vector<std::size_t> predicted(tests.size());
    parallel_for(tests.size(), jobs, [&](std::size_t i) {
        const auto order = rank_prototypes(tests[i].graph, prototypes, params);
        const std::size_t truth = letter_index(tests[i].label);
        rank[i] = static_cast<std::size_t>(std::find(order.begin(), order.end(), truth) - order.begin());
        predicted[i] = order[0];
    });

    RetrievalReport r;
    r.distortion = tests.empty() ? std::string{} : to_string(tests.front().distortion);
    r.ks = ks;
    r.total = tests.size();
    r.c_v = params.vertex();
    r.c_e = params.edge();

    // Ordered reduction by source id.
    std::vector<std::size_t> by_id(tests.size());
    std::iota(by_id.begin(), by_id.end(), 0);
    std::stable_sort(by_id.begin(), by_id.end(),
                     [&](std::size_t a, std::size_t b) { return tests[a].source_id < tests[b].source_id; });
    for (int k : ks) r.hits[k] = 0;
    for (std::size_t i : by_id) {
        for (int k : ks)
            if (rank[i] < static_cast<std::size_t>(k)) ++r.hits[k];
        ++r.confusion(letter_index(tests[i].label), predicted[i]);
    }
    for (int k : ks)
        r.accuracy[k] = r.total ? static_cast<double>(r.hits[k]) / static_cast<double>(r.total) : 0.0;
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

// Planarizes every record in place; records that cannot be planarized
// (collinear overlapping edges) are left as drawn. Returns their source ids.
inline std::vector<std::string> planarize_records(std::vector<LetterRecord>& records,
                                                  double eps = kDefaultEmbeddingEps, std::size_t jobs = 0) {
    std::vector<char> failed(records.size(), 0);
    parallel_for(records.size(), jobs, [&](std::size_t i) {
        try {
            records[i].graph = planarize(records[i].graph, eps);
        } catch (const DataError&) {
            failed[i] = 1;
        }
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < records.size(); ++i)
        if (failed[i]) out.push_back(records[i].source_id);
    return out;
}

inline void write_retrieval_csv(std::ostream& os, const std::vector<RetrievalReport>& reports) {
    os << "distortion,k,hits,total,accuracy\n";
    char buf[64];
    for (const auto& r : reports) {
        for (int k : r.ks) {
            std::snprintf(buf, sizeof buf, "%.9f", r.accuracy.at(k));
            os << r.distortion << ',' << k << ',' << r.hits.at(k) << ',' << r.total << ',' << buf << '\n';
        }
    }
}

inline void write_confusion_csv(std::ostream& os, const RetrievalReport& r) {
    os << "true\\predicted";
    for (char c : kLetters) os << ',' << c;
    os << '\n';
    for (std::size_t i = 0; i < 15; ++i) {
        os << kLetters[i];
        for (std::size_t j = 0; j < 15; ++j) os << ',' << r.confusion(i, j);
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// Stability

enum class BoundKind {
    GmdTranslation,    // gmd(G, G+t) <= C_V |V| |t|
    GgdLiteral,        // ggd(G, H) <= C_V |V| delta, H an isometric move of G
    GgdCorrected,      // ggd(G, H) <= C_V |V| delta + 2 C_E |E| delta, any delta-move
};

inline std::string to_string(BoundKind k) {
    switch (k) {
        case BoundKind::GmdTranslation: return "gmd_translation";
        case BoundKind::GgdLiteral: return "ggd_literal";
        case BoundKind::GgdCorrected: return "ggd_corrected";
    }
    return {};
}

inline constexpr double kBoundTolerance = 1e-9;

struct StabilityEntry {
    BoundKind kind;
    double distance = 0.0;
    double bound = 0.0;
    bool violated = false;
    // The literal C_V |V| delta bound, evaluated as evidence on every trial.
    double literal_bound = 0.0;
    bool literal_violated = false;
};

struct StabilityReport {
    BoundKind kind;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::size_t literal_violations = 0;
    double max_ratio = 0.0;  // max distance / bound over trials with bound > 0
};

inline StabilityEntry stability_trial_gmd(const GeometricGraph& g, const Point& t, const CostParams& params) {
    StabilityEntry e{BoundKind::GmdTranslation};
    e.distance = gmd_value(g, translate(g, t), params);
    e.bound = params.vertex() * static_cast<double>(g.vertex_count()) * t.norm();
    e.violated = e.distance > e.bound + kBoundTolerance;
    e.literal_bound = e.bound;
    e.literal_violated = e.violated;
    return e;
}

enum class Move { Translation, Jitter };

// Translation: H = G + t with |t| = delta drawn from `seed` (an isometry, so
// the literal bound applies). Jitter: H = perturb(G, delta, seed), checked
// against the corrected bound; the literal bound is recorded as evidence.
inline StabilityEntry stability_trial_ggd(const GeometricGraph& g, double delta, std::uint64_t seed,
                                          const CostParams& params, Move move = Move::Jitter) {
    if (g.vertex_count() > 6) throw SizeLimitError("GGD stability trials support at most 6 vertices");
    if (!(delta >= 0.0)) throw DataError("perturbation radius must be non-negative");
    GeometricGraph h;
    if (move == Move::Translation) {
        std::mt19937_64 rng(seed);
        h = translate(g, delta > 0.0 ? random_on_sphere(g.dim(), delta, rng) : Point::zero(g.dim()));
    } else {
        h = perturb(g, delta, seed);
    }
    const double dist = ggd_exact(g, h, params).value;
    const double vterm = params.vertex() * static_cast<double>(g.vertex_count()) * delta;
    const double eterm = 2.0 * params.edge() * static_cast<double>(g.edge_count()) * delta;

    StabilityEntry e{move == Move::Translation ? BoundKind::GgdLiteral : BoundKind::GgdCorrected};
    e.distance = dist;
    e.literal_bound = vterm;
    e.literal_violated = dist > vterm + kBoundTolerance;
    e.bound = move == Move::Translation ? vterm : vterm + eterm;
    e.violated = dist > e.bound + kBoundTolerance;
    return e;
}

inline StabilityReport summarize(BoundKind kind, const std::vector<StabilityEntry>& entries) {
    StabilityReport r{kind};
    for (const auto& e : entries) {
        ++r.trials;
        r.violations += e.violated;
        r.literal_violations += e.literal_violated;
        if (e.bound > 0.0) r.max_ratio = std::max(r.max_ratio, e.distance / e.bound);
    }
    return r;
}

// Random 2D graphs with 1..max_n vertices, coordinates in [0,10]^2, random
// translations of length in (0, 5].
inline StabilityReport run_gmd_stability(std::size_t trials, std::uint64_t seed, const CostParams& params,
                                         std::size_t max_n = 8) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(1, max_n);
    std::uniform_real_distribution<double> len(0.0, 5.0);
    std::vector<StabilityEntry> entries;
    for (std::size_t k = 0; k < trials; ++k) {
        const auto g = random_graph(size(rng), 2, 0.4, rng);
        const Point t = random_on_sphere(2, len(rng), rng);
        entries.push_back(stability_trial_gmd(g, t, params));
    }
    return summarize(BoundKind::GmdTranslation, entries);
}

inline StabilityReport run_ggd_stability(std::size_t trials, std::uint64_t seed, const CostParams& params,
                                         Move move, std::size_t max_n = 5) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(1, max_n);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    std::vector<StabilityEntry> entries;
    for (std::size_t k = 0; k < trials; ++k) {
        const auto g = random_graph(size(rng), 2, 0.5, rng);
        const double delta = radius(rng);
        entries.push_back(stability_trial_ggd(g, delta, rng(), params, move));
    }
    return summarize(move == Move::Translation ? BoundKind::GgdLiteral : BoundKind::GgdCorrected, entries);
}

inline void write_stability_csv(std::ostream& os, const std::vector<StabilityReport>& reports) {
    os << "bound,trials,violations,literal_violations,max_ratio\n";
    char buf[64];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf, "%.9f", r.max_ratio);
        os << to_string(r.kind) << ',' << r.trials << ',' << r.violations << ',' << r.literal_violations << ','
           << buf << '\n';
    }
}

// ---------------------------------------------------------------------------
// Triangle inequality probe (reported, not asserted)

struct TriangleReport {
    std::size_t triples = 0;
    std::size_t violations = 0;
    double max_excess = 0.0;  // max of gmd(a,c) - gmd(a,b) - gmd(b,c)
};

inline TriangleReport triangle_inequality_trials(std::size_t triples, std::uint64_t seed, const CostParams& params,
                                                 std::size_t max_n = 6) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(0, max_n);
    TriangleReport r;
    for (std::size_t k = 0; k < triples; ++k) {
        const auto a = random_graph(size(rng), 2, 0.4, rng);
        const auto b = random_graph(size(rng), 2, 0.4, rng);
        const auto c = random_graph(size(rng), 2, 0.4, rng);
        const double excess = gmd_value(a, c, params) - gmd_value(a, b, params) - gmd_value(b, c, params);
        ++r.triples;
        if (excess > kBoundTolerance) {
            ++r.violations;
            r.max_excess = std::max(r.max_excess, excess);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Scaling benchmark

struct BenchRow {
    std::size_t n = 0;
    double median_seconds = 0.0;
};

inline double median(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t mid = xs.size() / 2;
    return xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

// Median wall time of gmd() on random 2D graph pairs with n vertices each and
// expected degree about 3. Pairs are drawn up front from `seed`; trials run on
// `jobs` threads (1 gives the cleanest timings).
inline std::vector<BenchRow> scaling_benchmark(const std::vector<std::size_t>& sizes, std::size_t trials,
                                               std::uint64_t seed, const CostParams& params,
                                               std::size_t jobs = 1) {
    std::vector<BenchRow> out;
    std::mt19937_64 rng(seed);
    trials = std::max<std::size_t>(trials, 1);
    for (std::size_t n : sizes) {
        const double p = n > 1 ? std::min(1.0, 3.0 / static_cast<double>(n - 1)) : 0.0;
        std::vector<std::pair<GeometricGraph, GeometricGraph>> pairs;
        for (std::size_t k = 0; k < trials; ++k) {
            auto g = random_graph(n, 2, p, rng);
            auto h = random_graph(n, 2, p, rng);
            pairs.emplace_back(std::move(g), std::move(h));
        }
        std::vector<double> times(trials);
        parallel_for(trials, jobs, [&](std::size_t k) {
            const auto t0 = std::chrono::steady_clock::now();
            volatile double v = gmd_value(pairs[k].first, pairs[k].second, params);
            (void)v;
            times[k] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        });
        out.push_back({n, median(times)});
    }
    return out;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << "n,median_seconds\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.9f", r.median_seconds);
        os << r.n << ',' << buf << '\n';
    }
}

}  // namespace gmd
