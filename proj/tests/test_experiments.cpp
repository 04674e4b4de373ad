#include <gtest/gtest.h>

#include <atomic>
#include <sstream>

#include "gmd/experiments.hpp"
#include "letter_fixture.hpp"

using namespace gmd;

namespace {

PrototypeSet prototypes() { return load_prototypes(std::string(GMD_DATA_DIR) + "/prototypes"); }

std::vector<LetterRecord> jittered(const PrototypeSet& protos, double delta, int copies, std::uint64_t seed) {
    std::vector<LetterRecord> out;
    for (std::size_t k = 0; k < protos.size(); ++k) {
        for (int c = 0; c < copies; ++c) {
            LetterRecord r;
            r.graph = perturb(protos[k], delta, seed + 100 * k + c);
            r.label = kLetters[k];
            r.source_id = std::string(1, kLetters[k]) + std::to_string(c);
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace

TEST(ParallelFor, CoversEveryIndexAndRethrows) {
    std::vector<int> hit(1000, 0);
    parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
    EXPECT_EQ(std::count(hit.begin(), hit.end(), 1), 1000);
    std::atomic<int> calls{0};
    parallel_for(0, 3, [&](std::size_t) { ++calls; });
    EXPECT_EQ(calls.load(), 0);
    EXPECT_THROW(parallel_for(10, 3,
                              [](std::size_t i) {
                                  if (i == 7) throw DataError("boom");
                              }),
                 DataError);
}

TEST(Retrieval, PrototypesRetrieveThemselves) {
    const auto protos = prototypes();
    std::vector<LetterRecord> tests = jittered(protos, 0.0, 1, 0);
    const auto r = classify_topk(tests, protos, CostParams(4.5, 1), {1, 15}, 2);
    EXPECT_EQ(r.total, 15u);
    EXPECT_EQ(r.hits.at(1), 15u);
    EXPECT_DOUBLE_EQ(r.accuracy.at(15), 1.0);
    for (std::size_t k = 0; k < 15; ++k) EXPECT_EQ(r.confusion(k, k), 1u);
}

TEST(Retrieval, RankingPutsZeroDistanceFirst) {
    const auto protos = prototypes();
    const auto order = rank_prototypes(protos[letter_index('K')], protos, CostParams(4.5, 1));
    EXPECT_EQ(order[0], letter_index('K'));
    std::vector<std::size_t> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < 15; ++k) EXPECT_EQ(sorted[k], k);
}

TEST(Retrieval, AccuracyIsMonotoneInK) {
    const auto protos = prototypes();
    const auto tests = jittered(protos, 0.3, 3, 7);
    const auto r = classify_topk(tests, protos, CostParams(4.5, 1), {5, 1, 3, 3}, 2);
    EXPECT_EQ(r.ks, (std::vector<int>{1, 3, 5}));
    EXPECT_LE(r.accuracy.at(1), r.accuracy.at(3));
    EXPECT_LE(r.accuracy.at(3), r.accuracy.at(5));
    std::size_t diag = 0, all = 0;
    for (std::size_t i = 0; i < 15; ++i)
        for (std::size_t j = 0; j < 15; ++j) {
            all += r.confusion(i, j);
            if (i == j) diag += r.confusion(i, j);
        }
    EXPECT_EQ(all, r.total);
    EXPECT_EQ(diag, r.hits.at(1));
}

TEST(Retrieval, SmallJitterKeepsLetters) {
    const auto protos = prototypes();
    const auto r = classify_topk(jittered(protos, 0.05, 2, 11), protos, CostParams(4.5, 1), {1}, 1);
    EXPECT_GE(r.accuracy.at(1), 0.9);
}

TEST(Retrieval, ThreadCountDoesNotChangeResults) {
    const auto protos = prototypes();
    const auto tests = jittered(protos, 0.4, 2, 3);
    const auto a = classify_topk(tests, protos, CostParams(4.5, 1), {1, 3}, 1);
    const auto b = classify_topk(tests, protos, CostParams(4.5, 1), {1, 3}, 4);
    EXPECT_EQ(a.hits, b.hits);
    EXPECT_EQ(a.confusion, b.confusion);
    std::ostringstream x, y;
    write_retrieval_csv(x, {a});
    write_retrieval_csv(y, {b});
    EXPECT_EQ(x.str(), y.str());
}

TEST(Retrieval, RejectsBadK) {
    const auto protos = prototypes();
    EXPECT_THROW(classify_topk(jittered(protos, 0, 1, 0), protos, CostParams(1, 1), {0}), DataError);
}

TEST(Retrieval, CsvWriters) {
    RetrievalReport r;
    r.distortion = "LOW";
    r.ks = {1};
    r.hits[1] = 2;
    r.total = 3;
    r.accuracy[1] = 2.0 / 3.0;
    std::ostringstream os;
    write_retrieval_csv(os, {r});
    EXPECT_EQ(os.str(), "distortion,k,hits,total,accuracy\nLOW,1,2,3,0.666666667\n");
    std::ostringstream cf;
    write_confusion_csv(cf, r);
    const std::string text = cf.str();
    EXPECT_EQ(text.substr(0, 17), "true\\predicted,A,");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 16);
}

TEST(Retrieval, SyntheticDatasetPipeline) {
    const auto protos = prototypes();
    testdata::ScratchDir dir("pipeline");
    std::vector<std::pair<GeometricGraph, char>> low, high;
    for (std::size_t k = 0; k < 15; ++k) {
        low.emplace_back(perturb(protos[k], 0.05, 500 + k), kLetters[k]);
        high.emplace_back(perturb(protos[k], 0.8, 900 + k), kLetters[k]);
    }
    // A drawing with crossing edges gets planarized on load.
    low.emplace_back(GeometricGraph(2, {Point{0.6, 0.6}, Point{2.4, 2.4}, Point{0.6, 2.4}, Point{2.4, 0.6}},
                                    {Edge(0, 1), Edge(2, 3)}),
                     'X');
    testdata::write_level(dir.path() / "LOW", low, "L");
    testdata::write_level(dir.path() / "HIGH", high, "H");

    auto low_recs = load_letter_level(dir.path() / "LOW", Distortion::Low);
    EXPECT_TRUE(planarize_records(low_recs).empty());
    EXPECT_EQ(low_recs.back().graph.vertex_count(), 5u);
    const auto lr = classify_topk(low_recs, protos, CostParams(4.5, 1), {1, 3, 5});
    EXPECT_EQ(lr.distortion, "LOW");
    EXPECT_EQ(lr.total, 16u);
    EXPECT_GE(lr.accuracy.at(1), 0.9);

    auto high_recs = load_letter_level(dir.path() / "HIGH", Distortion::High);
    planarize_records(high_recs);
    const auto hr = classify_topk(high_recs, protos, CostParams(4.5, 1), {1, 3, 5});
    EXPECT_LE(hr.accuracy.at(1), hr.accuracy.at(5));
}

TEST(Retrieval, OverlappingRecordIsKeptAsDrawn) {
    std::vector<LetterRecord> recs(1);
    recs[0].graph = GeometricGraph(2, {Point{0, 0}, Point{2, 0}, Point{1, 0}, Point{3, 0}}, {Edge(0, 1), Edge(2, 3)});
    recs[0].source_id = "bad";
    const auto before = recs[0].graph;
    EXPECT_EQ(planarize_records(recs), (std::vector<std::string>{"bad"}));
    EXPECT_EQ(recs[0].graph, before);
}

TEST(Stability, GmdZeroTranslationAndUnitSquare) {
    const GeometricGraph sq(2, {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}},
                            {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3)});
    const auto zero = stability_trial_gmd(sq, Point{0, 0}, CostParams(1, 1));
    EXPECT_EQ(zero.distance, 0.0);
    EXPECT_FALSE(zero.violated);
    const auto e = stability_trial_gmd(sq, Point{3, 4}, CostParams(1, 1));
    EXPECT_DOUBLE_EQ(e.bound, 20.0);
    EXPECT_LE(e.distance, 20.0 + 1e-9);
}

TEST(Stability, HarnessesReportNoViolations) {
    const CostParams p(4.5, 1);
    const auto g = run_gmd_stability(100, 1, p);
    EXPECT_EQ(g.trials, 100u);
    EXPECT_EQ(g.violations, 0u);
    EXPECT_LE(g.max_ratio, 1.0 + 1e-9);

    const auto t = run_ggd_stability(40, 2, p, Move::Translation);
    EXPECT_EQ(t.violations, 0u);
    const auto j = run_ggd_stability(40, 3, p, Move::Jitter);
    EXPECT_EQ(j.violations, 0u);
    EXPECT_EQ(j.kind, BoundKind::GgdCorrected);

    std::ostringstream os;
    write_stability_csv(os, {g, t, j});
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "bound,trials,violations,literal_violations,max_ratio");
}

TEST(Stability, GgdTrialLimits) {
    std::mt19937_64 rng(4);
    const auto big = random_graph(7, 2, 0.3, rng);
    EXPECT_THROW(stability_trial_ggd(big, 0.1, 1, CostParams(1, 1)), SizeLimitError);
    const auto g = random_graph(4, 2, 0.5, rng);
    EXPECT_THROW(stability_trial_ggd(g, -0.1, 1, CostParams(1, 1)), DataError);
    EXPECT_EQ(stability_trial_ggd(g, 0.0, 1, CostParams(1, 1)).distance, 0.0);
}

TEST(Triangle, ProbeCountsTriples) {
    const auto r = triangle_inequality_trials(30, 5, CostParams(4.5, 1));
    EXPECT_EQ(r.triples, 30u);
    EXPECT_LE(r.violations, r.triples);
    EXPECT_GE(r.max_excess, 0.0);
}

TEST(Bench, RowsPerSizeAndCsv) {
    const auto rows = scaling_benchmark({5, 10}, 3, 1, CostParams(4.5, 1));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].n, 10u);
    EXPECT_GT(rows[1].median_seconds, 0.0);
    std::ostringstream os;
    write_bench_csv(os, rows);
    EXPECT_EQ(os.str().substr(0, 17), "n,median_seconds\n");
    EXPECT_DOUBLE_EQ(median({3, 1, 2}), 2.0);
    EXPECT_DOUBLE_EQ(median({4, 1, 2, 3}), 2.5);
}

// Jittered copies of L and T, kept only while the numeric margin holds: each
// copy must be strictly closer to its own prototype than to every other one.
TEST(Retrieval, TwoLetterToySetWithVerifiedMargin) {
    const auto protos = prototypes();
    const CostParams p(4.5, 1);
    const double separation = gmd_value(protos[letter_index('L')], protos[letter_index('T')], p);
    const double delta = 0.25 * separation / (p.vertex() * 4);
    std::vector<LetterRecord> tests;
    for (char letter : {'L', 'T'}) {
        for (int c = 0; c < 5; ++c) {
            LetterRecord r;
            r.graph = perturb(protos[letter_index(letter)], delta, 40 + c);
            r.label = letter;
            r.source_id = std::string(1, letter) + std::to_string(c);
            const double own = gmd_value(r.graph, protos[letter_index(letter)], p);
            for (std::size_t k = 0; k < 15; ++k) {
                if (kLetters[k] != letter) {
                    ASSERT_LT(own, gmd_value(r.graph, protos[k], p)) << r.source_id;
                }
            }
            tests.push_back(std::move(r));
        }
    }
    EXPECT_DOUBLE_EQ(classify_topk(tests, protos, p, {1}).accuracy.at(1), 1.0);
}
