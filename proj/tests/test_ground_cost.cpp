#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gmd/ground_cost.hpp"
#include "gmd/io.hpp"
#include "oracles.hpp"

using namespace gmd;

namespace {

GeometricGraph fixture(const std::string& name) { return load_graph(std::string(GMD_DATA_DIR) + "/fixtures/" + name); }

}  // namespace

TEST(GroundCost, Fig3CoincidingRowsCostNothing) {
    const auto d = ground_cost_matrix(fixture("fig3_G.json"), fixture("fig3_H.json"), CostParams(1, 1));
    // u1 -> v2 in 1-based naming.
    EXPECT_NEAR(d(0, 1), 0.0, 1e-12);
    EXPECT_EQ(d(d.m(), d.n()), 0.0);
}

TEST(GroundCost, Fig1EntryAndShape) {
    const auto d = ground_cost_matrix(fixture("fig1_G.json"), fixture("fig1_H.json"), CostParams(1, 1));
    ASSERT_EQ(d.entries().rows(), 4u);
    ASSERT_EQ(d.entries().cols(), 3u);
    EXPECT_DOUBLE_EQ(d(1, 1), 2.0);
    EXPECT_EQ(d(3, 2), 0.0);
}

TEST(GroundCost, MatchesIndependentEvaluation) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const auto rg = oracle::random_raw(rng, 6);
        const auto rh = oracle::random_raw(rng, 6);
        const double cv = 0.5 + trial % 5, ce = 0.25 + trial % 3;
        const auto d = ground_cost_matrix(oracle::to_graph(rg, 2), oracle::to_graph(rh, 2), CostParams(cv, ce));
        const auto ref = oracle::ground(rg, rh, cv, ce);
        for (std::size_t i = 0; i <= rg.v.size(); ++i)
            for (std::size_t j = 0; j <= rh.v.size(); ++j) EXPECT_NEAR(d(i, j), ref[i][j], 1e-9);
    }
}

TEST(GroundCost, DegenerateEmptyGraphs) {
    const GeometricGraph empty(1, {});
    const auto h = fixture("fig1_H.json");
    const auto d = ground_cost_matrix(empty, h, CostParams(1, 1));
    EXPECT_EQ(d.m(), 0u);
    ASSERT_EQ(d.entries().rows(), 1u);
    ASSERT_EQ(d.entries().cols(), 3u);
    EXPECT_EQ(d(0, 0), 4.0);
    EXPECT_EQ(d(0, 1), 4.0);
    EXPECT_EQ(d(0, 2), 0.0);

    const auto both = ground_cost_matrix(empty, empty, CostParams(1, 1));
    EXPECT_EQ(both.entries().rows(), 1u);
    EXPECT_EQ(both(0, 0), 0.0);
}

TEST(GroundCost, DimensionMismatch) {
    EXPECT_THROW(ground_cost_matrix(fixture("fig1_G.json"), fixture("fig2_G.json"), CostParams(1, 1)), DataError);
}

TEST(DeletionCost, Examples) {
    EXPECT_EQ(deletion_cost({0, 0, 0}, CostParams(1, 1)), 0.0);
    EXPECT_NEAR(deletion_cost({0, 0, 0, 2, std::sqrt(2.0)}, CostParams(1, 1)), 2 + std::sqrt(2.0), 1e-12);
    EXPECT_EQ(deletion_cost({3, 0, 1}, CostParams(1, 2)), 8.0);
}

TEST(GroundCost, TransposeScaleTranslateProperties) {
    std::mt19937_64 rng(3);
    const CostParams params(4.5, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = random_graph(trial % 7, 2, 0.4, rng);
        const auto h = random_graph((trial * 3) % 7, 2, 0.4, rng);
        const auto d = ground_cost_matrix(g, h, params);
        const auto dt = ground_cost_matrix(h, g, params);
        EXPECT_EQ(d.entries(), dt.entries().transposed());

        const double s = 2.5;
        const auto ds = ground_cost_matrix(scale(g, s), scale(h, s), params);
        const Point t{3.25, -7.5};
        const auto dtr = ground_cost_matrix(translate(g, t), translate(h, t), params);
        for (std::size_t i = 0; i <= d.m(); ++i) {
            for (std::size_t j = 0; j <= d.n(); ++j) {
                EXPECT_NEAR(ds(i, j), s * d(i, j), 1e-9 * std::max(1.0, d(i, j)));
                EXPECT_NEAR(dtr(i, j), d(i, j), 1e-9);
                EXPECT_GE(d(i, j), 0.0);
                if (i < d.m() && j < d.n()) {
                    EXPECT_GE(d(i, j), params.vertex() * distance(g.vertex(i), h.vertex(j)));
                }
            }
        }
    }
}

TEST(GroundCost, CsvDumpHasHeader) {
    const CostParams params(1, 1);
    const auto d = ground_cost_matrix(fixture("fig1_G.json"), fixture("fig1_H.json"), params);
    std::ostringstream os;
    write_csv(os, d, params);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "m,n,c_v,c_e");
    std::getline(is, line);
    EXPECT_EQ(line, "3,2,1,1");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    EXPECT_EQ(rows, 4);
}
