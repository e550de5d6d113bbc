#include <gtest/gtest.h>

#include "kzhol/dk_algebra.hpp"
#include "kzhol/pairline.hpp"
#include "kzhol/verifier.hpp"
#include "test_support.hpp"

using namespace kzhol;
using kzhol::fixtures::load_path;

TEST(PairLine, LineGeometryOfFigureEight) {
    const auto path = analyze(load_path("figure_eight"));
    const auto line = line_geometry(path, 0);
    const auto& c = path.crossings[0];
    EXPECT_DOUBLE_EQ(line.t_end, c.t);
    EXPECT_NEAR(line.slope, (c.s - 1.0) / c.t, 1e-15);
    EXPECT_EQ(line.breaks.front(), 0.0);
    EXPECT_EQ(line.breaks.back(), c.t);
    EXPECT_TRUE(std::is_sorted(line.breaks.begin(), line.breaks.end()));
    EXPECT_NEAR(std::abs(line.position - c.position), 0.0, 1e-12);
    EXPECT_EQ(line.sign, c.sign);
    EXPECT_THROW(line_geometry(path, 1), Error);
}

TEST(PairLine, ProjectionOfCIsProductOfSubpathHolonomies) {
    EngineConfig cfg;
    for (const char* name : {"figure_eight", "double_kink", "winding", "three_punctures_kink"}) {
        const auto res = verify_projection_Cl(load_path(name), cfg);
        EXPECT_FALSE(res.empty()) << name;
        for (double r : res) EXPECT_LT(r, 1e-8) << name;
    }
}

TEST(PairLine, CIsGrouplike) {
    EngineConfig cfg;
    const auto path = analyze(load_path("double_kink"));
    const auto alg = DKAlgebra::with_two_moving_points(2);
    for (std::size_t l = 0; l < path.crossings.size(); ++l) {
        const auto C = compute_Cl(path, l, alg, cfg);
        EXPECT_LT(grouplike_defect(C), 1e-8);
        const auto F = crossing_factor(C, alg, path.crossings[l].sign);
        EXPECT_LT(grouplike_defect(F), 1e-8);
    }
}

TEST(PairLine, CStableUnderRefinement) {
    EngineConfig cfg;
    const auto path = analyze(load_path("figure_eight"));
    const auto alg = DKAlgebra::with_two_moving_points(2);
    const auto C = compute_Cl(path, 0, alg, cfg);
    auto fine = cfg;
    fine.quad_order *= 2;
    fine.eval_fraction /= 2;
    EXPECT_LT((compute_Cl(path, 0, alg, fine) - C).max_abs(), 1e-10);
}
