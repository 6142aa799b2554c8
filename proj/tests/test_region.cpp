#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bcnf/region.hpp"

using namespace bcnf;

TEST_CASE("reference slope pairs") {
    RegionClass r = classify(0.5, 0.8);
    CHECK(r.kind == RegionKind::Trivial);
    CHECK(r.reduction == Reduction::Identity);
    CHECK(r.theorem == TheoremTag::Persistence);

    r = classify(2.0, 0.5);
    CHECK(r.kind == RegionKind::SaddleNodeLike);
    CHECK(r.reduction == Reduction::Identity);
    CHECK(r.theorem == TheoremTag::SaddleNode);

    r = classify(-0.4, -2.0);
    CHECK(r.kind == RegionKind::PeriodDoublingLike);
    CHECK(r.reduction == Reduction::Identity);
    CHECK(r.theorem == TheoremTag::PeriodDoubling);

    r = classify(0.5, 2.0);
    CHECK(r.kind == RegionKind::SaddleNodeLike);
    CHECK(r.reduction == Reduction::FlipX);

    r = classify(-2.0, -0.4);
    CHECK(r.kind == RegionKind::PeriodDoublingLike);
    CHECK(r.reduction == Reduction::FlipX);

    CHECK(classify(3.0, -2.0).kind == RegionKind::OutOfScope);
}

TEST_CASE("inverse reductions are reported") {
    // the inverse has slopes (-0.4, -2)
    RegionClass r = classify(-2.5, -0.5);
    CHECK(r.kind == RegionKind::PeriodDoublingLike);
    CHECK(r.reduction == Reduction::InverseMap);
    CHECK_FALSE(r.warning.empty());

    r = classify(-0.5, -2.5);
    CHECK(r.kind == RegionKind::PeriodDoublingLike);
    CHECK(r.reduction == Reduction::FlipXAndInverse);
}

TEST_CASE("boundaries are out of scope") {
    for (auto [aL, aR] : {std::pair{1.0, 0.5}, {2.0, 1.0}, {2.0, -1.0}, {2.0, 0.0}, {0.0, 0.5},
                          {-0.5, -2.0}, {-1.0, -2.0}, {-0.4, -1.0}}) {
        INFO(aL, " ", aR);
        CHECK(classify(aL, aR).kind == RegionKind::OutOfScope);
    }
}

TEST_CASE("third-quadrant warning") {
    CHECK(classify(-0.5, -0.6).warning.empty());
    RegionClass r = classify(-1.5, -1.2);
    CHECK(r.kind == RegionKind::Trivial);
    CHECK_FALSE(r.warning.empty());
}

TEST_CASE("predicates are exclusive and the flip is coherent on a grid") {
    const int n = 400;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double aL = -3.0 + 6.0 * (i + 0.5) / n, aR = -3.0 + 6.0 * (j + 0.5) / n;
            int hits = is_trivial(aL, aR) + is_saddle_node(aL, aR) + is_period_doubling(aL, aR);
            CHECK(hits <= 1);
            RegionClass a = classify(aL, aR), b = classify(aR, aL);
            if (a.reduction == Reduction::FlipX) {
                CHECK(b.kind == a.kind);
                CHECK(b.reduction == Reduction::Identity);
            }
        }
}
