#include <cmath>

#include <gtest/gtest.h>

#include <delone/error.hpp>
#include <delone/generators.hpp>
#include <delone/patch.hpp>
#include <delone/pattern.hpp>
#include <delone/region.hpp>

#include "oracles.hpp"

using namespace delone;

namespace {

DelonePatch z_patch(double lo, double hi) { return generate(integer_lattice_spec(1, Region::interval(lo, hi))); }

// Strip decomposition of a dilated a x b rectangle.
double dilated_box_area(double a, double b, double h) { return a * b + 2.0 * h * (a + b) + M_PI * h * h; }

}  // namespace

TEST(Region, ErodeInterval) {
    const Region q = erode(Region::interval(0, 10), 2);
    EXPECT_DOUBLE_EQ(q.lo(), 2.0);
    EXPECT_DOUBLE_EQ(q.hi(), 8.0);
    EXPECT_DOUBLE_EQ(q.measure(), 6.0);
}

TEST(Region, ErodeBallToPoint) {
    const Region q = erode(Region::ball(2, {0, 0}, 5), 5);
    EXPECT_FALSE(q.is_empty());
    EXPECT_NEAR(q.measure(), 0.0, 1e-12);
    EXPECT_TRUE(q.contains({0, 0}));
    EXPECT_FALSE(q.contains({1e-3, 0}));
}

TEST(Region, ErodeUnitSquare) {
    const Region q = erode(Region::box(2, {0, 0}, {1, 1}), 0.25);
    EXPECT_NEAR(q.measure(), 0.25, 1e-12);
}

TEST(Region, ErodeTooFarIsEmpty) {
    EXPECT_TRUE(erode(Region::interval(0, 1), 0.75).is_empty());
    EXPECT_TRUE(erode(Region::box(2, {0, 0}, {1, 2}), 0.6).is_empty());
}

TEST(Region, DilateUnitSquareSteiner) {
    EXPECT_NEAR(dilate(Region::box(2, {0, 0}, {1, 1}), 1).measure(), dilated_box_area(1, 1, 1), 1e-12);
    EXPECT_NEAR(dilate(Region::box(2, {0, 0}, {1, 1}), 1).measure(), 5.0 + M_PI, 1e-12);
}

TEST(Region, DilateInterval) { EXPECT_DOUBLE_EQ(dilate(Region::interval(-1, 3), 0.5).measure(), 5.0); }

TEST(Region, DilateBallIsBall) {
    const Region q = dilate(Region::ball(2, {1, 1}, 2), 1);
    EXPECT_NEAR(q.measure(), M_PI * 9.0, 1e-12);
    EXPECT_TRUE(q.contains({4, 1}));
    EXPECT_FALSE(q.contains({4.01, 1}));
}

TEST(Region, BoundaryRatioInterval) {
    for (double n : {4.0, 10.0, 100.0}) EXPECT_NEAR(boundary_ratio(Region::interval(0, n), 1), 4.0 / n, 1e-12);
}

TEST(Region, BoundaryRatioBallEqualsTwoToTheD) {
    for (double s : {0.5, 2.0, 7.0}) {
        EXPECT_NEAR(boundary_ratio(Region::interval(-s, s), s), 2.0, 1e-12);
        EXPECT_NEAR(boundary_ratio(Region::ball(2, {0, 0}, s), s), 4.0, 1e-12);
    }
}

TEST(Region, BoundaryRatioSquareStripOracle) {
    const double l = 100, h = 1;
    const double outer = dilated_box_area(l, l, h), inner = (l - 2 * h) * (l - 2 * h);
    EXPECT_NEAR(boundary_ratio(Region::box(2, {0, 0}, {l, l}), h), (outer - inner) / (l * l), 1e-12);
    EXPECT_NEAR(boundary_ratio(Region::box(2, {0, 0}, {l, l}), h), 0.0799141592653589, 1e-12);
}

TEST(Region, BoundaryRatioDegenerateThrows) {
    EXPECT_THROW(boundary_ratio(Region::interval(1, 1), 1), InvalidArgument);
}

TEST(Region, PolygonRejectsClockwise) {
    EXPECT_THROW(Region::polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), InvalidArgument);
    EXPECT_NO_THROW(Region::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
}

TEST(Region, PolygonMeasureAndContains) {
    const Region t = Region::polygon({{0, 0}, {2, 0}, {0, 2}});
    EXPECT_NEAR(t.measure(), 2.0, 1e-12);
    EXPECT_TRUE(t.contains({1, 1}));
    EXPECT_FALSE(t.contains({1.1, 1}));
    EXPECT_TRUE(t.interior_contains({0.5, 0.5}));
    EXPECT_FALSE(t.interior_contains({1, 0}));
}

TEST(Region, ContainsRegion) {
    const Region big = Region::box(2, {0, 0}, {4, 4});
    EXPECT_TRUE(contains_region(big, Region::ball(2, {2, 2}, 2)));
    EXPECT_FALSE(contains_region(big, Region::ball(2, {2, 2}, 2.1)));
    EXPECT_TRUE(contains_region(Region::interval(0, 10), Region::interval(2, 3)));
}

TEST(Region, IntersectionMeasure) {
    EXPECT_NEAR(intersection_measure(Region::box(2, {0, 0}, {2, 2}), Region::box(2, {1, 1}, {3, 3})), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(intersection_measure(Region::interval(0, 2), Region::interval(1.5, 4)), 0.5);
}

TEST(Region, CompositeMeasure) {
    const Region c = Region::composite(Region::box(2, {0, 0}, {4, 4}), {Region::box(2, {1, 1}, {2, 2})});
    EXPECT_NEAR(c.measure(), 15.0, 1e-12);
    EXPECT_TRUE(c.contains({0.5, 0.5}));
    EXPECT_FALSE(c.contains({1.5, 1.5}));
    EXPECT_TRUE(c.contains({1, 1.5}));
}

TEST(Region, TranslatedKeepsMeasure) {
    const Region q = Region::rounded(Region::box(2, {0, 0}, {1, 2}), 0.5).translated({3, -1});
    EXPECT_NEAR(q.measure(), dilated_box_area(1, 2, 0.5), 1e-12);
    EXPECT_TRUE(q.contains({3.5, 0}));
}

TEST(Patch, RestrictSelectsClosedRegion) {
    const auto w = z_patch(-10, 10);
    const Pattern p = restrict(w, Region::interval(0, 3));
    ASSERT_EQ(p.points.size(), 4u);
    for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(p.points[static_cast<std::size_t>(i)].x, i);
}

TEST(Patch, RestrictOutsideWindowThrows) {
    const auto w = z_patch(-10, 10);
    EXPECT_THROW(restrict(w, Region::interval(5, 11)), WindowExceeded);
}

TEST(Patch, VerifyDeloneLattice) { EXPECT_TRUE(verify_delone(z_patch(-10, 10)).empty()); }

TEST(Patch, VerifyDeloneDuplicatedPoint) {
    std::vector<Vec> pts;
    for (int i = 0; i <= 10; ++i) pts.push_back({double(i), 0});
    pts.push_back({3, 0});
    const DelonePatch w(1, pts, Region::interval(0, 10), 0.5, 0.5);
    const auto v = verify_delone(w);
    ASSERT_FALSE(v.empty());
    bool separation = false;
    for (const auto& x : v)
        if (x.kind == DeloneViolation::Kind::separation && x.a.x == 3 && x.b.x == 3) separation = true;
    EXPECT_TRUE(separation);
}

TEST(Patch, VerifyDeloneCoveringHole) {
    std::vector<Vec> pts;
    for (int i = 0; i <= 20; ++i)
        if (i < 8 || i > 11) pts.push_back({double(i), 0});
    const DelonePatch w(1, pts, Region::interval(0, 20), 0.5, 0.5);
    bool covering = false;
    for (const auto& x : verify_delone(w)) covering |= x.kind == DeloneViolation::Kind::covering;
    EXPECT_TRUE(covering);
}

TEST(Patch, VerifyDeloneFibonacci) {
    const double phi = oracle::golden();
    const auto w = generate(fibonacci_substitution_spec(Region::interval(0, 200), 14));
    EXPECT_NEAR(w.r(), 1.0 / (2.0 * phi), 1e-12);
    EXPECT_NEAR(w.R(), 0.5, 1e-12);
    EXPECT_TRUE(verify_delone(w).empty());
}

TEST(Pattern, CanonicalizeAnchorsAtLexmin) {
    const Pattern p = make_pattern({{5, 0}, {6, 0}, {8, 0}}, Region::interval(4.5, 8.5));
    const PatternClass c = canonicalize(p);
    ASSERT_EQ(c.canonical().points.size(), 3u);
    EXPECT_DOUBLE_EQ(c.canonical().points[0].x, 0.0);
    EXPECT_DOUBLE_EQ(c.canonical().points[1].x, 1.0);
    EXPECT_DOUBLE_EQ(c.canonical().points[2].x, 3.0);
    EXPECT_DOUBLE_EQ(c.canonical().support.lo(), -0.5);
    EXPECT_DOUBLE_EQ(c.canonical().support.hi(), 3.5);
}

TEST(Pattern, SupportMattersForEquality) {
    const Pattern a = make_pattern({{0, 0}}, Region::interval(-0.4, 0.4));
    const Pattern b = make_pattern({{0, 0}}, Region::interval(-0.4, 0.5));
    EXPECT_FALSE(canonicalize(a) == canonicalize(b));
    EXPECT_TRUE(canonicalize(a) == canonicalize(translated(a, {7.25, 0})));
}

TEST(Pattern, ColorsMatterForEquality) {
    const Pattern a = make_pattern({{0, 0}, {1, 0}}, Region::interval(-0.5, 1.5), {0, 1});
    const Pattern b = make_pattern({{0, 0}, {1, 0}}, Region::interval(-0.5, 1.5), {1, 0});
    EXPECT_FALSE(canonicalize(a) == canonicalize(b));
}

TEST(Pattern, BallPatternDetection) {
    const auto w = z_patch(-10, 10);
    const PatternClass c = canonicalize(ball_pattern(w, {2, 0}, 1.5));
    EXPECT_TRUE(c.is_ball());
    EXPECT_DOUBLE_EQ(c.ball_radius(), 1.5);
    EXPECT_FALSE(canonicalize(restrict(w, Region::interval(0, 3))).is_ball());
}

TEST(Pattern, MakePatternRejectsOutsidePoints) {
    EXPECT_THROW(make_pattern({{2, 0}}, Region::interval(0, 1)), InvalidArgument);
}

TEST(Pattern, OccurrencesSinglePoint) {
    const auto w = z_patch(-10, 10);
    const PatternClass p = canonicalize(make_pattern({{0, 0}}, Region::interval(-0.4, 0.4)));
    const auto occ = occurrences(p, restrict(w, Region::interval(0, 10)));
    EXPECT_EQ(occ.count, 9u);
    EXPECT_DOUBLE_EQ(occ.translations.front().x, 1.0);
    EXPECT_DOUBLE_EQ(occ.translations.back().x, 9.0);
}

TEST(Pattern, OccurrencesPair) {
    const auto w = z_patch(-10, 10);
    const PatternClass p = canonicalize(make_pattern({{0, 0}, {1, 0}}, Region::interval(-0.2, 1.2)));
    const Pattern host = make_pattern({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}}, Region::interval(-0.2, 5.2));
    EXPECT_EQ(occurrences(p, host).count, 5u);
    (void)w;
}

TEST(Pattern, DigestStable) {
    const Pattern a = make_pattern({{0, 0}, {1, 0}}, Region::interval(-0.5, 1.5));
    EXPECT_EQ(canonicalize(a).digest(), canonicalize(translated(a, {3, 0})).digest());
    EXPECT_EQ(canonicalize(a).digest().size(), 16u);
}

TEST(PointIndex, BallAndBoxQueries) {
    std::vector<Vec> pts;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) pts.push_back({double(i), double(j)});
    const PointIndex idx(pts, 1.0);
    EXPECT_EQ(idx.in_ball({5, 5}, 1.0).size(), 5u);
    EXPECT_EQ(idx.in_ball({5, 5}, 1.5).size(), 9u);
    EXPECT_EQ(idx.in_box({2, 2}, {4, 3}).size(), 6u);
    EXPECT_EQ(idx.find({3, 4}, 1e-9), 34u);
    EXPECT_EQ(idx.find({3.5, 4}, 1e-9), idx.size());
}
