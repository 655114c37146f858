#include <algorithm>
#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include <delone/error.hpp>
#include <delone/ergodic.hpp>
#include <delone/generators.hpp>
#include <delone/spectral.hpp>

#include "oracles.hpp"

using namespace delone;

namespace {

DelonePatch integers(double lo, double hi) { return generate(integer_lattice_spec(1, Region::interval(lo, hi))); }

DelonePatch fibonacci(double len) { return generate(fibonacci_substitution_spec(Region::interval(0, len), 24)); }

// The 'a' tile: consecutive points at distance 1.
PatternClass a_tile() { return PatternClass::of(make_pattern({{0, 0}, {1, 0}}, Region::interval(0, 1))); }

PatternClass single_point() { return PatternClass::of(make_pattern({{0, 0}}, Region::interval(-0.25, 0.25))); }

}  // namespace

TEST(Frequency, IntegersOne) {
    const auto w = integers(-200, 200);
    const auto seq = VanHoveSequence::centered_boxes(1, {0, 0}, 25, 4);
    const auto f = frequency(single_point(), w, seq);
    ASSERT_EQ(f.per_scale.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(f.per_scale[k], 1.0, 1.0 / seq.regions[k].measure() + 1e-12);
    EXPECT_DOUBLE_EQ(f.estimate, 199.0 / 200.0);  // supports x +- 0.25 inside [-100, 100]: x = -99..99
}

TEST(Frequency, FibonacciATileAgainstWord) {
    const double len = 20000;
    const auto w = fibonacci(len + 10);
    const auto seq = VanHoveSequence::centered_boxes(1, {len / 2, 0}, len / 8, 4);
    const auto f = frequency(a_tile(), w, seq);
    // Oracle: 'a' letters whose interval lies in the last box.
    const std::string word = oracle::fibonacci_word(24);
    const auto pts = oracle::word_points(word, 1.0, 1.0 / oracle::golden());
    const Region& q = seq.regions.back();
    long brute = 0;
    for (std::size_t i = 0; i < word.size() && pts[i] < len + 5; ++i)
        if (word[i] == 'a' && pts[i] >= q.lo() - 1e-9 && pts[i] + 1 <= q.hi() + 1e-9) ++brute;
    EXPECT_EQ(static_cast<long>(f.counts.back()), brute);
    // Letter frequency 1/phi over the mean tile length.
    const double phi = oracle::golden();
    const double mean_length = 1.0 / phi + (1.0 - 1.0 / phi) / phi;
    EXPECT_NEAR(f.estimate, (1.0 / phi) / mean_length, 2e-3);
}

TEST(Frequency, DimerOnePerUnitArea) {
    const auto w = generate(dimer_lattice_spec(Region::box(2, {-20, -20}, {20, 20}), {0.2, 0}));
    const auto dimer = PatternClass::of(make_pattern({{0, 0}, {0.2, 0}}, Region::box(2, {-0.05, -0.05}, {0.25, 0.05})));
    const auto seq = VanHoveSequence::centered_boxes(2, {0, 0}, 8, 3);
    const auto f = frequency(dimer, w, seq);
    EXPECT_NEAR(f.estimate, 1.0, 4.0 / 32);
    // Dimer support [x - 0.05, x + 0.25] inside [-16, 16]: x in -15..15 in each direction.
    EXPECT_EQ(f.counts.back(), 31u * 31u);
}

TEST(Frequency, OccurrenceAveragesMatch) {
    const auto w = fibonacci(3000);
    const auto seq = VanHoveSequence::centered_boxes(1, {1500, 0}, 150, 4);
    for (const PatternClass& c : {a_tile(), single_point()}) {
        const auto f = frequency(c, w, seq);
        const auto avg = ergodic_average(occurrence_count_function(c, w.r()), w, seq);
        ASSERT_EQ(avg.averages.size(), f.per_scale.size());
        for (std::size_t k = 0; k < f.per_scale.size(); ++k)
            EXPECT_NEAR(avg.averages[k].scalar(), f.per_scale[k], 1e-12);
    }
}

TEST(Census, IntegersOneClass) {
    const auto census = enumerate_ball_classes(integers(0, 50), 1.5);
    ASSERT_EQ(census.size(), 1u);
    EXPECT_EQ(census[0].count, 47u);  // x = 2..48
    EXPECT_DOUBLE_EQ(census[0].first.x, 2.0);
}

TEST(Census, FibonacciAgainstBrute) {
    const auto w = fibonacci(800);
    const double s = 1.3;
    const auto census = enumerate_ball_classes(w, s);
    std::vector<double> xs;
    for (const Vec& p : w.points()) xs.push_back(p.x);
    const auto brute = oracle::census_1d(xs, s, w.window().lo(), w.window().hi());
    ASSERT_EQ(census.size(), brute.size());
    std::vector<long> a, b;
    for (const auto& c : census) a.push_back(static_cast<long>(c.count));
    for (const auto& [k, n] : brute) b.push_back(n);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
    for (std::size_t i = 1; i < census.size(); ++i) EXPECT_TRUE(census[i - 1].first.x < census[i].first.x);
}

TEST(Census, ColoredGridClasses) {
    const auto w = color_grid(generate(integer_lattice_spec(2, Region::box(2, {0, 0}, {12, 12}))), {{{1, 0}, {0, 1}}, 2});
    // The 0.4-ball holds its center only: one class per color.
    EXPECT_EQ(enumerate_ball_classes(w, 0.4).size(), 2u);
    // With the four neighbours: (even, even), (odd, even), (even, odd), (odd, odd).
    const auto c = enumerate_ball_classes(w, 1.1);
    ASSERT_EQ(c.size(), 4u);
    std::size_t total = 0;
    for (const auto& cc : c) total += cc.count;
    EXPECT_EQ(total, 9u * 9u);  // centers 2..10 in each direction
}

TEST(Approximant, VolumeIsExactlyOne) {
    for (double k : {1.0, 2.0, 4.0}) {
        const auto ap = cell_approximant(volume_function(), fibonacci(600), k);
        EXPECT_NEAR(ap.value.scalar(), 1.0, 1e-12) << "k " << k;
        double weight = 0;
        for (const auto& c : ap.classes) weight += c.frequency * c.representative.polytope.measure();
        EXPECT_NEAR(weight, 1.0, 1e-12);
    }
}

TEST(Approximant, PointCountApproachesDensity) {
    const auto w = fibonacci(2000);
    const double phi = oracle::golden();
    const double density = 1.0 / (1.0 / phi + (1.0 - 1.0 / phi) / phi);
    const auto ap = cell_approximant(point_count_function(1, w.r()), w, 4.0);
    EXPECT_NEAR(ap.value.scalar(), density, 0.02);
}

TEST(Approximant, SplitHolds) {
    const auto w = fibonacci(1500);
    for (const auto& f : {volume_function(), point_count_function(1, w.r())}) {
        const auto ap = cell_approximant(f, w, 3.0);
        const auto split = approximant_split(f, w, ap, Region::interval(200, 1300));
        EXPECT_TRUE(split.holds) << f.name;
        EXPECT_LE(split.lhs, split.d1 + split.d2 + 1e-12);
        EXPECT_LE(split.d1, split.d1_bound + 1e-12);
        EXPECT_GT(split.cells, 0u);
    }
}

TEST(Approximant, ColoringModes) {
    EXPECT_EQ(coloring_from_string("off"), ApproximantOptions::Coloring::off);
    EXPECT_EQ(coloring_from_string("auto"), ApproximantOptions::Coloring::automatic);
    EXPECT_THROW(coloring_from_string("sometimes"), InvalidArgument);
    const auto z = integers(0, 200);
    EXPECT_EQ(approximant_coloring(z, 5, {}), 1);
    EXPECT_EQ(approximant_coloring(z, 5, {ApproximantOptions::Coloring::automatic, 1}), 5);
    EXPECT_EQ(approximant_coloring(z, 5, {ApproximantOptions::Coloring::fixed, 3}), 3);
    EXPECT_THROW(approximant_coloring(fibonacci(200), 5, {ApproximantOptions::Coloring::automatic, 1}),
                 PreconditionError);
}

TEST(ErgodicAverage, VolumeConstant) {
    const auto avg = ergodic_average(volume_function(), fibonacci(1000),
                                     VanHoveSequence::centered_boxes(1, {500, 0}, 50, 4));
    for (const auto& a : avg.averages) EXPECT_DOUBLE_EQ(a.scalar(), 1.0);
    for (double c : avg.cauchy) EXPECT_DOUBLE_EQ(c, 0.0);
    EXPECT_DOUBLE_EQ(avg.limit.scalar(), 1.0);
}

TEST(ErgodicAverage, IdsOnIntegersCauchy) {
    const auto w = integers(-600, 600);
    const auto a = FiniteRangeOperator::adjacency(1.1);
    const auto avg = ergodic_average(f_a_function(a, 1, w.r()), w, VanHoveSequence::centered_boxes(1, {0, 0}, 64, 4));
    ASSERT_EQ(avg.cauchy.size(), 3u);
    for (std::size_t k = 1; k < 3; ++k) EXPECT_LT(avg.cauchy[k], avg.cauchy[k - 1]);
    // Sup norm: #points of Q_{R^A} over |Q|; erosion by 1 < R^A < 2 keeps L - 3 integers.
    ASSERT_GT(a.range(), 1.0);
    ASSERT_LT(a.range(), 2.0);
    for (std::size_t k = 0; k < avg.averages.size(); ++k) {
        const double l = 64 << k;
        EXPECT_DOUBLE_EQ(avg.averages[k].norm(), (l - 3) / l);
    }
}

TEST(Additivity, VolumeExact) {
    const auto w = fibonacci(400);
    const auto rep = check_almost_additivity(volume_function(), w, Region::interval(50, 350), 100, 7);
    EXPECT_EQ(rep.trials, 100);
    EXPECT_TRUE(rep.ok());
    EXPECT_LE(rep.max_a1_ratio, 0.0);
}

TEST(Additivity, IdsOnIntegers) {
    const auto w = integers(-10, 210);
    const auto a = FiniteRangeOperator::adjacency(1.1);
    const auto rep = check_almost_additivity(f_a_function(a, 1, w.r()), w, Region::interval(0, 200), 100, 42);
    EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
    EXPECT_EQ(rep.a1_violations, 0);
    EXPECT_GE(rep.min_a1_margin, 0.0);
    EXPECT_LT(rep.max_a1_ratio, 1.0);
    ASSERT_EQ(rep.a4_ratios.size(), 4u);
    EXPECT_TRUE(rep.a4_decreasing);
}

TEST(Additivity, DeterministicSeed) {
    const auto w = fibonacci(400);
    const auto f = point_count_function(1, w.r());
    const auto a = check_almost_additivity(f, w, Region::interval(50, 350), 30, 5);
    const auto b = check_almost_additivity(f, w, Region::interval(50, 350), 30, 5);
    EXPECT_EQ(a.min_a1_margin, b.min_a1_margin);
    EXPECT_EQ(a.max_a1_ratio, b.max_a1_ratio);
}

TEST(Partition, CutsAvoidPoints) {
    const auto w = generate(integer_lattice_spec(2, Region::box(2, {0, 0}, {20, 20})));
    std::mt19937_64 rng(3);
    const Region q = Region::box(2, {2, 2}, {18, 18});
    for (int t = 0; t < 20; ++t) {
        const auto g = random_grid_partition(w, q, rng);
        double total = 0;
        for (const auto& p : g.parts) total += p.measure();
        EXPECT_NEAR(total, q.measure(), 1e-9);
        for (double c : g.cuts_x) EXPECT_GT(std::abs(c - std::round(c)), 1e-6);
        for (double c : g.cuts_y) EXPECT_GT(std::abs(c - std::round(c)), 1e-6);
    }
}

TEST(Uniformity, SinglePatchZero) {
    const auto w = fibonacci(500);
    EXPECT_EQ(uniformity_scan(point_count_function(1, w.r()), {w}, Region::interval(100, 400)), 0.0);
}

TEST(Uniformity, LatticeTranslatesShrink) {
    const auto spec = integer_lattice_spec(1, Region::interval(-300, 300));
    const auto samples = hull_samples(spec, 8);
    const auto f = point_count_function(1, 0.5);
    double prev = 1e9;
    for (double half : {16.0, 64.0, 256.0}) {
        const double u = uniformity_scan(f, samples, Region::interval(-half, half));
        EXPECT_LE(u, 1.0 / half + 1e-12);
        EXPECT_LE(u, prev);
        prev = u;
    }
}

TEST(Properties, BanachTriangle) {
    oracle::Gen g(11);
    auto random_step = [&g] {
        std::vector<double> bp, v;
        double e = -3, acc = 0;
        const int n = g.integer(1, 6);
        for (int i = 0; i < n; ++i) {
            e += g.uniform(0.01, 1.0);
            acc += g.uniform(-1.0, 1.0);
            bp.push_back(e);
            v.push_back(acc);
        }
        return BanachElement(StepFunction(bp, v));
    };
    for (int t = 0; t < 300; ++t) {
        const BanachElement a = random_step(), b = random_step();
        EXPECT_LE((a + b).norm(), a.norm() + b.norm() + 1e-12);
        EXPECT_NEAR(norm_distance(a, b), (a - b).norm(), 1e-12);
        EXPECT_NEAR(a.scaled(-2.0).norm(), 2.0 * a.norm(), 1e-12);
        const BanachElement s = g.uniform(-5, 5), u = g.uniform(-5, 5);
        EXPECT_LE((s + u).norm(), s.norm() + u.norm());
        EXPECT_DOUBLE_EQ((BanachElement() + s).scalar(), s.scalar());
    }
}

TEST(Properties, OccurrenceAveragesMatchFrequencyOnRandomBalls) {
    oracle::Gen g(5);
    const auto w = fibonacci(2500);
    const auto seq = VanHoveSequence::centered_boxes(1, {1250, 0}, 100, 4);
    for (int t = 0; t < 10; ++t) {
        const double x = g.uniform(200, 2300);
        Vec c = w.points().front();
        for (const Vec& p : w.points())
            if (std::abs(p.x - x) < std::abs(c.x - x)) c = p;
        const PatternClass cls = ball_class(w, c, g.uniform(0.5, 4.0));
        const auto f = frequency(cls, w, seq);
        const auto avg = ergodic_average(occurrence_count_function(cls, w.r()), w, seq);
        for (std::size_t k = 0; k < f.per_scale.size(); ++k)
            EXPECT_NEAR(avg.averages[k].scalar(), f.per_scale[k], 1e-12);
        EXPECT_GT(f.counts.back(), 0u);
    }
}
