// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <delone/counting.hpp>
#include <delone/ergodic.hpp>
#include <delone/generators.hpp>
#include <delone/spectral.hpp>
#include <delone/voronoi.hpp>

#include "oracles.hpp"

using namespace delone;

namespace {

// 1. Free chain.
constexpr double kIdsSup = 0.02;
constexpr double kHalving = 0.5, kHalvingSlack = 0.30;
constexpr double kIdsSeconds = 60;
// 2. Hull uniformity.
constexpr int kHullSamples = 20;
constexpr double kHullHop = 1.7;
constexpr double kHullSpread = 0.05;
constexpr double kHullSeconds = 120;
// 3. Almost additivity.
constexpr int kPartitions = 100;
// 4. Rank and compression.
constexpr int kRandomMatrices = 1000;
constexpr int kMaxN = 50;
constexpr double kRankSeconds = 60;
// 5. Jumps.
constexpr double kDimerSide = 64;
constexpr double kDimerHop = 1.25;
constexpr double kResidual = 1e-12;
constexpr double kFreeJump = 0.01;
// 6. Geometry.
constexpr double kGeomTol = 1e-9;
// 7. Ergodic averages.
constexpr double kVolumeTol = 1e-12;
constexpr double kFrequencyTol = 1e-12;
constexpr double kLetterTol = 1e-3;
constexpr std::size_t kLetterPoints = 100000;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DelonePatch fibonacci(double lo, double hi, int iterations) {
    return generate(fibonacci_substitution_spec(Region::interval(lo, hi), iterations));
}

Vec nearest(const DelonePatch& w, double x) {
    Vec best = w.points().front();
    for (const Vec& p : w.points())
        if (std::abs(p.x - x) < std::abs(best.x - x)) best = p;
    return best;
}

StepDistribution from_eigenvalues(const std::vector<double>& eigs, double scale) {
    std::vector<double> bp, v;
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        bp.push_back(eigs[i]);
        v.push_back(static_cast<double>(i + 1) * scale);
    }
    return StepDistribution(bp, v);
}

void free_lattice(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto w = generate(integer_lattice_spec(1, Region::interval(-1100, 1100)));
    const auto a = FiniteRangeOperator::adjacency(1.0);
    const auto seq = VanHoveSequence::centered_boxes(1, {0, 0}, 128, 5);  // L = 128 .. 2048
    const IdsResult r = ids(a, w, seq);
    const IdsStep& last = r.steps.back();
    // Oracle: the restriction is the path graph on the sites of Q.
    const auto oracle_f = from_eigenvalues(oracle::path_eigenvalues(static_cast<int>(last.sites)), 1.0 / last.volume)
                              .snapped(kEnergyResolution);
    const double vs_path = sup_distance(last.normalized, oracle_f);
    const double sup = sup_distance_to(last.normalized, oracle::free_chain_ids, -2.0, 2.0);
    o.require(vs_path < 1e-9, "normalized IDS differs from the path spectrum");
    o.require(sup <= kIdsSup, "sup distance to the arccos law");
    o.detail << "path-spectrum gap=" << vs_path << " sup=" << sup << " (<= " << kIdsSup << ") ratios=";
    for (std::size_t k = 1; k < r.cauchy.size(); ++k) {
        const double ratio = r.cauchy[k] / r.cauchy[k - 1];
        o.detail << (k > 1 ? "," : "") << ratio;
        o.require(std::abs(ratio - kHalving) <= kHalvingSlack * kHalving, "Cauchy distance not halving");
    }
    const double t = seconds_since(t0);
    o.require(t < kIdsSeconds, "runtime");
    o.detail << " t=" << t << "s";
}

void hull_uniformity(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto samples = hull_samples(fibonacci_cut_project_spec(Region::interval(-1100, 1100)), kHullSamples);
    const auto a = FiniteRangeOperator::adjacency(kHullHop);
    std::vector<double> spread;
    for (double L : {500.0, 1000.0, 2000.0}) {
        const Region q = Region::interval(-L / 2, L / 2);
        std::vector<StepDistribution> f;
        for (const auto& w : samples)
            f.push_back(counting_function(assemble(a, w, q)).snapped(kEnergyResolution).scaled(1.0 / q.measure()));
        double m = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = i + 1; j < f.size(); ++j) m = std::max(m, sup_distance(f[i], f[j]));
        spread.push_back(m);
    }
    o.require(samples.size() >= 20, "fewer than 20 hull samples");
    o.require(spread[1] <= kHullSpread, "spread at L = 1000");
    o.require(spread[1] < spread[0] && spread[2] < spread[1], "spread not decreasing under doubling");
    const double t = seconds_since(t0);
    o.require(t < kHullSeconds, "runtime");
    o.detail << "samples=" << samples.size() << " spread(L=500,1000,2000)=" << spread[0] << "," << spread[1] << ","
             << spread[2] << " (<= " << kHullSpread << " at 1000) t=" << t << "s";
}

void almost_additivity(Outcome& o) {
    struct Case {
        const char* name;
        DelonePatch w;
        FiniteRangeOperator a;
        Region box;
    };
    const std::vector<Case> cases = {
        {"Z", generate(integer_lattice_spec(1, Region::interval(-10, 210))), FiniteRangeOperator::adjacency(1.1),
         Region::interval(0, 200)},
        {"Fibonacci", fibonacci(0, 400, 16), FiniteRangeOperator::adjacency(kHullHop), Region::interval(20, 380)},
    };
    std::uint64_t seed = 1;
    for (const auto& c : cases) {
        const auto rep = check_almost_additivity(f_a_function(c.a, 1, c.w.r()), c.w, c.box, kPartitions, seed++);
        std::mt19937_64 rng(seed++);
        long split_fail = 0;
        for (int t = 0; t < kPartitions; ++t) {
            const auto g = random_grid_partition(c.w, c.box, rng);
            const auto d = decoupling_check(c.a, c.w, c.box, g.parts);
            if (!d.block_diagonal || !d.blocks_match || !d.holds) ++split_fail;
        }
        o.require(rep.trials >= kPartitions && rep.a1_violations == 0, std::string(c.name) + " A1");
        o.require(split_fail == 0, std::string(c.name) + " block-diagonal restriction");
        o.detail << c.name << ": A1 violations " << rep.a1_violations << "/" << rep.trials << " (max defect/b "
                 << rep.max_a1_ratio << "), decoupling failures " << split_fail << "/" << kPartitions << "; ";
    }
}

void rank_inequalities(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    oracle::Gen g(2024);
    long rank_fail = 0, comp_fail = 0, rank_mismatch = 0;
    for (int t = 0; t < kRandomMatrices; ++t) {
        const int n = g.integer(2, kMaxN);
        const Eigen::MatrixXd b = g.int_symmetric(n, 3);
        const int rank = g.integer(1, std::min(4, n));
        const Eigen::MatrixXd c = g.low_rank(n, rank);
        const RankReport rr = rank_inequality_check(AssembledMatrix::from_dense(b), AssembledMatrix::from_dense(c));
        if (!rr.holds) ++rank_fail;
        if (rr.rank > rank) ++rank_mismatch;
        const auto subset = g.subset(n, g.integer(1, std::min(6, n - 1)));
        const CompressionReport cr = compression_check(AssembledMatrix::from_dense(b), subset);
        if (!cr.holds) ++comp_fail;
    }
    o.require(rank_fail == 0, "rank inequality");
    o.require(comp_fail == 0, "compression inequality");
    o.require(rank_mismatch == 0, "reported rank above the constructed rank");
    const double t = seconds_since(t0);
    o.require(t < kRankSeconds, "runtime");
    o.detail << kRandomMatrices << " matrices (n <= " << kMaxN << "): rank violations " << rank_fail
             << ", compression violations " << comp_fail << " t=" << t << "s";
}

void jumps(Outcome& o) {
    const double half = kDimerSide / 2;
    const Vec offset{0.2, 0};
    const auto w = generate(dimer_lattice_spec(Region::box(2, {-half - 3, -half - 3}, {half + 3, half + 3}), offset));
    const auto a = FiniteRangeOperator::adjacency(kDimerHop);
    const Region q = Region::box(2, {-half, -half}, {half, half});
    const AssembledMatrix m = assemble(a, w, q);
    const double height = jump_height(m, q.measure(), -1.0, 1e-6);
    o.require(std::abs(height - 1.0) <= 2.0 / kDimerSide, "jump height at E = -1");

    const Region interior = erode(q, 2.0);
    const auto states = local_eigenfunction_search(a, w, -1.0, 0.3, &interior);
    long dimers = 0, covered = 0;
    double worst = 0;
    for (const Vec& p : w.points()) {
        if (p.x != std::round(p.x) || !interior.contains(p) || !interior.contains(p + offset)) continue;
        ++dimers;
        const std::size_t i = w.find(p), j = w.find(p + offset);
        for (const auto& s : states) {
            std::vector<std::size_t> sup = s.support;
            std::sort(sup.begin(), sup.end());
            if (sup.size() != 2 || sup[0] != std::min(i, j) || sup[1] != std::max(i, j)) continue;
            // Antisymmetric: equal and opposite amplitudes.
            if (std::abs(s.coefficients[0] + s.coefficients[1]) > 1e-12) continue;
            ++covered;
            worst = std::max(worst, s.residual);
            break;
        }
    }
    o.require(dimers > 0 && covered == dimers, "antisymmetric state missing at an interior dimer");
    o.require(worst < kResidual, "residual");

    const auto z = generate(integer_lattice_spec(1, Region::interval(-1100, 1100)));
    const auto az = FiniteRangeOperator::adjacency(1.0);
    const Region qz = Region::interval(-1024, 1024);
    const auto fz = ids_step(az, z, qz).normalized;
    const auto zj = detect_jumps(fz, kFreeJump);
    std::size_t zstates = 0;
    for (double rho : {0.3, 1.5, 3.5, 7.5}) zstates += local_eigenfunction_search(az, z, 0.0, rho, &qz).size();
    o.require(zj.empty(), "free chain has a jump");
    o.require(zstates == 0, "free chain has a compactly supported state at E = 0");
    o.detail << "dimer L=" << kDimerSide << ": height " << height << " (1 +- " << 2.0 / kDimerSide << "), "
             << covered << "/" << dimers << " interior dimers, max residual " << worst << "; free Z: " << zj.size()
             << " jumps >= " << kFreeJump << ", " << zstates << " states at E=0";
}

double vertex_gap(const Region& a, const Region& b) {
    if (a.dim() == 1) return std::max(std::abs(a.lo() - b.lo()), std::abs(a.hi() - b.hi()));
    if (a.core().size() != b.core().size()) return 1e300;
    double worst = 0;
    for (const Vec& v : a.core()) {
        double best = 1e300;
        for (const Vec& u : b.core()) best = std::min(best, distance(u, v));
        worst = std::max(worst, best);
    }
    return worst;
}

void geometry(Outcome& o) {
    // Locality: Fibonacci derived set (d = 1) and the colored square grid (d = 2).
    double loc = 0;
    std::size_t cells = 0;
    const auto fib = fibonacci(0, 1500, 20);
    {
        const auto d = derived_set(fib, ball_class(fib, nearest(fib, 750), 2.0));
        const Radii rad = radii(fib, d);
        const PointIndex idx(d.occurrences, 1.0);
        for (const Vec& x : d.occurrences) {
            if (x.x < 100 || x.x > 1400) continue;
            const Region clip = Region::interval(x.x - 50, x.x + 50);
            loc = std::max(loc, vertex_gap(voronoi_cell(x, d.occurrences, clip),
                                           voronoi_cell_local(x, d.occurrences, idx, 2.0 * rad.R, clip)));
            ++cells;
        }
    }
    const auto grid = color_grid(generate(integer_lattice_spec(2, Region::box(2, {-12, -12}, {12, 12}))),
                                 {{{1, 0}, {0, 1}}, 2});
    {
        const auto d = derived_set(grid, ball_class(grid, {0, 0}, 1.1));
        const Radii rad = radii(grid, d);
        const PointIndex idx(d.occurrences, 1.0);
        for (const Vec& x : d.occurrences) {
            if (std::abs(x.x) > 6 || std::abs(x.y) > 6) continue;
            const Region clip = Region::box(2, {x.x - 8, x.y - 8}, {x.x + 8, x.y + 8});
            loc = std::max(loc, vertex_gap(voronoi_cell(x, d.occurrences, clip),
                                           voronoi_cell_local(x, d.occurrences, idx, 2.0 * rad.R, clip)));
            ++cells;
        }
    }
    o.require(loc <= kGeomTol, "Voronoi locality");

    // Tiling bookkeeping.
    double book = 0, tiling = 0;
    {
        const auto d = p_decomposition(fib, ball_class(fib, nearest(fib, 750), 2.0), Region::interval(100, 1400));
        book = std::max(book, std::abs(d.region_measure - d.cells_measure - d.surface_measure) / d.region_measure);
        if (d.tiling_residual) tiling = std::max(tiling, std::abs(*d.tiling_residual) / d.region_measure);
        o.require(d.tiling_residual.has_value(), "tiling residual unavailable (d = 1)");
    }
    {
        const auto z2 = generate(integer_lattice_spec(2, Region::box(2, {-12, -12}, {12, 12})));
        const auto d = p_decomposition(z2, ball_class(z2, {0, 0}, 1.5), Region::box(2, {-7, -7}, {7, 7}));
        book = std::max(book, std::abs(d.region_measure - d.cells_measure - d.surface_measure) / d.region_measure);
        if (d.tiling_residual) tiling = std::max(tiling, std::abs(*d.tiling_residual) / d.region_measure);
        o.require(d.tiling_residual.has_value(), "tiling residual unavailable (d = 2)");
    }
    o.require(book <= kGeomTol && tiling <= kGeomTol, "tiling identity");

    // r(P_s) growth and saturation.
    const auto longfib = fibonacci(0, 6000, 24);
    const auto z = generate(integer_lattice_spec(1, Region::interval(-60, 60)));
    const auto colored = color_grid(z, {{{1, 0}}, 3});
    std::vector<double> rf;
    bool saturated = true;
    for (double s : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        rf.push_back(radii(longfib, ball_class(longfib, nearest(longfib, 3000), s)).r);
        saturated = saturated && radii(z, ball_class(z, {0, 0}, s)).r == 0.5 &&
                    radii(colored, ball_class(colored, {0, 0}, s)).r == 1.5;
    }
    bool nondecreasing = true;
    for (std::size_t i = 1; i < rf.size(); ++i) nondecreasing = nondecreasing && rf[i] >= rf[i - 1];
    o.require(nondecreasing && rf.back() > 4 * rf.front(), "Fibonacci r(P_s) growth");
    o.require(saturated, "saturation on Z (0.5) and on the l = 3 colored chain (1.5)");
    o.detail << "locality " << loc << " over " << cells << " cells; bookkeeping " << book << ", tiling " << tiling
             << "; Fibonacci r(P_s)=";
    for (std::size_t i = 0; i < rf.size(); ++i) o.detail << (i ? "," : "") << rf[i];
    o.detail << "; saturation " << (saturated ? "ok" : "broken");
}

void ergodic(Outcome& o) {
    double vol = 0;
    const auto fib = fibonacci(0, 1500, 20);
    const auto z2 = generate(integer_lattice_spec(2, Region::box(2, {-20, -20}, {20, 20})));
    for (double k : {1.0, 2.0, 4.0, 8.0}) {
        vol = std::max(vol, std::abs(cell_approximant(volume_function(), fib, k).value.scalar() - 1.0));
        vol = std::max(vol, std::abs(cell_approximant(volume_function(), z2, k).value.scalar() - 1.0));
    }
    o.require(vol <= kVolumeTol, "volume approximant");

    const auto seq = VanHoveSequence::centered_boxes(1, {750, 0}, 100, 4);
    double freq = 0;
    for (double x : {300.0, 640.0, 910.0})
        for (double s : {0.7, 1.3, 3.0, 6.0}) {
            const PatternClass c = ball_class(fib, nearest(fib, x), s);
            const auto f = frequency(c, fib, seq);
            const auto avg = ergodic_average(occurrence_count_function(c, fib.r()), fib, seq);
            for (std::size_t k = 0; k < f.per_scale.size(); ++k)
                freq = std::max(freq, std::abs(avg.averages[k].scalar() - f.per_scale[k]));
        }
    o.require(freq <= kFrequencyTol, "occurrence averages vs frequency");

    // Letter frequency on a chain of at least 1e5 points.
    const double phi = oracle::golden();
    const double len = static_cast<double>(kLetterPoints) * (1.0 / phi + (1.0 - 1.0 / phi) / phi) + 10;
    const auto big = fibonacci(0, len, 26);
    const auto tile = [](double l) { return PatternClass::of(make_pattern({{0, 0}, {l, 0}}, Region::interval(0, l))); };
    const auto big_seq = VanHoveSequence::centered_boxes(1, {len / 2, 0}, len - 20, 1);
    const auto fa = frequency(tile(1.0), big, big_seq), fb = frequency(tile(1.0 / phi), big, big_seq);
    const double na = static_cast<double>(fa.counts.back()), nb = static_cast<double>(fb.counts.back());
    const double letter = na / (na + nb);
    // Oracle: letters of the substitution word inside the same box.
    const std::string word = oracle::fibonacci_word(26);
    const auto pts = oracle::word_points(word, 1.0, 1.0 / phi);
    const Region& q = big_seq.regions.back();
    long wa = 0, wb = 0;
    for (std::size_t i = 0; i < word.size() && pts[i] < q.hi(); ++i) {
        const double l = word[i] == 'a' ? 1.0 : 1.0 / phi;
        if (pts[i] >= q.lo() - 1e-9 && pts[i] + l <= q.hi() + 1e-9) (word[i] == 'a' ? wa : wb)++;
    }
    o.require(big.size() >= kLetterPoints, "fewer than 1e5 points");
    o.require(static_cast<long>(na) == wa && static_cast<long>(nb) == wb, "tile counts differ from the word");
    o.require(std::abs(letter - 1.0 / phi) <= kLetterTol, "letter frequency");
    o.detail << "volume |F^(k) - 1| " << vol << "; |average - frequency| " << freq << "; letter a " << letter
             << " vs 1/phi " << 1.0 / phi << " on " << big.size() << " points";
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"free-lattice IDS oracle", free_lattice},
        {"uniform convergence over the hull", hull_uniformity},
        {"almost additivity", almost_additivity},
        {"rank inequalities", rank_inequalities},
        {"jump and local eigenfunctions", jumps},
        {"geometry and decompositions", geometry},
        {"ergodic approximants", ergodic},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        if (!o.pass) ++failed;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
