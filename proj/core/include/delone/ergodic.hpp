#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "delone/almost_additive.hpp"
#include "delone/voronoi.hpp"

namespace delone {

// F(P) = |supp P|, b = 0, D = 1.
AlmostAdditiveFunction volume_function();
// F(P) = #points, b = |Q^r \ Q_r| / |B(0, r)|, D = 1 / |B(0, r)|.
AlmostAdditiveFunction point_count_function(int dim, double r);
// F(P) = #occurrences of the class q inside P, with
// b = |Q^r \ Q_{s+r}| / |B(0, r)| where s bounds the anchor-to-support distance of q.
AlmostAdditiveFunction occurrence_count_function(const PatternClass& q, double r);

// Largest distance from the anchor of q to a point of its support (bounding-box bound).
double support_reach(const PatternClass& q);

struct FrequencyEstimate {
    std::vector<std::size_t> counts;  // occurrences wholly inside Q_k
    std::vector<double> per_scale;    // counts / |Q_k|
    double estimate = 0.0;            // last scale
};

FrequencyEstimate frequency(const PatternClass& p, const DelonePatch& w, const VanHoveSequence& seq);

struct ClassCount {
    PatternClass cls;
    std::size_t count = 0;
    Vec first;  // first center in lexicographic order
};

// Census over the points whose s-ball fits the window, in order of first occurrence.
std::vector<ClassCount> enumerate_ball_classes(const DelonePatch& w, double s);

struct ApproximantOptions {
    enum class Coloring { off, automatic, fixed };
    Coloring coloring = Coloring::off;
    int l = 1;  // used with Coloring::fixed
};

ApproximantOptions::Coloring coloring_from_string(const std::string& name);
const char* to_string(ApproximantOptions::Coloring c);

// Grid coloring actually used for a given k: l = 1 means uncolored.
int approximant_coloring(const DelonePatch& w, double k, const ApproximantOptions& opt);

struct CellClass {
    PatternClass key;      // [B(x, 2 R(B^(k))) ^ w]
    PatternClass content;  // [C(x)]
    std::size_t count = 0;
    double frequency = 0.0;  // count / total cell measure
    Cell representative;
};

struct CellApproximant {
    BanachElement value;  // sum_j f(B_j) F(C_j)
    Vec anchor;
    double k = 0.0;
    int l = 1;
    Radii radii;
    std::vector<CellClass> classes;
    double total_measure = 0.0;
    DelonePatch patch;  // the (colored) patch the cells were taken from
    DerivedSet derived;  // occurrences of B^(k)
};

// F^(k) from the B^(k)-decomposition of the largest region the window supports.
CellApproximant cell_approximant(const AlmostAdditiveFunction& f, const DelonePatch& w, double k,
                                 const ApproximantOptions& opt = {});

// ||F(P)/|P| - F^(k)|| against its split D1 + D2 for P = [w ^ Q], with the
// bound D1 <= (b(S) + sum_x b(C_x)) / |P| from almost additivity.
struct ApproximantSplit {
    double lhs = 0.0;
    double d1 = 0.0;
    double d1_bound = 0.0;
    double d2 = 0.0;
    std::size_t cells = 0;
    bool holds = true;
};

ApproximantSplit approximant_split(const AlmostAdditiveFunction& f, const DelonePatch& w, const CellApproximant& ap,
                                   const Region& q);

struct ErgodicAverage {
    std::vector<BanachElement> averages;  // F(P_k) / |P_k|
    std::vector<double> norms;
    std::vector<double> cauchy;           // distance to the previous term
    BanachElement limit;
};

ErgodicAverage ergodic_average(const AlmostAdditiveFunction& f, const DelonePatch& w, const VanHoveSequence& seq);

struct AdditivityReport {
    int trials = 0;
    long a1_violations = 0;
    long a2_violations = 0;
    long a3_violations = 0;
    long translation_violations = 0;
    double min_a1_margin = 0.0;   // min over trials of sum b - ||F(P) - sum F(P_i)||
    double max_a1_ratio = 0.0;    // max over trials of the defect over sum b (slack = 1 - this)
    std::vector<double> a4_ratios;  // b(Q_j) / |Q_j| on nested centered boxes (sampled)
    bool a4_decreasing = true;
    std::vector<std::string> violations;
    bool ok() const {
        return a1_violations == 0 && a2_violations == 0 && a3_violations == 0 && translation_violations == 0 &&
               a4_decreasing;
    }
};

struct GridPartition {
    std::vector<double> cuts_x;
    std::vector<double> cuts_y;
    std::vector<Region> parts;
};

// Random axis-grid slicing of a box, cuts kept clear of the patch points.
GridPartition random_grid_partition(const DelonePatch& w, const Region& q, std::mt19937_64& rng);

AdditivityReport check_almost_additivity(const AlmostAdditiveFunction& f, const DelonePatch& w, const Region& q,
                                         int trials, std::uint64_t seed);

// max_{i,j} || F([w_i ^ Q]) - F([w_j ^ Q]) || / |Q|.
double uniformity_scan(const AlmostAdditiveFunction& f, const std::vector<DelonePatch>& patches, const Region& q);

}  // namespace delone
