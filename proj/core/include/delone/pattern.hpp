#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delone/region.hpp"

namespace delone {

// Default snapping pitch for pattern equality. Must stay far below any packing radius.
inline constexpr double kPatternTol = 1e-6;

// A finite point configuration with a declared support. Points are kept in
// lexicographic order; colors, when present, run parallel to points.
struct Pattern {
    std::vector<Vec> points;
    std::vector<int> colors;
    Region support;

    int dim() const { return support.dim(); }
    bool colored() const { return !colors.empty(); }
};

// Sorts the points and checks points inside support (closed, kBoundaryTol).
Pattern make_pattern(std::vector<Vec> points, Region support, std::vector<int> colors = {});
Pattern translated(const Pattern& p, Vec t);

// Translation class of a pattern: the representative is translated so that its
// anchor (lexicographically smallest point; for an empty pattern the support's
// lexicographically smallest extreme point) sits at the origin.
class PatternClass {
  public:
    PatternClass() = default;

    static PatternClass of(const Pattern& p, double tol = kPatternTol);

    const Pattern& canonical() const { return canonical_; }
    double tol() const { return tol_; }
    static constexpr const char* anchor_rule = "lexmin-point";

    // Ball pattern: support is a ball whose center is one of the points.
    bool is_ball() const { return ball_center_.has_value(); }
    // Center in canonical coordinates and radius s(P); ball patterns only.
    Vec ball_center() const;
    double ball_radius() const;

    const std::vector<std::int64_t>& key() const { return key_; }
    std::size_t hash() const { return hash_; }
    // Short hexadecimal digest of the key, stable across runs.
    std::string digest() const;

    friend bool operator==(const PatternClass& a, const PatternClass& b) {
        return a.hash_ == b.hash_ && a.key_ == b.key_;
    }

  private:
    Pattern canonical_;
    double tol_ = kPatternTol;
    std::optional<Vec> ball_center_;
    std::vector<std::int64_t> key_;
    std::size_t hash_ = 0;
};

struct PatternClassHash {
    std::size_t operator()(const PatternClass& c) const { return c.hash(); }
};

// The translation that canonicalization applies is -anchor(p).
Vec anchor(const Pattern& p, double tol = kPatternTol);
PatternClass canonicalize(const Pattern& p, double tol = kPatternTol);

struct Occurrences {
    std::size_t count = 0;
    std::vector<Vec> translations;  // lexicographic order
};

// Translations t with (canonical points + t) = P2.points on (support + t),
// support + t inside P2.support, matched at the class tolerance.
Occurrences occurrences(const PatternClass& p1, const Pattern& p2);

}  // namespace delone
