#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "delone/vec.hpp"

namespace delone {

// Absolute tolerance for closed-set membership tests.
inline constexpr double kBoundaryTol = 1e-9;

enum class RegionKind { empty, box, ball, polytope, rounded, composite };

const char* to_string(RegionKind kind);

struct Bounds {
    Vec lo;
    Vec hi;
};

// A bounded closed subset of R^d (d = 1 or 2).
//
// Convex regions are stored as K + B(0, rho): a convex core K (an interval in
// d = 1; a counterclockwise vertex list in d = 2, possibly degenerate to a
// segment or a point) thickened by a rounding radius rho. This family is closed
// under erosion and dilation by balls, and its measure is exact (Steiner
// formula). Boxes, balls and convex polygons are the special cases rho = 0 or
// K = {point}.
//
// A composite region is a convex outer region minus the interiors of convex
// holes that are pairwise interior-disjoint and contained in the outer region.
// It is what remains of a box after tiling cells are removed.
class Region {
  public:
    Region() = default;

    static Region empty(int dim);
    static Region interval(double lo, double hi);
    static Region box(int dim, Vec lo, Vec hi);
    static Region ball(int dim, Vec center, double radius);
    // Convex polygon, vertices counterclockwise. Throws InvalidArgument otherwise.
    static Region polygon(std::vector<Vec> vertices);
    static Region rounded(const Region& convex_core, double radius);
    static Region composite(Region outer, std::vector<Region> holes);

    int dim() const { return dim_; }
    RegionKind kind() const { return kind_; }
    bool is_empty() const { return kind_ == RegionKind::empty; }
    bool is_convex() const { return kind_ != RegionKind::composite; }

    // Lebesgue measure. Exact for convex regions and for composites built by
    // composite(); composites produced by erosion only support membership.
    double measure() const;

    // Signed distance to the boundary (negative inside). Convex regions only.
    double signed_distance(Vec p) const;
    bool contains(Vec p, double tol = kBoundaryTol) const;
    bool interior_contains(Vec p, double tol = kBoundaryTol) const;

    Bounds bounds() const;
    Region translated(Vec t) const;

    // Convex representation.
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::vector<Vec>& core() const { return core_; }
    double rounding() const { return rounding_; }
    bool core_is_axis_box() const { return axis_box_; }
    // Ball parameters; valid for kind() == ball.
    Vec center() const;
    double radius() const;

    // Composite representation.
    const Region& outer() const;
    const std::vector<Region>& holes() const;
    bool measure_is_exact() const { return exact_measure_; }

    // Appends a translation-sensitive integer signature, coordinates snapped to
    // a grid of pitch tol. Used for pattern class equality and hashing.
    void append_key(std::vector<std::int64_t>& key, double tol) const;

  private:
    friend Region erode(const Region&, double);
    friend Region dilate(const Region&, double);

    struct Parts {
        std::vector<Region> outer;  // exactly one element
        std::vector<Region> holes;
    };

    void refresh_kind();
    double core_signed_distance(Vec p) const;

    int dim_ = 1;
    RegionKind kind_ = RegionKind::empty;
    double lo_ = 0.0;
    double hi_ = 0.0;
    std::vector<Vec> core_;
    double rounding_ = 0.0;
    bool axis_box_ = false;
    bool nominal_ball_ = false;
    bool exact_measure_ = true;
    std::shared_ptr<const Parts> parts_;
};

// Q_h = {x in Q : dist(x, boundary Q) >= h}. May be empty or degenerate.
Region erode(const Region& q, double h);
// Q^h = {x : dist(x, Q) <= h}. Convex regions only.
Region dilate(const Region& q, double h);

// |Q^outer \ Q_inner|. Exact for convex Q; for composites an upper bound
// obtained from the outer region and the holes.
double boundary_band(const Region& q, double outer, double inner);

// |Q^h \ Q_h| / |Q|; throws InvalidArgument("degenerate region") when |Q| = 0.
double boundary_ratio(const Region& q, double h);

// inner is a subset of outer, up to tol. outer must be convex.
bool contains_region(const Region& outer, const Region& inner, double tol = kBoundaryTol);

// Measure of the intersection of two convex polygons (rounding zero), or of two intervals.
double intersection_measure(const Region& a, const Region& b);

namespace polygon_ops {

double area(const std::vector<Vec>& ccw);
double perimeter(const std::vector<Vec>& ccw);
// Keeps {p : dot(n, p) <= c}.
std::vector<Vec> clip_halfplane(const std::vector<Vec>& poly, Vec n, double c, double tol = 0.0);
// Removes consecutive (cyclic) vertices closer than tol.
std::vector<Vec> dedupe(std::vector<Vec> poly, double tol);
double segment_distance(Vec p, Vec a, Vec b);

}  // namespace polygon_ops

}  // namespace delone
