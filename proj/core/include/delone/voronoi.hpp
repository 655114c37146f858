#pragma once

#include <optional>
#include <vector>

#include "delone/patch.hpp"

namespace delone {

// Occurrence set of a ball pattern class: centers t with [B(t, s) ^ w] = P.
// Detection is exact on reliable_region, the centers whose s-ball fits the window.
struct DerivedSet {
    PatternClass pattern;
    std::vector<Vec> occurrences;  // lexicographic order
    Region reliable_region;
};

DerivedSet derived_set(const DelonePatch& w, const PatternClass& p);

// Census-free constructor for the ball pattern class at a point of the patch.
PatternClass ball_class(const DelonePatch& w, Vec x, double s);

// Voronoi cell of x in the set S, intersected with a convex polygon or interval.
// Uses every point of S.
Region voronoi_cell(Vec x, const std::vector<Vec>& S, const Region& clip);
// Same cell from the points of S inside B(x, reach) only; exact when reach >= 2 R_hat.
Region voronoi_cell_local(Vec x, const std::vector<Vec>& S, const PointIndex& index, double reach,
                          const Region& clip);

struct Radii {
    double r = 0.0;            // half the minimal occurrence distance
    double R = 0.0;            // covering radius estimate
    double resolution = 0.0;   // probe grid pitch (0 when exact)
    std::size_t occurrences = 0;
};

Radii radii(const DelonePatch& w, const PatternClass& p);
Radii radii(const DelonePatch& w, const DerivedSet& d);

struct Cell {
    Vec center;
    Region polytope;
    Pattern content;
    PatternClass key;  // [B(center, 2 R(P)) ^ w]
};

struct Decomposition {
    std::vector<Cell> cells;  // center-lexicographic order
    Pattern surface;          // support: Q minus the cell interiors
    Radii radii;
    double region_measure = 0.0;
    double cells_measure = 0.0;
    double surface_measure = 0.0;
    // Surface points all lie within 4 R(P) of the boundary of Q.
    bool surface_in_band = true;
    // |Q| - sum of all Voronoi cells of reliable occurrences clipped to Q, when
    // the window is wide enough to see every cell meeting Q.
    std::optional<double> tiling_residual;
};

// Cells for all occurrences x with B(x, 2 R(P)) inside Q. Requires Q^{s(P)}
// inside the window. Points on a shared cell face go to the cell whose center
// is lexicographically smallest, so cell contents and surface partition Q ^ w.
Decomposition p_decomposition(const DelonePatch& w, const PatternClass& p, const Region& q);
Decomposition p_decomposition(const DelonePatch& w, const DerivedSet& d, const Radii& radii, const Region& q);

double inradius(const Region& c);

struct BoundaryBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    double empirical_kappa = 0.0;  // lhs / (max(u, u^d) |C|), u = h / s
};

// |C^h \ C_h| <= kappa(d) max(h/s, (h/s)^d) |C| with kappa(1) = 4, kappa(2) = 8.
BoundaryBound convex_boundary_bound(const Region& c, double h);

}  // namespace delone
