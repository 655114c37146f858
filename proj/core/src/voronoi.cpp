#include "delone/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "delone/error.hpp"

namespace delone {

namespace {

constexpr double kVertexDedupe = 1e-9;

Region clip_cell(Vec x, std::vector<Vec> neighbors, const Region& clip) {
    if (clip.dim() == 1) {
        double lo = clip.lo(), hi = clip.hi();
        for (const Vec& y : neighbors) {
            const double mid = 0.5 * (x.x + y.x);
            if (y.x < x.x) lo = std::max(lo, mid);
            else if (y.x > x.x) hi = std::min(hi, mid);
        }
        if (lo > hi) return Region::empty(1);
        return Region::interval(lo, hi);
    }
    std::vector<Vec> poly;
    if (clip.is_convex() && clip.rounding() == 0.0 && clip.core().size() >= 3) {
        poly = clip.core();
    } else {
        const Bounds b = clip.bounds();
        poly = {b.lo, {b.hi.x, b.lo.y}, b.hi, {b.lo.x, b.hi.y}};
    }
    // Half-planes in angular order make the vertex sequence independent of the
    // input order of the neighbours.
    std::sort(neighbors.begin(), neighbors.end(), [&](Vec a, Vec b) {
        const double ta = std::atan2(a.y - x.y, a.x - x.x), tb = std::atan2(b.y - x.y, b.x - x.x);
        if (ta != tb) return ta < tb;
        return distance(a, x) < distance(b, x);
    });
    for (const Vec& y : neighbors) {
        const Vec n = y - x;
        if (n.x == 0.0 && n.y == 0.0) continue;
        const Vec mid = 0.5 * (x + y);
        poly = polygon_ops::clip_halfplane(poly, n, dot(n, mid));
        if (poly.empty()) break;
    }
    poly = polygon_ops::dedupe(std::move(poly), kVertexDedupe);
    if (poly.size() < 3) return Region::empty(2);
    return Region::polygon(std::move(poly));
}

double min_pairwise_distance(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec a, Vec b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size() && pts[j].x - pts[i].x < best; ++j)
            best = std::min(best, distance(pts[i], pts[j]));
    return best;
}

double nearest_distance(const PointIndex& index, const std::vector<Vec>& pts, Vec p, double guess) {
    double reach = std::max(guess, 1e-6);
    for (int attempt = 0; attempt < 60; ++attempt) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i : index.in_ball(p, reach)) best = std::min(best, distance(pts[i], p));
        if (std::isfinite(best)) return best;
        reach *= 2.0;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

PatternClass ball_class(const DelonePatch& w, Vec x, double s) { return canonicalize(ball_pattern(w, x, s)); }

DerivedSet derived_set(const DelonePatch& w, const PatternClass& p) {
    if (!p.is_ball()) throw InvalidArgument("derived set requires ball pattern");
    if (p.canonical().dim() != w.dim()) throw InvalidArgument("dimension mismatch");
    DerivedSet d;
    d.pattern = p;
    const double s = p.ball_radius();
    d.reliable_region = erode(w.window(), s);
    if (d.reliable_region.is_empty()) return d;
    const std::size_t expected = p.canonical().points.size();
    for (std::size_t i : w.indices_in(d.reliable_region)) {
        const Vec x = w.points()[i];
        const Region ball = Region::ball(w.dim(), x, s);
        if (w.indices_in(ball).size() != expected) continue;
        if (canonicalize(restrict(w, ball), p.tol()) == p) d.occurrences.push_back(x);
    }
    return d;
}

Region voronoi_cell(Vec x, const std::vector<Vec>& S, const Region& clip) {
    bool found = false;
    std::vector<Vec> others;
    others.reserve(S.size());
    for (const Vec& y : S) {
        if (!found && near(y, x, 1e-12 * std::max(1.0, norm(x)))) {
            found = true;
            continue;
        }
        others.push_back(y);
    }
    if (!found) throw InvalidArgument("center not in set");
    return clip_cell(x, std::move(others), clip);
}

Region voronoi_cell_local(Vec x, const std::vector<Vec>& S, const PointIndex& index, double reach,
                          const Region& clip) {
    std::vector<Vec> others;
    bool found = false;
    for (std::size_t i : index.in_ball(x, reach)) {
        if (!found && near(S[i], x, 1e-12 * std::max(1.0, norm(x)))) {
            found = true;
            continue;
        }
        others.push_back(S[i]);
    }
    if (!found) throw InvalidArgument("center not in set");
    return clip_cell(x, std::move(others), clip);
}

Radii radii(const DelonePatch& w, const PatternClass& p) { return radii(w, derived_set(w, p)); }

Radii radii(const DelonePatch& w, const DerivedSet& d) {
    const auto& occ = d.occurrences;
    if (occ.size() < 2) throw InvalidArgument("insufficient occurrences");
    Radii out;
    out.occurrences = occ.size();
    out.r = 0.5 * min_pairwise_distance(occ);
    if (w.dim() == 1) {
        double gap = 0.0;
        for (std::size_t i = 1; i < occ.size(); ++i) gap = std::max(gap, occ[i].x - occ[i - 1].x);
        out.R = 0.5 * gap;
        return out;
    }
    // Probe centers p need B(p, rho) inside the reliable region so that any
    // occurrence closer than rho is visible; grow rho until it dominates.
    const PointIndex index(occ, std::max(out.r, 1e-3));
    const double pitch = 0.5 * out.r;
    out.resolution = pitch;
    double rho = std::max(out.r, w.R());
    for (int round = 0; round < 16; ++round) {
        const Region probe = erode(d.reliable_region, rho);
        if (probe.is_empty()) throw WindowExceeded("window too small to estimate the occurrence radius", rho);
        const Bounds b = probe.bounds();
        const long nx = std::max<long>(1, static_cast<long>(std::ceil((b.hi.x - b.lo.x) / pitch)));
        const long ny = std::max<long>(1, static_cast<long>(std::ceil((b.hi.y - b.lo.y) / pitch)));
        double worst = 0.0;
        for (long iy = 0; iy <= ny; ++iy)
            for (long ix = 0; ix <= nx; ++ix) {
                const Vec p{b.lo.x + (b.hi.x - b.lo.x) * static_cast<double>(ix) / static_cast<double>(nx),
                            b.lo.y + (b.hi.y - b.lo.y) * static_cast<double>(iy) / static_cast<double>(ny)};
                if (!probe.contains(p)) continue;
                worst = std::max(worst, nearest_distance(index, occ, p, rho));
            }
        out.R = std::max(worst, out.r);
        if (out.R <= rho) return out;
        rho = out.R * (1.0 + 1e-9);
    }
    throw WindowExceeded("occurrence radius estimate did not stabilize", rho);
}

Decomposition p_decomposition(const DelonePatch& w, const PatternClass& p, const Region& q) {
    const DerivedSet d = derived_set(w, p);
    return p_decomposition(w, d, radii(w, d), q);
}

Decomposition p_decomposition(const DelonePatch& w, const DerivedSet& d, const Radii& rad, const Region& q) {
    if (!q.is_convex() || q.is_empty()) throw InvalidArgument("decomposition region must be convex and nonempty");
    const double s = d.pattern.ball_radius();
    if (!contains_region(w.window(), dilate(q, s)))
        throw WindowExceeded("decomposition region plus its s(P) halo", s);

    Decomposition out;
    out.radii = rad;
    out.region_measure = q.measure();
    const double R = rad.R;
    const double slack = rad.resolution;
    const double reach = 2.0 * (R + slack);
    const auto& occ = d.occurrences;
    const PointIndex occ_index(occ, std::max(R, 1e-3));
    const int dim = w.dim();

    std::vector<char> assigned(w.size(), 0);
    for (const Vec& x : occ) {
        if (!contains_region(q, Region::ball(dim, x, 2.0 * R))) continue;
        const Vec half{2.0 * R + slack, dim == 1 ? 0.0 : 2.0 * R + slack};
        Cell cell;
        cell.center = x;
        cell.polytope = voronoi_cell_local(x, occ, occ_index, reach, Region::box(dim, x - half, x + half));
        if (cell.polytope.is_empty()) throw InvariantViolation("empty Voronoi cell");
        const double vr = R + slack + 1e-9 * std::max(1.0, R);
        const auto& verts = cell.polytope.core();
        if (dim == 1) {
            if (x.x - cell.polytope.lo() > vr || cell.polytope.hi() - x.x > vr)
                throw InvariantViolation("Voronoi cell leaves B(x, R(P))");
        } else {
            for (const Vec& v : verts)
                if (distance(v, x) > vr) throw InvariantViolation("Voronoi cell leaves B(x, R(P))");
        }

        std::vector<Vec> neighbours;
        for (std::size_t j : occ_index.in_ball(x, reach))
            if (!(occ[j] == x)) neighbours.push_back(occ[j]);
        std::vector<Vec> pts;
        std::vector<int> colors;
        for (std::size_t i : w.indices_in(cell.polytope)) {
            const Vec p = w.points()[i];
            const double dx = distance(p, x);
            bool mine = true;
            for (const Vec& y : neighbours)
                if (distance(p, y) <= dx + 1e-9 && lex_less(y, x)) {
                    mine = false;
                    break;
                }
            if (!mine) continue;
            if (assigned[i]) throw InvariantViolation("point assigned to two cells");
            assigned[i] = 1;
            pts.push_back(p);
            if (w.colored()) colors.push_back(w.colors()[i]);
        }
        cell.content = Pattern{std::move(pts), std::move(colors), cell.polytope};
        cell.key = ball_class(w, x, 2.0 * R);
        out.cells_measure += cell.polytope.measure();
        out.cells.push_back(std::move(cell));
    }

    // Interior-disjointness of neighbouring cells.
    if (dim == 2 && !out.cells.empty()) {
        std::vector<Vec> centers;
        for (const Cell& c : out.cells) centers.push_back(c.center);
        const PointIndex cidx(centers, std::max(R, 1e-3));
        for (std::size_t i = 0; i < out.cells.size(); ++i)
            for (std::size_t j : cidx.in_ball(centers[i], reach)) {
                if (j <= i) continue;
                const double overlap = intersection_measure(out.cells[i].polytope, out.cells[j].polytope);
                if (overlap > 1e-9 * out.cells[i].polytope.measure())
                    throw InvariantViolation("overlapping Voronoi cells");
            }
    }

    std::vector<Region> holes;
    holes.reserve(out.cells.size());
    for (const Cell& c : out.cells) holes.push_back(c.polytope);
    out.surface.support = Region::composite(q, std::move(holes));
    for (std::size_t i : w.indices_in(q)) {
        if (assigned[i]) continue;
        const Vec p = w.points()[i];
        out.surface.points.push_back(p);
        if (w.colored()) out.surface.colors.push_back(w.colors()[i]);
        if (q.signed_distance(p) < -4.0 * R - 1e-9) out.surface_in_band = false;
    }
    out.surface_measure = std::max(0.0, out.region_measure - out.cells_measure);

    // Independent tiling check: every Voronoi cell meeting Q, clipped to Q.
    const bool polygonal = dim == 1 || (q.rounding() == 0.0 && q.core().size() >= 3);
    if (polygonal && contains_region(w.window(), dilate(q, 3.0 * (R + slack) + s))) {
        const Region near_q = dilate(q, R + slack);
        double total = 0.0;
        for (const Vec& x : occ) {
            if (!near_q.contains(x)) continue;
            const Region c = voronoi_cell_local(x, occ, occ_index, reach, q);
            if (!c.is_empty()) total += c.measure();
        }
        out.tiling_residual = out.region_measure - total;
    }
    return out;
}

double inradius(const Region& c) {
    if (c.is_empty()) throw InvalidArgument("inradius of an empty region");
    if (!c.is_convex()) throw InvalidArgument("inradius needs a convex region");
    if (c.dim() == 1) return 0.5 * (c.hi() - c.lo());
    const double rho = c.rounding();
    if (c.core().size() < 3) return rho;
    const Region core = erode(c, rho);
    const Bounds b = core.bounds();
    double lo = 0.0, hi = 0.5 * std::max(b.hi.x - b.lo.x, b.hi.y - b.lo.y);
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (erode(core, mid).is_empty()) hi = mid;
        else lo = mid;
    }
    return rho + lo;
}

BoundaryBound convex_boundary_bound(const Region& c, double h) {
    if (!c.is_convex()) throw InvalidArgument("boundary bound needs a convex region");
    const double s = inradius(c);
    if (!(s > 0.0)) throw InvalidArgument("degenerate region");
    const int d = c.dim();
    const double kappa = d == 1 ? 4.0 : 8.0;
    const double u = h / s;
    const double scale = std::max(u, std::pow(u, d)) * c.measure();
    BoundaryBound out;
    out.lhs = boundary_band(c, h, h);
    out.rhs = kappa * scale;
    out.holds = out.lhs <= out.rhs;
    out.empirical_kappa = scale > 0.0 ? out.lhs / scale : 0.0;
    return out;
}

}  // namespace delone
