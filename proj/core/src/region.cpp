#include "delone/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "delone/error.hpp"

namespace delone {

namespace {

double coordinate_scale(const std::vector<Vec>& poly) {
    double s = 1.0;
    for (const Vec& v : poly) s = std::max({s, std::abs(v.x), std::abs(v.y)});
    return s;
}

// Rotates a vertex cycle so it starts at the lexicographically smallest vertex.
void rotate_to_lex_min(std::vector<Vec>& poly) {
    if (poly.size() < 2) return;
    auto it = std::min_element(poly.begin(), poly.end(),
                               [](Vec a, Vec b) { return lex_less(a, b); });
    std::rotate(poly.begin(), it, poly.end());
}

std::int64_t snap(double v, double tol) { return std::llround(v / tol); }

}  // namespace

const char* to_string(RegionKind kind) {
    switch (kind) {
        case RegionKind::empty: return "empty";
        case RegionKind::box: return "box";
        case RegionKind::ball: return "ball";
        case RegionKind::polytope: return "polytope";
        case RegionKind::rounded: return "rounded";
        case RegionKind::composite: return "composite";
    }
    return "unknown";
}

namespace polygon_ops {

double area(const std::vector<Vec>& ccw) {
    if (ccw.size() < 3) return 0.0;
    double a = 0.0;
    for (std::size_t i = 0; i < ccw.size(); ++i) a += cross(ccw[i], ccw[(i + 1) % ccw.size()]);
    return 0.5 * a;
}

double perimeter(const std::vector<Vec>& ccw) {
    if (ccw.size() < 2) return 0.0;
    double p = 0.0;
    for (std::size_t i = 0; i < ccw.size(); ++i) p += distance(ccw[i], ccw[(i + 1) % ccw.size()]);
    return p;
}

std::vector<Vec> clip_halfplane(const std::vector<Vec>& poly, Vec n, double c, double tol) {
    std::vector<Vec> out;
    const std::size_t m = poly.size();
    if (m == 0) return out;
    if (m == 1) {
        if (dot(n, poly[0]) - c <= tol) out.push_back(poly[0]);
        return out;
    }
    out.reserve(m + 2);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec cur = poly[i];
        const Vec nxt = poly[(i + 1) % m];
        const double dc = dot(n, cur) - c;
        const double dn = dot(n, nxt) - c;
        const bool cur_in = dc <= tol;
        const bool nxt_in = dn <= tol;
        if (cur_in) out.push_back(cur);
        if (cur_in != nxt_in) {
            double t = dc / (dc - dn);
            t = std::clamp(t, 0.0, 1.0);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    return out;
}

std::vector<Vec> dedupe(std::vector<Vec> poly, double tol) {
    std::vector<Vec> out;
    out.reserve(poly.size());
    for (const Vec& v : poly) {
        if (out.empty() || distance(out.back(), v) > tol) out.push_back(v);
    }
    while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
    // A degenerate polygon may fold back onto itself (a, b, a); collapse it.
    if (out.size() == 3 && polygon_ops::area(out) == 0.0 && distance(out[0], out[2]) <= tol) out.pop_back();
    return out;
}

double segment_distance(Vec p, Vec a, Vec b) {
    const Vec ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

}  // namespace polygon_ops

Region Region::empty(int dim) {
    if (dim != 1 && dim != 2) throw InvalidArgument("dimension must be 1 or 2");
    Region q;
    q.dim_ = dim;
    q.kind_ = RegionKind::empty;
    return q;
}

Region Region::interval(double lo, double hi) {
    if (!(lo <= hi)) throw InvalidArgument("interval bounds out of order");
    Region q;
    q.dim_ = 1;
    q.lo_ = lo;
    q.hi_ = hi;
    q.axis_box_ = true;
    q.refresh_kind();
    return q;
}

Region Region::box(int dim, Vec lo, Vec hi) {
    if (dim == 1) return interval(lo.x, hi.x);
    if (dim != 2) throw InvalidArgument("dimension must be 1 or 2");
    if (!(lo.x <= hi.x && lo.y <= hi.y)) throw InvalidArgument("box bounds out of order");
    Region q;
    q.dim_ = 2;
    q.core_ = polygon_ops::dedupe({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}}, 0.0);
    q.axis_box_ = true;
    q.refresh_kind();
    return q;
}

Region Region::ball(int dim, Vec center, double radius) {
    if (!(radius >= 0.0)) throw InvalidArgument("ball radius must be nonnegative");
    if (dim != 1 && dim != 2) throw InvalidArgument("dimension must be 1 or 2");
    Region q;
    q.dim_ = dim;
    q.nominal_ball_ = true;
    if (dim == 1) {
        q.lo_ = center.x - radius;
        q.hi_ = center.x + radius;
    } else {
        q.core_ = {center};
        q.rounding_ = radius;
    }
    q.refresh_kind();
    return q;
}

Region Region::polygon(std::vector<Vec> vertices) {
    const double tol = 1e-12 * coordinate_scale(vertices);
    vertices = polygon_ops::dedupe(std::move(vertices), tol);
    const std::size_t m = vertices.size();
    if (m < 3) throw InvalidArgument("polygon needs at least 3 distinct vertices");
    const double scale = coordinate_scale(vertices);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec e1 = vertices[(i + 1) % m] - vertices[i];
        const Vec e2 = vertices[(i + 2) % m] - vertices[(i + 1) % m];
        if (cross(e1, e2) < -1e-12 * scale * scale)
            throw InvalidArgument("polygon vertices must be convex and counterclockwise");
    }
    if (!(polygon_ops::area(vertices) > 0.0))
        throw InvalidArgument("polygon vertices must be convex and counterclockwise");
    Region q;
    q.dim_ = 2;
    q.core_ = std::move(vertices);
    rotate_to_lex_min(q.core_);
    q.refresh_kind();
    return q;
}

Region Region::rounded(const Region& convex_core, double radius) {
    if (!convex_core.is_convex()) throw InvalidArgument("rounded region needs a convex core");
    return dilate(convex_core, radius);
}

Region Region::composite(Region outer, std::vector<Region> holes) {
    if (!outer.is_convex()) throw InvalidArgument("composite outer region must be convex");
    std::vector<Region> kept;
    for (Region& h : holes) {
        if (!h.is_convex()) throw InvalidArgument("composite holes must be convex");
        if (h.dim() != outer.dim()) throw InvalidArgument("composite dimension mismatch");
        if (!h.is_empty()) kept.push_back(std::move(h));
    }
    if (kept.empty() || outer.is_empty()) return outer;
    Region q;
    q.dim_ = outer.dim();
    q.kind_ = RegionKind::composite;
    auto parts = std::make_shared<Parts>();
    parts->outer.push_back(std::move(outer));
    parts->holes = std::move(kept);
    q.parts_ = std::move(parts);
    return q;
}

void Region::refresh_kind() {
    if (dim_ == 1) {
        kind_ = nominal_ball_ ? RegionKind::ball : RegionKind::box;
        return;
    }
    if (core_.empty()) {
        kind_ = RegionKind::empty;
        return;
    }
    if (rounding_ == 0.0) {
        if (axis_box_) kind_ = RegionKind::box;
        else if (core_.size() == 1 && nominal_ball_) kind_ = RegionKind::ball;
        else kind_ = RegionKind::polytope;
    } else {
        kind_ = core_.size() == 1 ? RegionKind::ball : RegionKind::rounded;
    }
}

double Region::measure() const {
    switch (kind_) {
        case RegionKind::empty: return 0.0;
        case RegionKind::composite: {
            if (!exact_measure_) throw PreconditionError("measure of an eroded composite region is not tracked");
            double m = outer().measure();
            for (const Region& h : holes()) m -= h.measure();
            return std::max(m, 0.0);
        }
        default: break;
    }
    if (dim_ == 1) return hi_ - lo_;
    return polygon_ops::area(core_) + polygon_ops::perimeter(core_) * rounding_ + M_PI * rounding_ * rounding_;
}

double Region::core_signed_distance(Vec p) const {
    if (dim_ == 1) return std::max(lo_ - p.x, p.x - hi_);
    const std::size_t m = core_.size();
    if (m == 1) return distance(p, core_[0]);
    if (m == 2) return polygon_ops::segment_distance(p, core_[0], core_[1]);
    double inside = std::numeric_limits<double>::infinity();
    bool is_inside = true;
    for (std::size_t i = 0; i < m; ++i) {
        const Vec a = core_[i];
        const Vec e = core_[(i + 1) % m] - a;
        const double len = norm(e);
        if (len == 0.0) continue;
        const double d = cross(e, p - a) / len;
        if (d < 0.0) {
            is_inside = false;
            break;
        }
        inside = std::min(inside, d);
    }
    if (is_inside) return -inside;
    double out = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
        out = std::min(out, polygon_ops::segment_distance(p, core_[i], core_[(i + 1) % m]));
    return out;
}

double Region::signed_distance(Vec p) const {
    if (kind_ == RegionKind::composite) throw InvalidArgument("signed distance needs a convex region");
    if (kind_ == RegionKind::empty) return std::numeric_limits<double>::infinity();
    return core_signed_distance(p) - rounding_;
}

bool Region::contains(Vec p, double tol) const {
    if (kind_ == RegionKind::empty) return false;
    if (kind_ == RegionKind::composite) {
        if (!outer().contains(p, tol)) return false;
        for (const Region& h : holes())
            if (h.signed_distance(p) < -tol) return false;
        return true;
    }
    return signed_distance(p) <= tol;
}

bool Region::interior_contains(Vec p, double tol) const {
    if (kind_ == RegionKind::empty) return false;
    if (kind_ == RegionKind::composite) {
        if (!outer().interior_contains(p, tol)) return false;
        for (const Region& h : holes())
            if (h.signed_distance(p) <= tol) return false;
        return true;
    }
    return signed_distance(p) < -tol;
}

Bounds Region::bounds() const {
    if (kind_ == RegionKind::empty) throw InvalidArgument("bounds of an empty region");
    if (kind_ == RegionKind::composite) return outer().bounds();
    if (dim_ == 1) return {{lo_, 0.0}, {hi_, 0.0}};
    Bounds b{core_[0], core_[0]};
    for (const Vec& v : core_) {
        b.lo.x = std::min(b.lo.x, v.x);
        b.lo.y = std::min(b.lo.y, v.y);
        b.hi.x = std::max(b.hi.x, v.x);
        b.hi.y = std::max(b.hi.y, v.y);
    }
    b.lo -= Vec{rounding_, rounding_};
    b.hi += Vec{rounding_, rounding_};
    return b;
}

Region Region::translated(Vec t) const {
    Region q = *this;
    if (kind_ == RegionKind::composite) {
        auto parts = std::make_shared<Parts>();
        parts->outer.push_back(outer().translated(t));
        for (const Region& h : holes()) parts->holes.push_back(h.translated(t));
        q.parts_ = std::move(parts);
        return q;
    }
    q.lo_ += t.x;
    q.hi_ += t.x;
    for (Vec& v : q.core_) v += t;
    return q;
}

Vec Region::center() const {
    if (dim_ == 1) return {0.5 * (lo_ + hi_), 0.0};
    if (core_.empty()) throw InvalidArgument("center of an empty region");
    Vec c;
    for (const Vec& v : core_) c += v;
    return (1.0 / static_cast<double>(core_.size())) * c;
}

double Region::radius() const {
    if (dim_ == 1) return 0.5 * (hi_ - lo_);
    return rounding_;
}

const Region& Region::outer() const {
    if (kind_ != RegionKind::composite) return *this;
    return parts_->outer.front();
}

const std::vector<Region>& Region::holes() const {
    static const std::vector<Region> none;
    if (kind_ != RegionKind::composite) return none;
    return parts_->holes;
}

void Region::append_key(std::vector<std::int64_t>& key, double tol) const {
    key.push_back(static_cast<std::int64_t>(kind_));
    key.push_back(dim_);
    switch (kind_) {
        case RegionKind::empty: return;
        case RegionKind::composite:
            outer().append_key(key, tol);
            key.push_back(static_cast<std::int64_t>(holes().size()));
            for (const Region& h : holes()) h.append_key(key, tol);
            return;
        default: break;
    }
    if (dim_ == 1) {
        key.push_back(snap(lo_, tol));
        key.push_back(snap(hi_, tol));
        return;
    }
    key.push_back(static_cast<std::int64_t>(core_.size()));
    for (const Vec& v : core_) {
        key.push_back(snap(v.x, tol));
        key.push_back(snap(v.y, tol));
    }
    key.push_back(snap(rounding_, tol));
}

Region erode(const Region& q, double h) {
    if (!(h >= 0.0)) throw InvalidArgument("erosion depth must be nonnegative");
    if (q.is_empty() || h == 0.0) return q;
    if (q.kind() == RegionKind::composite) {
        std::vector<Region> holes;
        for (const Region& hole : q.holes()) holes.push_back(dilate(hole, h));
        Region out_region = erode(q.outer(), h);
        if (out_region.is_empty()) return out_region;
        Region c = Region::composite(std::move(out_region), std::move(holes));
        c.exact_measure_ = false;
        return c;
    }
    Region e = q;
    if (q.dim() == 1) {
        e.lo_ += h;
        e.hi_ -= h;
        if (e.lo_ > e.hi_) {
            const double gap = e.lo_ - e.hi_;
            if (gap > 1e-12 * std::max({1.0, std::abs(e.lo_), std::abs(e.hi_)})) return Region::empty(1);
            e.lo_ = e.hi_ = 0.5 * (e.lo_ + e.hi_);
        }
        return e;
    }
    if (h <= q.rounding_) {
        e.rounding_ = q.rounding_ - h;
        e.refresh_kind();
        return e;
    }
    const double g = h - q.rounding_;
    e.rounding_ = 0.0;
    const std::vector<Vec>& core = q.core_;
    if (core.size() < 3) return Region::empty(2);
    const double scale = coordinate_scale(core);
    const double dtol = 1e-12 * scale;
    if (q.axis_box_) {
        Vec lo = core[0], hi = core[0];
        for (const Vec& v : core) {
            lo.x = std::min(lo.x, v.x);
            lo.y = std::min(lo.y, v.y);
            hi.x = std::max(hi.x, v.x);
            hi.y = std::max(hi.y, v.y);
        }
        lo += Vec{g, g};
        hi -= Vec{g, g};
        if (lo.x > hi.x + dtol || lo.y > hi.y + dtol) return Region::empty(2);
        if (lo.x > hi.x) lo.x = hi.x = 0.5 * (lo.x + hi.x);
        if (lo.y > hi.y) lo.y = hi.y = 0.5 * (lo.y + hi.y);
        return Region::box(2, lo, hi);
    }
    std::vector<Vec> poly = core;
    const std::size_t m = core.size();
    for (std::size_t i = 0; i < m && !poly.empty(); ++i) {
        const Vec a = core[i];
        const Vec d = core[(i + 1) % m] - a;
        const double len = norm(d);
        if (len == 0.0) continue;
        const Vec n{d.y / len, -d.x / len};
        poly = polygon_ops::clip_halfplane(poly, n, dot(n, a) - g, dtol);
    }
    poly = polygon_ops::dedupe(std::move(poly), 1e-10 * scale);
    if (poly.empty()) return Region::empty(2);
    rotate_to_lex_min(poly);
    e.core_ = std::move(poly);
    e.axis_box_ = false;
    e.nominal_ball_ = false;
    e.refresh_kind();
    return e;
}

Region dilate(const Region& q, double h) {
    if (!(h >= 0.0)) throw InvalidArgument("dilation radius must be nonnegative");
    if (q.kind() == RegionKind::composite) throw InvalidArgument("dilation of a composite region");
    if (q.is_empty() || h == 0.0) return q;
    Region d = q;
    if (q.dim() == 1) {
        d.lo_ -= h;
        d.hi_ += h;
        return d;
    }
    d.rounding_ += h;
    d.refresh_kind();
    return d;
}

double boundary_band(const Region& q, double outer, double inner) {
    if (q.kind() == RegionKind::composite) {
        if (!q.measure_is_exact()) throw PreconditionError("boundary band of an eroded composite region");
        double band = boundary_band(q.outer(), outer, inner);
        for (const Region& h : q.holes()) band += boundary_band(h, inner, outer);
        return band;
    }
    return dilate(q, outer).measure() - erode(q, inner).measure();
}

double boundary_ratio(const Region& q, double h) {
    const double m = q.measure();
    if (!(m > 0.0)) throw InvalidArgument("degenerate region");
    return boundary_band(q, h, h) / m;
}

bool contains_region(const Region& outer, const Region& inner, double tol) {
    if (inner.is_empty()) return true;
    if (outer.is_empty()) return false;
    if (!outer.is_convex()) throw InvalidArgument("containment test needs a convex outer region");
    if (outer.dim() != inner.dim()) throw InvalidArgument("dimension mismatch");
    const Region& in = inner.outer();
    if (in.dim() == 1) return in.lo() >= outer.lo() - tol && in.hi() <= outer.hi() + tol;
    const double ri = in.rounding();
    const double ro = outer.rounding();
    if (ri <= ro) {
        const Region core_only = erode(outer, ro);  // strips the rounding, keeps the core
        for (const Vec& v : in.core())
            if (core_only.signed_distance(v) > ro - ri + tol) return false;
        return true;
    }
    const Region e = erode(outer, ri);
    if (e.is_empty()) return false;
    for (const Vec& v : in.core())
        if (e.signed_distance(v) > tol) return false;
    return true;
}

double intersection_measure(const Region& a, const Region& b) {
    if (a.is_empty() || b.is_empty()) return 0.0;
    if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch");
    if (a.dim() == 1) return std::max(0.0, std::min(a.hi(), b.hi()) - std::max(a.lo(), b.lo()));
    if (!a.is_convex() || !b.is_convex() || a.rounding() != 0.0 || b.rounding() != 0.0)
        throw InvalidArgument("intersection measure needs convex polygons");
    std::vector<Vec> poly = a.core();
    const std::vector<Vec>& c = b.core();
    const std::size_t m = c.size();
    if (m < 3 || poly.size() < 3) return 0.0;
    for (std::size_t i = 0; i < m && !poly.empty(); ++i) {
        const Vec d = c[(i + 1) % m] - c[i];
        const double len = norm(d);
        if (len == 0.0) continue;
        const Vec n{d.y / len, -d.x / len};
        poly = polygon_ops::clip_halfplane(poly, n, dot(n, c[i]));
    }
    return std::max(0.0, polygon_ops::area(poly));
}

}  // namespace delone
