#include "delone/pattern.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "delone/error.hpp"
#include "delone/point_index.hpp"

namespace delone {

namespace {

std::uint64_t fnv1a(const std::vector<std::int64_t>& key) {
    std::uint64_t h = 14695981039346656037ull;
    for (std::int64_t v : key) {
        auto u = static_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            h ^= (u >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    return h;
}

Vec support_anchor(const Region& q) {
    const Region& s = q.outer();
    if (s.is_empty()) throw InvalidArgument("pattern with no points needs a nonempty support");
    if (s.dim() == 1) return {s.lo(), 0.0};
    Vec best = s.core().front();
    for (const Vec& v : s.core())
        if (v.x < best.x || (v.x == best.x && v.y < best.y)) best = v;
    return best - Vec{s.rounding(), 0.0};
}

}  // namespace

Pattern make_pattern(std::vector<Vec> points, Region support, std::vector<int> colors) {
    if (!colors.empty() && colors.size() != points.size())
        throw InvalidArgument("colors must match points");
    for (const Vec& p : points)
        if (!support.contains(p)) throw InvalidArgument("pattern point outside its support");
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(points[a], points[b]); });
    Pattern out;
    out.support = std::move(support);
    out.points.reserve(points.size());
    for (std::size_t i : order) out.points.push_back(points[i]);
    if (!colors.empty()) {
        out.colors.reserve(colors.size());
        for (std::size_t i : order) out.colors.push_back(colors[i]);
    }
    return out;
}

Pattern translated(const Pattern& p, Vec t) {
    Pattern out = p;
    for (Vec& v : out.points) v += t;
    out.support = p.support.translated(t);
    return out;
}

Vec anchor(const Pattern& p, double tol) {
    if (p.points.empty()) return support_anchor(p.support);
    Vec best = p.points.front();
    for (const Vec& v : p.points)
        if (lex_less(v, best, tol)) best = v;
    return best;
}

PatternClass PatternClass::of(const Pattern& p, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("pattern tolerance must be positive");
    PatternClass c;
    c.tol_ = tol;
    const Vec a = anchor(p, tol);
    c.canonical_ = translated(p, -a);

    const Region& s = c.canonical_.support;
    if (s.kind() == RegionKind::ball) {
        const Vec center = s.center();
        for (const Vec& v : c.canonical_.points)
            if (near(v, center, tol)) {
                c.ball_center_ = center;
                break;
            }
    }

    auto& key = c.key_;
    key.push_back(p.dim());
    key.push_back(static_cast<std::int64_t>(c.canonical_.points.size()));
    key.push_back(c.canonical_.colored() ? 1 : 0);
    // Lexicographic order of snapped coordinates makes the key independent of
    // near-ties in the raw order.
    std::vector<std::array<std::int64_t, 3>> snapped;
    snapped.reserve(c.canonical_.points.size());
    for (std::size_t i = 0; i < c.canonical_.points.size(); ++i) {
        const Vec v = c.canonical_.points[i];
        snapped.push_back({std::llround(v.x / tol), std::llround(v.y / tol),
                           c.canonical_.colored() ? c.canonical_.colors[i] : 0});
    }
    std::sort(snapped.begin(), snapped.end());
    for (const auto& s3 : snapped) key.insert(key.end(), s3.begin(), s3.end());
    s.append_key(key, tol);
    c.hash_ = static_cast<std::size_t>(fnv1a(key));
    return c;
}

Vec PatternClass::ball_center() const {
    if (!ball_center_) throw InvalidArgument("not a ball pattern");
    return *ball_center_;
}

double PatternClass::ball_radius() const {
    if (!ball_center_) throw InvalidArgument("not a ball pattern");
    return canonical_.support.radius();
}

std::string PatternClass::digest() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return buf;
}

PatternClass canonicalize(const Pattern& p, double tol) { return PatternClass::of(p, tol); }

Occurrences occurrences(const PatternClass& p1, const Pattern& p2) {
    Occurrences out;
    const Pattern& c = p1.canonical();
    if (c.points.empty()) throw InvalidArgument("occurrence counting needs a pattern with points");
    if (c.dim() != p2.dim()) throw InvalidArgument("dimension mismatch");
    if (p2.points.empty()) return out;
    const double tol = p1.tol();
    const Bounds b = c.support.bounds();
    const double cell = std::max({b.hi.x - b.lo.x, b.hi.y - b.lo.y, 1e-3});
    const PointIndex index(p2.points, cell);
    for (const Vec& t : p2.points) {
        const Region q = c.support.translated(t);
        if (!contains_region(p2.support, q)) continue;
        std::size_t inside = 0;
        index.for_each_in_box(b.lo + t - Vec{tol, tol}, b.hi + t + Vec{tol, tol}, [&](std::size_t i) {
            if (q.contains(p2.points[i])) ++inside;
        });
        if (inside != c.points.size()) continue;
        bool match = true;
        for (std::size_t k = 0; k < c.points.size() && match; ++k) {
            const std::size_t j = index.find(c.points[k] + t, tol);
            if (j == p2.points.size() || !q.contains(p2.points[j])) match = false;
            else if (c.colored() != p2.colored()) match = false;
            else if (c.colored() && c.colors[k] != p2.colors[j]) match = false;
        }
        if (match) out.translations.push_back(t);
    }
    out.count = out.translations.size();
    return out;
}

}  // namespace delone
