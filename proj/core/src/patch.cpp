#include "delone/patch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "delone/error.hpp"

namespace delone {

DelonePatch::DelonePatch(int dim, std::vector<Vec> points, Region window, double r, double R,
                         std::vector<int> colors, std::optional<Periodicity> periodicity)
    : dim_(dim), window_(std::move(window)), r_(r), R_(R), periodicity_(std::move(periodicity)) {
    if (dim != 1 && dim != 2) throw InvalidArgument("dimension must be 1 or 2");
    if (window_.dim() != dim) throw InvalidArgument("window dimension mismatch");
    if (!(r >= 0.0) || !(R >= r)) throw InvalidArgument("radii must satisfy 0 <= r <= R");
    if (!colors.empty() && colors.size() != points.size()) throw InvalidArgument("colors must match points");
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lex_less(points[a], points[b]); });
    points_.reserve(points.size());
    for (std::size_t i : order) {
        Vec p = points[i];
        if (dim == 1) p.y = 0.0;
        if (!window_.contains(p)) throw InvalidArgument("patch point outside its window");
        points_.push_back(p);
    }
    if (!colors.empty()) {
        colors_.reserve(colors.size());
        for (std::size_t i : order) colors_.push_back(colors[i]);
    }
    index_ = std::make_shared<PointIndex>(points_, std::max(R_, 1e-3));
}

std::vector<std::size_t> DelonePatch::indices_in(const Region& q) const {
    std::vector<std::size_t> out;
    if (q.is_empty()) return out;
    const Bounds b = q.bounds();
    index_->for_each_in_box(b.lo - Vec{kBoundaryTol, kBoundaryTol}, b.hi + Vec{kBoundaryTol, kBoundaryTol},
                            [&](std::size_t i) {
                                if (q.contains(points_[i])) out.push_back(i);
                            });
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t DelonePatch::find(Vec p, double tol) const { return index_->find(p, tol); }

Pattern restrict(const DelonePatch& w, const Region& q) {
    if (q.dim() != w.dim()) throw InvalidArgument("dimension mismatch");
    if (!contains_region(w.window(), q)) throw WindowExceeded("region not inside the patch window");
    Pattern p;
    p.support = q;
    for (std::size_t i : w.indices_in(q)) {
        p.points.push_back(w.points()[i]);
        if (w.colored()) p.colors.push_back(w.colors()[i]);
    }
    return p;
}

Pattern ball_pattern(const DelonePatch& w, Vec x, double s) {
    return restrict(w, Region::ball(w.dim(), x, s));
}

std::vector<DeloneViolation> verify_delone(const DelonePatch& w) {
    std::vector<DeloneViolation> out;
    const auto& pts = w.points();
    const double sep = 2.0 * w.r();
    const double sep_tol = 1e-9 * std::max(1.0, sep);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j : w.index().in_ball(pts[i], sep)) {
            if (j <= i) continue;
            const double d = distance(pts[i], pts[j]);
            if (d < sep - sep_tol) out.push_back({DeloneViolation::Kind::separation, pts[i], pts[j], d});
        }
    }

    const Region probe = erode(w.window(), w.R());
    if (probe.is_empty()) return out;
    const double pitch_max = w.r() > 0.0 ? 0.5 * w.r() : 0.5 * std::max(w.R(), 1e-3);
    const Bounds b = probe.bounds();
    auto steps = [&](double extent) {
        return std::max<long>(1, static_cast<long>(std::ceil(extent / pitch_max)));
    };
    const long nx = steps(b.hi.x - b.lo.x);
    const long ny = w.dim() == 1 ? 0 : steps(b.hi.y - b.lo.y);
    const double cover_tol = 1e-9 * std::max(1.0, w.R());
    for (long iy = 0; iy <= ny; ++iy) {
        for (long ix = 0; ix <= nx; ++ix) {
            Vec p{b.lo.x + (b.hi.x - b.lo.x) * static_cast<double>(ix) / static_cast<double>(nx),
                  w.dim() == 1 ? 0.0 : b.lo.y + (b.hi.y - b.lo.y) * static_cast<double>(iy) / static_cast<double>(ny)};
            if (!probe.contains(p)) continue;
            if (w.index().any_in_ball(p, w.R() + cover_tol)) continue;
            double best = std::numeric_limits<double>::infinity();
            Vec nearest = p;
            for (std::size_t k : w.index().in_ball(p, 4.0 * w.R() + 1.0)) {
                const double d = distance(pts[k], p);
                if (d < best) {
                    best = d;
                    nearest = pts[k];
                }
            }
            out.push_back({DeloneViolation::Kind::covering, p, nearest, best});
        }
    }
    return out;
}

}  // namespace delone
