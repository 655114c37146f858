#include "delone/point_index.hpp"

#include <algorithm>
#include <cmath>

#include "delone/error.hpp"

namespace delone {

PointIndex::PointIndex(const std::vector<Vec>& points, double cell) : points_(points) {
    if (!(cell > 0.0)) throw InvalidArgument("index cell size must be positive");
    if (points_.empty()) return;
    Vec lo = points_[0], hi = points_[0];
    for (const Vec& p : points_) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    // Keep the grid at most a few cells per point.
    const double span = std::max(hi.x - lo.x, hi.y - lo.y);
    const double n = static_cast<double>(points_.size());
    cell_ = std::max(cell, span / (4.0 * n + 1.0));
    origin_ = lo;
    nx_ = static_cast<std::int64_t>(std::floor((hi.x - lo.x) / cell_)) + 1;
    ny_ = static_cast<std::int64_t>(std::floor((hi.y - lo.y) / cell_)) + 1;
    std::vector<std::uint32_t> count(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
    std::vector<std::size_t> cell_of(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        cell_of[i] = static_cast<std::size_t>(cell_y(points_[i].y) * nx_ + cell_x(points_[i].x));
        ++count[cell_of[i] + 1];
    }
    for (std::size_t c = 1; c < count.size(); ++c) count[c] += count[c - 1];
    start_ = count;
    order_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) order_[count[cell_of[i]]++] = static_cast<std::uint32_t>(i);
}

std::int64_t PointIndex::cell_x(double x) const {
    const auto i = static_cast<std::int64_t>(std::floor((x - origin_.x) / cell_));
    return std::clamp<std::int64_t>(i, 0, nx_ - 1);
}

std::int64_t PointIndex::cell_y(double y) const {
    const auto i = static_cast<std::int64_t>(std::floor((y - origin_.y) / cell_));
    return std::clamp<std::int64_t>(i, 0, ny_ - 1);
}

std::vector<std::size_t> PointIndex::in_box(Vec lo, Vec hi, double tol) const {
    std::vector<std::size_t> out;
    for_each_in_box(lo - Vec{tol, tol}, hi + Vec{tol, tol}, [&](std::size_t i) { out.push_back(i); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> PointIndex::in_ball(Vec c, double r) const {
    std::vector<std::size_t> out;
    for_each_in_box(c - Vec{r, r}, c + Vec{r, r}, [&](std::size_t i) {
        if (distance(points_[i], c) <= r) out.push_back(i);
    });
    std::sort(out.begin(), out.end());
    return out;
}

bool PointIndex::any_in_ball(Vec c, double r) const {
    bool found = false;
    for_each_in_box(c - Vec{r, r}, c + Vec{r, r}, [&](std::size_t i) {
        if (!found && distance(points_[i], c) <= r) found = true;
    });
    return found;
}

std::size_t PointIndex::find(Vec p, double tol) const {
    std::size_t best = points_.size();
    for_each_in_box(p - Vec{tol, tol}, p + Vec{tol, tol}, [&](std::size_t i) { best = std::min(best, i); });
    return best;
}

}  // namespace delone
