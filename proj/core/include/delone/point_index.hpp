#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "delone/vec.hpp"

namespace delone {

// Uniform bucket grid over a fixed point set. Queries return indices in
// ascending order so callers get deterministic output.
class PointIndex {
  public:
    PointIndex() = default;
    PointIndex(const std::vector<Vec>& points, double cell);

    std::size_t size() const { return points_.size(); }

    // Indices with lo - tol <= p <= hi + tol componentwise.
    std::vector<std::size_t> in_box(Vec lo, Vec hi, double tol = 0.0) const;
    // Indices with |p - c| <= r.
    std::vector<std::size_t> in_ball(Vec c, double r) const;
    bool any_in_ball(Vec c, double r) const;
    // Index of a point within tol of p (componentwise), or size() if none.
    std::size_t find(Vec p, double tol) const;

    template <class F>
    void for_each_in_box(Vec lo, Vec hi, F&& f) const {
        if (points_.empty()) return;
        const std::int64_t ix0 = cell_x(lo.x), ix1 = cell_x(hi.x);
        const std::int64_t iy0 = cell_y(lo.y), iy1 = cell_y(hi.y);
        for (std::int64_t iy = iy0; iy <= iy1; ++iy)
            for (std::int64_t ix = ix0; ix <= ix1; ++ix) {
                const std::size_t c = static_cast<std::size_t>(iy * nx_ + ix);
                for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k) {
                    const std::size_t i = order_[k];
                    const Vec p = points_[i];
                    if (p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y) f(i);
                }
            }
    }

  private:
    std::int64_t cell_x(double x) const;
    std::int64_t cell_y(double y) const;

    std::vector<Vec> points_;
    Vec origin_;
    double cell_ = 1.0;
    std::int64_t nx_ = 0;
    std::int64_t ny_ = 0;
    std::vector<std::uint32_t> start_;
    std::vector<std::uint32_t> order_;
};

}  // namespace delone
